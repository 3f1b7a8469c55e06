#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qtorus/generators.hpp"

namespace qtorus {

enum class Schema {
    // Yangian: defining relations plus the series normalization H -> 1
    Y_HNORM, Y_HH, Y_HE, Y_HF, Y_EF, Y_EE_SAME, Y_FF_SAME, Y_EE_CROSS, Y_FF_CROSS,
    Y_SERRE_E, Y_SERRE_F,
    // quantum affine at level zero
    A_KK, A_K0, A_KE, A_KF, A_EF, A_EE, A_FF, A_SERRE_E, A_SERRE_F,
    // finite quantum group / rational form
    U_KINV, U_KKBETA, U_KE, U_KF, U_KBETA_E, U_KBETA_F, U_EF, U_SERRE_E, U_SERRE_F,
    U_KRECON,
};

std::string schema_name(Schema s);

struct RelationInstance {
    Schema schema;
    int i = 0;  // 0-based node indices
    int j = 0;
    int serre_m = 0;  // 1 - a_ij where applicable
};

std::vector<RelationInstance> instances_for(const GeneratorSet& g);

enum class VerifyMode { Symbolic, Modes, Randomized };

std::string verify_mode_name(VerifyMode m);

struct VerifyOptions {
    VerifyMode mode = VerifyMode::Symbolic;
    int truncation = 8;
    std::uint64_t seed = 1;
    int trials = 20;
    int threads = 0;  // 0: honor OpenMP / QTORUS_THREADS
    bool record_residuals = true;
    int max_residual_chars = 480;
};

struct InstanceOutcome {
    bool pass = false;
    bool skipped = false;
    std::string residual;  // nonzero normal form (truncated) on failure
    std::string note;
    double wall_ms = 0.0;
};

struct VerificationReport {
    Family family = Family::Yangian;
    std::string mode;
    MutationKind mutation = MutationKind::None;
    std::vector<RelationInstance> instances;
    std::vector<InstanceOutcome> outcomes;
    bool all_pass = false;
    double total_ms = 0.0;

    int passed() const;
    int failed() const;
};

// Runs every relation instance of the family against the generator set.
// Instances are independent jobs executed on an OpenMP pool; the report
// order is the instance order regardless of scheduling.
VerificationReport verify(const GeneratorSet& g, const VerifyOptions& opt);

// Gaussian binomial [m k]_{q_i}: exact Laurent polynomial in q_i.
RatFunc q_binomial(const Context* ctx, int m, int k, int node);

// Symmetrized nested-commutator sum of the Serre relation; serial reference
// and OpenMP kernel over the permutation fan-out.
SkewElement yangian_serre_sum_serial(const GeneratorSet& g, int i, int j, bool use_e);
SkewElement yangian_serre_sum_parallel(const GeneratorSet& g, int i, int j, bool use_e);

// Resample all symbolic parameters to random rationals (same Cartan data,
// multiplicities, split and lattice); used by randomized verification.
GeneratorSet resample_generators(const GeneratorSet& g, std::uint64_t seed);

// Effective thread cap: opt.threads, else QTORUS_THREADS, else OpenMP default.
int effective_threads(int requested);

}  // namespace qtorus
