#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qtorus/relations.hpp"

namespace qtorus {

// CLI / file configuration for one run. Validation happens in resolve():
// invalid configurations never reach the builders.
struct RunConfig {
    std::string family = "yangian";
    std::string type;                                   // A..G, empty when matrix given
    int rank = 0;
    std::vector<std::vector<int>> matrix;               // explicit Cartan matrix
    std::vector<int> m;
    std::string nu = "symbolic";                        // "symbolic" or JSON list in files
    std::vector<std::vector<Rational>> nu_values;       // explicit nu (optional)
    std::vector<int> lplus, lminus;                     // Borel
    std::string lattice = "adjoint";                    // adjoint | simply-connected
    std::vector<std::vector<int>> lattice_n;            // explicit lattice matrix
    std::vector<std::vector<int>> rsplit;               // R^(+) indices per node (1-based)
    std::string mode = "symbolic";                      // symbolic | modes | random
    int truncation = 8;
    std::uint64_t seed = 1;
    int trials = 20;
    std::string out;
    int verbose = 0;
    bool timings = false;
    std::string mutation = "none";                      // mutation harness hook

    std::string to_json_string() const;
    static RunConfig from_json_string(const std::string& text);
};

struct ResolvedConfig {
    CartanData cartan;
    RepConfig rep;
    VerifyOptions options;
    MutationKind mutation = MutationKind::None;
};

// Throws ConfigError with a user-facing message on any invalid field.
ResolvedConfig resolve_config(const RunConfig& rc);

// Deterministic report document (JSON text). Timings included only when
// rc.timings is set, keeping default output byte-stable per config+seed.
std::string report_document(const RunConfig& rc, const VerificationReport& rep);

}  // namespace qtorus
