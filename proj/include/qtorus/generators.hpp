#pragma once

#include "qtorus/series.hpp"

namespace qtorus {

// Deliberate generator corruptions for the mutation harness.
enum class MutationKind { None, ScaleE, DropRFactor, WrongShift, SignF };

std::string mutation_name(MutationKind m);

// The explicit generator family for one configuration. Elements are built
// on demand from the context data; builders validate the configuration.
class GeneratorSet {
  public:
    const Context* ctx() const { return ctx_.get(); }
    ContextPtr ctx_ptr() const { return ctx_; }
    Family family() const { return family_; }
    MutationKind mutation() const { return mutation_; }
    void set_mutation(MutationKind m) { mutation_ = m; }
    bool zero_mode_origin() const { return zero_mode_origin_; }

    // --- Yangian -----------------------------------------------------------
    SpectralElement yang_H(int i, SymbolId var) const;
    SpectralElement yang_E(int i, SymbolId var) const;
    SpectralElement yang_F(int i, SymbolId var) const;
    // coefficient of var^{-n-1} of a rational series (H_i(u)-1, E_i, F_i)
    SkewElement yang_mode(const SpectralElement& e, SymbolId var, int n) const;
    SkewElement yang_E0(int i) const;
    SkewElement yang_F0(int i) const;
    RatFunc yang_R(int i, const Poly& arg) const;

    // --- quantum affine ------------------------------------------------------
    RatFunc aff_K(int i, SymbolId var) const;
    RatFunc aff_K_closed(int i) const;  // closed-form constant monomial K_i
    DeltaSeries aff_E(int i, SymbolId var) const;
    DeltaSeries aff_F(int i, SymbolId var) const;
    // coefficient of var^{zpow}; paper modes are E^{(n)} = mode at -n
    SkewElement aff_E_mode(int i, int zpow) const;
    SkewElement aff_F_mode(int i, int zpow) const;
    std::map<int, RatFunc> aff_K_modes(int i, int lo, int hi, bool plus) const;

    // --- finite quantum group / rational form --------------------------------
    SkewElement uqg_Kbeta(int i, int sign) const;
    SkewElement uqg_K(int i, int sign) const;        // closed form
    SkewElement uqg_K_recon(int i) const;            // prod_j Kbeta_j^{m_ji}
    SkewElement uqg_E(int i) const;
    SkewElement uqg_F(int i) const;
    // lattice exponent n_{ji} for the K_beta conjugation expectations
    int lattice_nji(int j, int i) const;
    int lattice_mji(int j, int i) const;

    RatFunc c_const(int i) const;  // c_i (affine) / c_{beta_i} (uqg)

    friend GeneratorSet build_yangian(ContextPtr ctx);
    friend GeneratorSet build_qaffine(ContextPtr ctx);
    friend GeneratorSet build_uqg(ContextPtr ctx);
    friend GeneratorSet uqg_from_zero_modes(const GeneratorSet& affine);

  private:
    ContextPtr ctx_;
    Family family_ = Family::Yangian;
    MutationKind mutation_ = MutationKind::None;

    // torus data: w-power convention (1 for the affine family and
    // zero-mode sets, det a for rational forms) and the lattice matrices
    bool zero_mode_origin_ = false;
    long wconv_ = 1;
    std::vector<std::vector<int>> nmat_, mmat_;

    RatFunc torus_R(int i, bool plus, const RatFunc& arg) const;
    RatFunc torus_E_prefactor(int i) const;
    RatFunc torus_F_prefactor(int i) const;
    RatFunc torus_E_coeff(int i, int k) const;  // per-k coefficient, no prefactor
    RatFunc torus_F_coeff(int i, int k) const;
    Support e_support(int i, int k) const;  // v_{i,k}^2
    Support f_support(int i, int k) const;  // q_i^2 v_{i,k}^2
};

GeneratorSet build_yangian(ContextPtr ctx);
GeneratorSet build_qaffine(ContextPtr ctx);
GeneratorSet build_uqg(ContextPtr ctx);

// Finite quantum group set carved out of a passing affine set: K_i from the
// closed-form constant term, E_i/F_i as zero modes, adjoint-lattice
// conventions.
GeneratorSet uqg_from_zero_modes(const GeneratorSet& affine);

}  // namespace qtorus
