#pragma once

#include <map>
#include <string>
#include <vector>

#include "qtorus/skew.hpp"

namespace qtorus {

// A skew element whose coefficients may involve the central spectral
// symbols; generating series in closed rational form live here.
using SpectralElement = SkewElement;

// Invertible monomial c * prod sym^e. Supports of delta functions; after a
// same-support merge a support may be the plain monomial of another
// spectral symbol.
struct Support {
    Rational unit;
    Monomial mono;

    bool operator==(const Support& o) const { return unit == o.unit && mono == o.mono; }
    bool operator<(const Support& o) const {
        if (mono != o.mono) return mono < o.mono;
        return unit < o.unit;
    }
    RatFunc as_ratfunc(const SymbolTable* tab) const;
    std::string str(const SymbolTable* tab) const;
};

Support support_of_ratfunc(const RatFunc& f);     // must be an invertible monomial
Support support_of_symbol(const Context* ctx, SymbolId id);

// delta(var / support) with a coefficient free of `var`.
using DeltaKey = std::map<SymbolId, Support>;

// Finite sum of multi-variable delta-supported terms plus a delta-free
// rational part. Terms are grouped by canonical support keys; the merge
// delta(z/p)*delta(w/p) = delta(z/w)*delta(w/p) is applied on every build.
class DeltaSeries {
  public:
    DeltaSeries() = default;
    explicit DeltaSeries(const Context* ctx) : ctx_(ctx), regular_(ctx) {}

    static DeltaSeries zero(const Context* ctx) { return DeltaSeries(ctx); }
    static DeltaSeries from_regular(const SpectralElement& e);
    static DeltaSeries delta_term(const Context* ctx, SymbolId var, const Support& sup,
                                  const SkewElement& coeff);

    const Context* ctx() const { return ctx_; }
    const std::map<DeltaKey, SkewElement>& terms() const { return terms_; }
    const SpectralElement& regular() const { return regular_; }
    bool is_zero() const { return terms_.empty() && regular_.is_zero(); }
    bool delta_free() const { return terms_.empty(); }

    void add_term(const DeltaKey& key, const SkewElement& coeff);
    void add_regular(const SpectralElement& e) { regular_ += e; }

    DeltaSeries operator+(const DeltaSeries& o) const;
    DeltaSeries operator-(const DeltaSeries& o) const;
    DeltaSeries operator-() const;
    DeltaSeries& operator+=(const DeltaSeries& o);

    DeltaSeries scaled(const RatFunc& c) const;

    bool equals(const DeltaSeries& o) const { return (*this - o).is_zero(); }

    std::string str() const;

  private:
    const Context* ctx_ = nullptr;
    std::map<DeltaKey, SkewElement> terms_;
    SpectralElement regular_;

    void canonicalize_key_and_add(DeltaKey key, const SkewElement& coeff);
    friend DeltaSeries delta_mul(const DeltaSeries&, const DeltaSeries&);
    friend DeltaSeries delta_apply_function(const RatFunc&, const DeltaSeries&);
};

// delta(z/p) f(z) = delta(z/p) f(p): substitutes every supported variable of
// each term into f and multiplies from the left; the regular part is
// multiplied by f unchanged. PoleOnSupport when a denominator of f vanishes
// identically on a support.
DeltaSeries delta_apply_function(const RatFunc& f, const DeltaSeries& x);

// Normal-ordered product. Shift monomials of x push through the supports
// and coefficients of y via sigma; same-support pairs merge to
// delta(z/w)-chains. Supported variable sets must be disjoint.
DeltaSeries delta_mul(const DeltaSeries& x, const DeltaSeries& y);

struct PartialFractions {
    // (support p_j, residue Res_{z=p_j} f); the support is the exact pole.
    std::vector<std::pair<Support, RatFunc>> poles;
    // polynomial part, coefficient of var^k at index k
    std::vector<RatFunc> poly_part;
};

// Decomposition of f over simple linear poles in `var`; NonSimplePole /
// NonLinearFactor on repeated or nonlinear z-factors.
PartialFractions partial_fractions(const RatFunc& f, SymbolId var);

// K^+(z) - K^-(z) as residue-weighted delta functions:
//     sum_j Res_{z=p_j}(K) p_j^{-1} delta(z/p_j).
DeltaSeries expansion_difference(const RatFunc& k, SymbolId var, const Context* ctx);

// Coefficients of var^t for t in [lo, hi] of the expansion of f in
// var^{-1} (plus = true) or in var (plus = false).
std::map<int, RatFunc> rat_modes(const RatFunc& f, SymbolId var, int lo, int hi, bool plus);

// Truncated mode coefficients of a DeltaSeries over the given variables:
// map from the exponent tuple (|m_i| <= n) to the skew coefficient.
// Delta supports expand two-sidedly; coefficients rational in an
// unsupported variable expand in the `plus` direction.
std::map<std::vector<int>, SkewElement> truncated_modes(const DeltaSeries& x,
                                                        const std::vector<SymbolId>& vars, int n,
                                                        bool plus = true);

}  // namespace qtorus
