#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "qtorus/poly.hpp"

namespace qtorus {

// Normalized polynomial power: `p` is primitive (integer coefficients with
// gcd 1, positive lead), carries no monomial content, and is non-constant.
struct Factor {
    Poly p;
    int exp = 1;
};

// Exact rational function in the commutative coefficient field, stored as
//     unit * mono * prod(num[i].p^exp) / prod(den[j].p^exp)
// with factor lists sorted and equal factors cancelled across the bar.
// Keeping denominators (and product-built numerators) in factored form
// makes cancellation a cheap exact-division test instead of a multivariate
// gcd, and products of generator formulas never expand.
class RatFunc {
  public:
    RatFunc() = default;
    explicit RatFunc(const SymbolTable* tab) : tab_(tab), unit_(0) {}

    static RatFunc zero(const SymbolTable* tab) { return RatFunc(tab); }
    static RatFunc one(const SymbolTable* tab) { return constant(tab, 1); }
    static RatFunc constant(const SymbolTable* tab, const Rational& c);
    static RatFunc symbol(const SymbolTable* tab, SymbolId id, int exp = 1);
    static RatFunc from_poly(const Poly& p);
    // p1/p2 with exact cancellation attempts.
    static RatFunc fraction(const Poly& p1, const Poly& p2);

    const SymbolTable* table() const { return tab_; }
    bool is_zero() const { return unit_ == 0; }
    bool is_one() const;
    bool is_constant() const { return num_.empty() && den_.empty() && mono_is_one(mono_); }
    bool is_monomial() const { return num_.empty() && den_.empty(); }
    const Rational& unit() const { return unit_; }
    const Monomial& mono() const { return mono_; }
    const std::vector<Factor>& num_factors() const { return num_; }
    const std::vector<Factor>& den_factors() const { return den_; }

    RatFunc operator+(const RatFunc& o) const;
    RatFunc operator-(const RatFunc& o) const;
    RatFunc operator*(const RatFunc& o) const;
    RatFunc operator/(const RatFunc& o) const;
    RatFunc operator-() const;
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }

    RatFunc inverse() const;
    RatFunc scaled(const Rational& c) const;
    RatFunc pow(int e) const;  // any sign

    bool equals(const RatFunc& o) const;
    bool operator==(const RatFunc& o) const { return equals(o); }

    // Expanded views of the two sides of the bar.
    Poly numerator_expanded() const;   // unit * mono+ * prod num
    Poly denominator_expanded() const; // mono- * prod den
    // Splits mono_ into its non-negative part (into numerator) and the
    // inverted negative part (into denominator).

    bool depends_on(SymbolId id) const;
    bool denominator_depends_on(SymbolId id) const;

    // Substitute a symbol by an invertible monomial value c*m; denominator
    // factors may collapse (DegenerateDenominator if one vanishes).
    RatFunc subst_monomial(SymbolId id, const Rational& c, const Monomial& m) const;

    // Substitute a symbol by a general polynomial; the symbol must occur
    // with non-negative exponents in every factor and in mono_.
    RatFunc subst_poly(SymbolId id, const Poly& value) const;

    // id -> c * mono * id on every occurrence (multiplicative shift).
    RatFunc scale_symbol(SymbolId id, const Rational& c, const Monomial& mono) const;

    Q236 eval(const std::vector<Rational>& vals) const;  // EvalPole on vanishing denominator
    std::complex<double> eval_complex(const std::vector<std::complex<double>>& vals,
                                      double pole_guard = 1e-12) const;

    std::string str() const;

  private:
    const SymbolTable* tab_ = nullptr;
    Rational unit_ = 0;
    Monomial mono_;  // empty vector == trivial when unit_ == 0
    std::vector<Factor> num_, den_;

    void push_factor(std::vector<Factor>& side, const Poly& raw, int exp, bool inverted);
    void cancel_num_den();
    void sort_factors();
    void normalize_sqrt_mono();
    static void merge_into(std::vector<Factor>& side, const Poly& p, int exp);
    Monomial zero_mono() const { return Monomial(static_cast<size_t>(tab_->size()), 0); }
};

}  // namespace qtorus
