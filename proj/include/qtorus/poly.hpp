#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qtorus/rational.hpp"
#include "qtorus/symbols.hpp"

namespace qtorus {

// Exponent vector indexed by SymbolId. Negative exponents are legal
// (Laurent monomials); the sqrt symbols are kept reduced to {0,1} by the
// rewrite s_d^2 -> d.
using Monomial = std::vector<std::int32_t>;

Monomial mono_mul(const Monomial& a, const Monomial& b);
Monomial mono_div(const Monomial& a, const Monomial& b);
Monomial mono_neg(const Monomial& a);
bool mono_divides(const Monomial& d, const Monomial& m);  // componentwise d <= m
Monomial mono_min(const Monomial& a, const Monomial& b);
bool mono_is_one(const Monomial& m);

// Sparse multivariate Laurent polynomial with exact rational coefficients.
// Terms are kept in lexicographic monomial order; zero coefficients are
// never stored; sqrt-symbol exponents are reduced on every mutation.
class Poly {
  public:
    using TermMap = std::map<Monomial, Rational>;

    Poly() = default;
    explicit Poly(const SymbolTable* tab) : tab_(tab) {}

    static Poly zero(const SymbolTable* tab) { return Poly(tab); }
    static Poly constant(const SymbolTable* tab, const Rational& c);
    static Poly symbol(const SymbolTable* tab, SymbolId id, int exp = 1);
    static Poly monomial(const SymbolTable* tab, const Monomial& m, const Rational& c);

    const SymbolTable* table() const { return tab_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    bool is_monomial() const { return terms_.size() == 1; }
    int term_count() const { return static_cast<int>(terms_.size()); }

    // Constant term access; requires is_constant().
    Rational as_constant() const;

    void add_term(const Monomial& m, const Rational& c);

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);

    Poly scaled(const Rational& c) const;
    Poly mul_monomial(const Monomial& m, const Rational& c) const;
    Poly pow(int e) const;  // e >= 0

    bool operator==(const Poly& o) const { return terms_ == o.terms_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    // Strict total order for canonical factor sorting.
    static int compare(const Poly& a, const Poly& b);

    // Leading term w.r.t. the lexicographic order (largest monomial).
    const Monomial& lead_monomial() const;
    const Rational& lead_coeff() const;

    // gcd of all coefficients, sign-adjusted so the leading coefficient
    // divided by the content is positive. Zero polynomial has content 0.
    Rational content() const;

    // Componentwise-minimum exponent vector over all terms.
    Monomial monomial_gcd() const;

    int degree_in(SymbolId id) const;
    int min_exp_in(SymbolId id) const;
    bool depends_on(SymbolId id) const;

    // Univariate view: coefficients of id^e as polynomials free of id.
    std::map<int, Poly> coeffs_in(SymbolId id) const;

    // Substitute symbol by a polynomial value; the symbol must occur with
    // non-negative exponents only.
    Poly subst(SymbolId id, const Poly& value) const;

    // Substitute symbol by an invertible monomial c*m (any-sign exponents).
    Poly subst_monomial(SymbolId id, const Rational& c, const Monomial& m) const;

    // Rescale every occurrence of `id`: id -> c * mono * id. Used for the
    // multiplicative shift action (mono carries the lambda power).
    Poly scale_symbol(SymbolId id, const Rational& c, const Monomial& mono) const;

    // Exact evaluation; `vals` must assign every non-sqrt symbol that
    // occurs. sqrt symbols evaluate to sqrt(2), sqrt(3).
    Q236 eval(const std::vector<Rational>& vals) const;

    std::complex<double> eval_complex(const std::vector<std::complex<double>>& vals) const;

    // Exact division; returns nullopt when the division is not exact.
    // The divisor must be free of sqrt symbols.
    std::optional<Poly> divide_exact(const Poly& divisor) const;

    std::string str() const;

  private:
    const SymbolTable* tab_ = nullptr;
    TermMap terms_;

    void reduce_sqrt(Monomial& m, Rational& c) const;
    friend class RatFunc;
};

}  // namespace qtorus
