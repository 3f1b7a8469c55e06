#pragma once

#include <functional>
#include <map>
#include <string>

#include "qtorus/context.hpp"

namespace qtorus {

// Normal-ordered element of the skew algebra: finite sum of
// coefficient * shift-monomial with the coefficient on the left.
// Products push coefficients through shifts via the context's sigma:
//     (f S^m)(g S^n) = f sigma^m(g) S^{m+n}.
class SkewElement {
  public:
    using TermMap = std::map<ShiftMono, RatFunc>;

    SkewElement() = default;
    explicit SkewElement(const Context* ctx) : ctx_(ctx) {}

    static SkewElement zero(const Context* ctx) { return SkewElement(ctx); }
    static SkewElement one(const Context* ctx);
    static SkewElement coeff(const Context* ctx, const RatFunc& c);
    static SkewElement shift(const Context* ctx, int slot, int exp);
    static SkewElement term(const Context* ctx, const ShiftMono& m, const RatFunc& c);

    const Context* ctx() const { return ctx_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int term_count() const { return static_cast<int>(terms_.size()); }

    void add_term(const ShiftMono& m, const RatFunc& c);

    SkewElement operator+(const SkewElement& o) const;
    SkewElement operator-(const SkewElement& o) const;
    SkewElement operator-() const;
    SkewElement operator*(const SkewElement& o) const;
    SkewElement& operator+=(const SkewElement& o);
    SkewElement& operator-=(const SkewElement& o);

    SkewElement scaled(const RatFunc& c) const;       // left multiplication by a coefficient
    SkewElement scaled_rat(const Rational& c) const;
    SkewElement pow(int e) const;                     // e >= 0

    bool equals(const SkewElement& o) const;
    bool operator==(const SkewElement& o) const { return equals(o); }

    // Coefficientwise substitution of a central symbol. Throws
    // SubstitutionIntoShiftedSymbol when sigma moves the symbol and the
    // element has a nonzero shift part.
    SkewElement substitute_central(SymbolId var, const RatFunc& value) const;

    std::string str() const;

    // Reference serial kernel and the OpenMP kernel; operator* dispatches.
    static SkewElement mul_serial(const SkewElement& a, const SkewElement& b);
    static SkewElement mul_parallel(const SkewElement& a, const SkewElement& b);

  private:
    const Context* ctx_ = nullptr;
    TermMap terms_;

    static void check_same(const SkewElement& a, const SkewElement& b);
};

SkewElement commutator(const SkewElement& x, const SkewElement& y);
SkewElement anticommutator(const SkewElement& x, const SkewElement& y);

}  // namespace qtorus
