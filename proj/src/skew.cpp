#include "qtorus/skew.hpp"

#include <sstream>
#include <vector>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace qtorus {

SkewElement SkewElement::one(const Context* ctx) { return coeff(ctx, RatFunc::one(ctx->table())); }

SkewElement SkewElement::coeff(const Context* ctx, const RatFunc& c) {
    SkewElement e(ctx);
    if (!c.is_zero()) e.terms_.emplace(ctx->unit_shift(), c);
    return e;
}

SkewElement SkewElement::shift(const Context* ctx, int slot, int exp) {
    SkewElement e(ctx);
    ShiftMono m = ctx->unit_shift();
    m[static_cast<size_t>(slot)] = exp;
    e.terms_.emplace(std::move(m), RatFunc::one(ctx->table()));
    return e;
}

SkewElement SkewElement::term(const Context* ctx, const ShiftMono& m, const RatFunc& c) {
    SkewElement e(ctx);
    e.add_term(m, c);
    return e;
}

void SkewElement::add_term(const ShiftMono& m, const RatFunc& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second = it->second + c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void SkewElement::check_same(const SkewElement& a, const SkewElement& b) {
    if (a.ctx_ != nullptr && b.ctx_ != nullptr && a.ctx_ != b.ctx_)
        throw MixedInstance("skew elements from different instances");
}

SkewElement SkewElement::operator+(const SkewElement& o) const {
    check_same(*this, o);
    SkewElement r = *this;
    if (r.ctx_ == nullptr) r.ctx_ = o.ctx_;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

SkewElement& SkewElement::operator+=(const SkewElement& o) {
    check_same(*this, o);
    if (ctx_ == nullptr) ctx_ = o.ctx_;
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

SkewElement SkewElement::operator-(const SkewElement& o) const { return *this + (-o); }

SkewElement& SkewElement::operator-=(const SkewElement& o) { return *this += (-o); }

SkewElement SkewElement::operator-() const {
    SkewElement r(ctx_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

SkewElement SkewElement::mul_serial(const SkewElement& a, const SkewElement& b) {
    check_same(a, b);
    SkewElement r(a.ctx_ ? a.ctx_ : b.ctx_);
    if (r.ctx_ == nullptr) return r;
    for (const auto& [m1, c1] : a.terms_) {
        for (const auto& [m2, c2] : b.terms_) {
            ShiftMono m(m1.size());
            for (size_t i = 0; i < m.size(); ++i) m[i] = m1[i] + m2[i];
            r.add_term(m, c1 * r.ctx_->sigma(m1, c2));
        }
    }
    return r;
}

SkewElement SkewElement::mul_parallel(const SkewElement& a, const SkewElement& b) {
#if defined(_OPENMP)
    check_same(a, b);
    const Context* ctx = a.ctx_ ? a.ctx_ : b.ctx_;
    SkewElement r(ctx);
    if (ctx == nullptr || a.terms_.empty() || b.terms_.empty()) return r;
    std::vector<const std::pair<const ShiftMono, RatFunc>*> left;
    left.reserve(a.terms_.size());
    for (const auto& t : a.terms_) left.push_back(&t);
    int n = static_cast<int>(left.size());
    int threads = omp_get_max_threads();
    std::vector<SkewElement> partial(static_cast<size_t>(threads), SkewElement(ctx));
#pragma omp parallel for schedule(dynamic, 1)
    for (int idx = 0; idx < n; ++idx) {
        SkewElement& out = partial[static_cast<size_t>(omp_get_thread_num())];
        const auto& [m1, c1] = *left[static_cast<size_t>(idx)];
        for (const auto& [m2, c2] : b.terms_) {
            ShiftMono m(m1.size());
            for (size_t i = 0; i < m.size(); ++i) m[i] = m1[i] + m2[i];
            out.add_term(m, c1 * ctx->sigma(m1, c2));
        }
    }
    for (auto& p : partial) r += p;
    return r;
#else
    return mul_serial(a, b);
#endif
}

SkewElement SkewElement::operator*(const SkewElement& o) const {
    // Parallel kernel pays off only on bulky products.
    size_t work = terms_.size() * o.terms_.size();
    if (work >= 64) return mul_parallel(*this, o);
    return mul_serial(*this, o);
}

SkewElement SkewElement::scaled(const RatFunc& c) const {
    SkewElement r(ctx_);
    if (c.is_zero()) return r;
    for (const auto& [m, k] : terms_) r.add_term(m, c * k);
    return r;
}

SkewElement SkewElement::scaled_rat(const Rational& c) const {
    SkewElement r(ctx_);
    if (c == 0) return r;
    for (const auto& [m, k] : terms_) r.terms_.emplace(m, k.scaled(c));
    return r;
}

SkewElement SkewElement::pow(int e) const {
    if (e < 0) throw Error("SkewElement::pow negative exponent");
    SkewElement acc = one(ctx_);
    SkewElement base = *this;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = e > 1 ? base * base : base;
        e >>= 1;
    }
    return acc;
}

bool SkewElement::equals(const SkewElement& o) const {
    check_same(*this, o);
    if (terms_.size() != o.terms_.size()) return (*this - o).is_zero();
    auto it = terms_.begin();
    auto jt = o.terms_.begin();
    for (; it != terms_.end(); ++it, ++jt) {
        if (it->first != jt->first) return (*this - o).is_zero();
        if (!it->second.equals(jt->second)) return false;
    }
    return true;
}

SkewElement SkewElement::substitute_central(SymbolId var, const RatFunc& value) const {
    if (ctx_->sigma_moves(var)) {
        for (const auto& [m, c] : terms_) {
            for (auto e : m)
                if (e != 0)
                    throw SubstitutionIntoShiftedSymbol(ctx_->table()->name(var) +
                                                        " is moved by the shift action");
        }
    }
    SkewElement r(ctx_);
    for (const auto& [m, c] : terms_) {
        if (!c.depends_on(var)) {
            r.add_term(m, c);
            continue;
        }
        if (value.is_monomial()) {
            r.add_term(m, c.subst_monomial(var, value.unit(), value.mono()));
        } else if (value.den_factors().empty()) {
            r.add_term(m, c.subst_poly(var, value.numerator_expanded()));
        } else {
            // general rational value: substitute into expanded num/den
            Poly n = c.numerator_expanded();
            Poly d = c.denominator_expanded();
            RatFunc vn = RatFunc::from_poly(value.numerator_expanded());
            RatFunc vd = RatFunc::from_poly(value.denominator_expanded());
            auto sub = [&](const Poly& p) {
                RatFunc acc = RatFunc::zero(ctx_->table());
                for (const auto& [mm, cc] : p.coeffs_in(var)) {
                    if (mm < 0) throw Error("substitute_central: negative exponent");
                    acc += RatFunc::from_poly(cc) * vn.pow(mm) * vd.pow(-mm);
                }
                return acc;
            };
            RatFunc rn = sub(n), rd = sub(d);
            if (rd.is_zero()) throw DegenerateDenominator("substitution collapses denominator");
            r.add_term(m, rn / rd);
        }
    }
    return r;
}

std::string SkewElement::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "[" << c.str() << "]";
        for (size_t s = 0; s < m.size(); ++s) {
            if (m[s] == 0) continue;
            os << "*" << ctx_->shift_name(static_cast<int>(s));
            if (m[s] != 1) os << "^" << m[s];
        }
    }
    return os.str();
}

SkewElement commutator(const SkewElement& x, const SkewElement& y) { return x * y - y * x; }

SkewElement anticommutator(const SkewElement& x, const SkewElement& y) { return x * y + y * x; }

}  // namespace qtorus
