#include "qtorus/ratfunc.hpp"

#include <algorithm>
#include <sstream>

namespace qtorus {

namespace {

// variable support (ids with nonzero exponent) as a bitset-ish vector
std::vector<char> var_support(const Poly& p) {
    std::vector<char> s(static_cast<size_t>(p.table()->size()), 0);
    for (const auto& [m, c] : p.terms())
        for (size_t i = 0; i < m.size(); ++i)
            if (m[i] != 0) s[i] = 1;
    return s;
}

Poly expand_side(const SymbolTable* tab, const std::vector<Factor>& side) {
    Poly r = Poly::constant(tab, 1);
    for (const auto& f : side) r = r * f.p.pow(f.exp);
    return r;
}

}  // namespace

RatFunc RatFunc::constant(const SymbolTable* tab, const Rational& c) {
    RatFunc r(tab);
    r.unit_ = c;
    r.mono_ = r.zero_mono();
    return r;
}

RatFunc RatFunc::symbol(const SymbolTable* tab, SymbolId id, int exp) {
    RatFunc r(tab);
    r.unit_ = 1;
    r.mono_ = r.zero_mono();
    r.mono_[static_cast<size_t>(id)] = exp;
    r.normalize_sqrt_mono();
    return r;
}

RatFunc RatFunc::from_poly(const Poly& p) {
    RatFunc r(p.table());
    if (p.is_zero()) return r;
    r.unit_ = 1;
    r.mono_ = r.zero_mono();
    r.push_factor(r.num_, p, 1, false);
    return r;
}

RatFunc RatFunc::fraction(const Poly& p1, const Poly& p2) {
    if (p2.is_zero()) throw DegenerateDenominator("fraction with zero denominator");
    RatFunc r(p1.table() ? p1.table() : p2.table());
    if (p1.is_zero()) return r;
    r.unit_ = 1;
    r.mono_ = r.zero_mono();
    r.push_factor(r.num_, p1, 1, false);
    r.push_factor(r.den_, p2, 1, true);
    r.cancel_num_den();
    return r;
}

bool RatFunc::is_one() const {
    return unit_ == 1 && num_.empty() && den_.empty() && mono_is_one(mono_);
}

void RatFunc::normalize_sqrt_mono() {
    for (SymbolId id = 0; id < tab_->size(); ++id) {
        if (!tab_->is_sqrt(id)) continue;
        auto& e = mono_[static_cast<size_t>(id)];
        if (e == 0 || e == 1) continue;
        long d = tab_->info(id).sqrt_value;
        long half = (e >= 0) ? e / 2 : (e - 1) / 2;
        unit_ *= rat_pow(Rational(d), half);
        e = static_cast<std::int32_t>(e - 2 * half);
    }
}

void RatFunc::push_factor(std::vector<Factor>& side, const Poly& raw, int exp, bool inverted) {
    if (exp == 0) return;
    if (exp < 0) {
        push_factor(inverted ? num_ : den_, raw, -exp, !inverted);
        return;
    }
    if (raw.is_zero()) {
        if (inverted) throw DegenerateDenominator("zero denominator factor");
        unit_ = 0;
        mono_ = zero_mono();
        num_.clear();
        den_.clear();
        return;
    }
    if (unit_ == 0) return;
    Poly p = raw;
    Monomial mg = p.monomial_gcd();
    if (!mono_is_one(mg)) p = p.mul_monomial(mono_neg(mg), 1);
    Rational c = p.content();
    if (c != 1) p = p.scaled(Rational(1) / c);
    int sgn = inverted ? -1 : 1;
    unit_ *= rat_pow(c, sgn * exp);
    for (size_t i = 0; i < mono_.size(); ++i) mono_[i] += sgn * exp * mg[i];
    normalize_sqrt_mono();
    if (p.is_constant()) return;  // p == 1 after normalization
    merge_into(side, p, exp);
}

void RatFunc::merge_into(std::vector<Factor>& side, const Poly& p, int exp) {
    for (auto& f : side) {
        if (f.p == p) {
            f.exp += exp;
            return;
        }
    }
    side.push_back(Factor{p, exp});
}

void RatFunc::sort_factors() {
    auto less = [](const Factor& a, const Factor& b) { return Poly::compare(a.p, b.p) < 0; };
    std::sort(num_.begin(), num_.end(), less);
    std::sort(den_.begin(), den_.end(), less);
}

void RatFunc::cancel_num_den() {
    if (unit_ == 0) return;
    bool changed = true;
    int guard = 0;
    while (changed && guard++ < 256) {
        changed = false;
        // exact matches
        for (auto& f : num_) {
            if (f.exp == 0) continue;
            for (auto& g : den_) {
                if (g.exp == 0) continue;
                if (f.p == g.p) {
                    int k = std::min(f.exp, g.exp);
                    f.exp -= k;
                    g.exp -= k;
                    changed = changed || k > 0;
                }
            }
        }
        auto prune = [](std::vector<Factor>& s) {
            s.erase(std::remove_if(s.begin(), s.end(), [](const Factor& f) { return f.exp == 0; }),
                    s.end());
        };
        prune(num_);
        prune(den_);
        // divisibility between factors over the same variable set
        bool split = false;
        for (size_t i = 0; i < num_.size() && !split; ++i) {
            auto sup_n = var_support(num_[i].p);
            for (size_t j = 0; j < den_.size() && !split; ++j) {
                if (var_support(den_[j].p) != sup_n) continue;
                if (num_[i].p.term_count() < den_[j].p.term_count()) continue;
                auto q = num_[i].p.divide_exact(den_[j].p);
                if (!q) continue;
                Poly quot = *q;
                num_[i].exp -= 1;
                den_[j].exp -= 1;
                push_factor(num_, quot, 1, false);
                split = true;
                changed = true;
            }
        }
        if (split) {
            prune(num_);
            prune(den_);
        }
    }
    sort_factors();
}

RatFunc RatFunc::operator*(const RatFunc& o) const {
    RatFunc r(tab_ ? tab_ : o.tab_);
    if (is_zero() || o.is_zero()) return r;
    r.unit_ = unit_ * o.unit_;
    r.mono_ = mono_mul(mono_, o.mono_);
    r.num_ = num_;
    r.den_ = den_;
    for (const auto& f : o.num_) merge_into(r.num_, f.p, f.exp);
    for (const auto& f : o.den_) merge_into(r.den_, f.p, f.exp);
    r.normalize_sqrt_mono();
    r.cancel_num_den();
    return r;
}

RatFunc RatFunc::inverse() const {
    if (is_zero()) throw DegenerateDenominator("inverse of zero");
    RatFunc r(tab_);
    r.unit_ = Rational(1) / unit_;
    r.mono_ = mono_neg(mono_);
    r.num_ = den_;
    r.den_ = num_;
    r.normalize_sqrt_mono();
    return r;
}

RatFunc RatFunc::operator/(const RatFunc& o) const {
    if (o.is_zero()) throw DegenerateDenominator("division by zero");
    return *this * o.inverse();
}

RatFunc RatFunc::operator-() const {
    RatFunc r = *this;
    r.unit_ = -r.unit_;
    return r;
}

RatFunc RatFunc::scaled(const Rational& c) const {
    if (c == 0) return zero(tab_);
    RatFunc r = *this;
    r.unit_ *= c;
    return r;
}

RatFunc RatFunc::pow(int e) const {
    if (e == 0) return one(tab_);
    if (e < 0) return inverse().pow(-e);
    if (is_zero()) return zero(tab_);
    RatFunc r(tab_);
    r.unit_ = rat_pow(unit_, e);
    r.mono_ = zero_mono();
    for (size_t i = 0; i < mono_.size(); ++i) r.mono_[i] = mono_[i] * e;
    r.num_ = num_;
    r.den_ = den_;
    for (auto& f : r.num_) f.exp *= e;
    for (auto& f : r.den_) f.exp *= e;
    r.normalize_sqrt_mono();
    return r;
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    if (tab_ != o.tab_) throw Error("RatFunc: mixed symbol tables");

    // common denominator: union of factor multisets with max exponents
    std::vector<Factor> du = den_;
    for (const auto& g : o.den_) {
        bool found = false;
        for (auto& f : du) {
            if (f.p == g.p) {
                f.exp = std::max(f.exp, g.exp);
                found = true;
                break;
            }
        }
        if (!found) du.push_back(g);
    }
    auto extra_of = [&](const std::vector<Factor>& own) {
        std::vector<Factor> extra;
        for (const auto& f : du) {
            int have = 0;
            for (const auto& g : own)
                if (g.p == f.p) have = g.exp;
            if (f.exp > have) extra.push_back(Factor{f.p, f.exp - have});
        }
        return extra;
    };

    Monomial mg = mono_min(mono_, o.mono_);
    Poly pa = expand_side(tab_, num_) * expand_side(tab_, extra_of(den_));
    pa = pa.mul_monomial(mono_div(mono_, mg), unit_);
    Poly pb = expand_side(tab_, o.num_) * expand_side(tab_, extra_of(o.den_));
    pb = pb.mul_monomial(mono_div(o.mono_, mg), o.unit_);
    Poly s = pa + pb;

    RatFunc r(tab_);
    r.unit_ = 1;
    r.mono_ = mg;
    r.den_ = du;
    r.push_factor(r.num_, s, 1, false);
    r.normalize_sqrt_mono();
    r.cancel_num_den();
    return r;
}

RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }

bool RatFunc::equals(const RatFunc& o) const {
    if (tab_ != o.tab_) return false;
    if (unit_ == o.unit_ && mono_ == o.mono_) {
        auto eq_side = [](const std::vector<Factor>& a, const std::vector<Factor>& b) {
            if (a.size() != b.size()) return false;
            for (size_t i = 0; i < a.size(); ++i)
                if (a[i].exp != b[i].exp || !(a[i].p == b[i].p)) return false;
            return true;
        };
        if (eq_side(num_, o.num_) && eq_side(den_, o.den_)) return true;
    }
    return (*this - o).is_zero();
}

Poly RatFunc::numerator_expanded() const {
    if (is_zero()) return Poly::zero(tab_);
    Monomial pos = mono_;
    for (auto& e : pos) e = std::max(e, 0);
    return expand_side(tab_, num_).mul_monomial(pos, unit_);
}

Poly RatFunc::denominator_expanded() const {
    if (is_zero()) return Poly::constant(tab_, 1);
    Monomial neg = mono_;
    for (auto& e : neg) e = e < 0 ? -e : 0;
    return expand_side(tab_, den_).mul_monomial(neg, 1);
}

bool RatFunc::depends_on(SymbolId id) const {
    if (is_zero()) return false;
    if (mono_[static_cast<size_t>(id)] != 0) return true;
    for (const auto& f : num_)
        if (f.p.depends_on(id)) return true;
    for (const auto& f : den_)
        if (f.p.depends_on(id)) return true;
    return false;
}

bool RatFunc::denominator_depends_on(SymbolId id) const {
    if (is_zero()) return false;
    if (mono_[static_cast<size_t>(id)] < 0) return true;
    for (const auto& f : den_)
        if (f.p.depends_on(id)) return true;
    return false;
}

RatFunc RatFunc::subst_monomial(SymbolId id, const Rational& c, const Monomial& m) const {
    if (is_zero() || !depends_on(id)) return *this;
    if (m[static_cast<size_t>(id)] != 0)
        throw Error("subst_monomial: value contains the substituted symbol");
    RatFunc r(tab_);
    r.unit_ = unit_;
    r.mono_ = mono_;
    int e = r.mono_[static_cast<size_t>(id)];
    if (e != 0) {
        if (c == 0) throw DegenerateDenominator("subst_monomial: zero base");
        r.unit_ *= rat_pow(c, e);
        r.mono_[static_cast<size_t>(id)] = 0;
        for (size_t i = 0; i < r.mono_.size(); ++i) r.mono_[i] += e * m[i];
    }
    for (const auto& f : num_) r.push_factor(r.num_, f.p.subst_monomial(id, c, m), f.exp, false);
    for (const auto& f : den_) r.push_factor(r.den_, f.p.subst_monomial(id, c, m), f.exp, true);
    r.normalize_sqrt_mono();
    r.cancel_num_den();
    return r;
}

RatFunc RatFunc::subst_poly(SymbolId id, const Poly& value) const {
    if (is_zero() || !depends_on(id)) return *this;
    RatFunc r(tab_);
    r.unit_ = unit_;
    r.mono_ = mono_;
    int e = r.mono_[static_cast<size_t>(id)];
    if (e != 0) {
        r.mono_[static_cast<size_t>(id)] = 0;
        if (e > 0)
            r.push_factor(r.num_, value.pow(e), 1, false);
        else
            r.push_factor(r.den_, value.pow(-e), 1, true);
    }
    for (const auto& f : num_) r.push_factor(r.num_, f.p.subst(id, value), f.exp, false);
    for (const auto& f : den_) r.push_factor(r.den_, f.p.subst(id, value), f.exp, true);
    r.normalize_sqrt_mono();
    r.cancel_num_den();
    return r;
}

RatFunc RatFunc::scale_symbol(SymbolId id, const Rational& c, const Monomial& mono) const {
    if (is_zero() || !depends_on(id)) return *this;
    RatFunc r(tab_);
    r.unit_ = unit_;
    r.mono_ = mono_;
    int e = r.mono_[static_cast<size_t>(id)];
    if (e != 0) {
        r.unit_ *= rat_pow(c, e);
        for (size_t i = 0; i < r.mono_.size(); ++i) r.mono_[i] += e * mono[i];
    }
    for (const auto& f : num_) r.push_factor(r.num_, f.p.scale_symbol(id, c, mono), f.exp, false);
    for (const auto& f : den_) r.push_factor(r.den_, f.p.scale_symbol(id, c, mono), f.exp, true);
    r.normalize_sqrt_mono();
    r.cancel_num_den();
    return r;
}

Q236 RatFunc::eval(const std::vector<Rational>& vals) const {
    if (is_zero()) return Q236();
    Q236 acc{unit_};
    for (SymbolId id = 0; id < tab_->size(); ++id) {
        int e = mono_[static_cast<size_t>(id)];
        if (e == 0) continue;
        if (tab_->is_sqrt(id)) {
            acc = acc * (tab_->info(id).sqrt_value == 2 ? Q236::sqrt2() : Q236::sqrt3()).pow(e);
        } else {
            const Rational& v = vals.at(static_cast<size_t>(id));
            if (v == 0 && e < 0) throw EvalPole("pole: zero base " + tab_->name(id));
            acc = acc * Q236(rat_pow(v, e));
        }
    }
    for (const auto& f : num_) acc = acc * f.p.eval(vals).pow(f.exp);
    for (const auto& f : den_) {
        Q236 d = f.p.eval(vals);
        if (d.is_zero()) throw EvalPole("denominator factor vanishes");
        acc = acc * d.pow(-f.exp);
    }
    return acc;
}

std::complex<double> RatFunc::eval_complex(const std::vector<std::complex<double>>& vals,
                                           double pole_guard) const {
    if (is_zero()) return {0.0, 0.0};
    std::complex<double> acc(unit_.get_d(), 0.0);
    for (SymbolId id = 0; id < tab_->size(); ++id) {
        int e = mono_[static_cast<size_t>(id)];
        if (e == 0) continue;
        std::complex<double> base = tab_->is_sqrt(id)
                                        ? std::complex<double>(std::sqrt(double(tab_->info(id).sqrt_value)), 0.0)
                                        : vals.at(static_cast<size_t>(id));
        if (e < 0 && std::abs(base) < pole_guard) throw NumericPole(tab_->name(id));
        acc *= std::pow(base, e);
    }
    for (const auto& f : num_) acc *= std::pow(f.p.eval_complex(vals), f.exp);
    for (const auto& f : den_) {
        std::complex<double> d = f.p.eval_complex(vals);
        if (std::abs(d) < pole_guard) throw NumericPole("denominator factor below pole guard");
        acc /= std::pow(d, f.exp);
    }
    return acc;
}

std::string RatFunc::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool printed = false;
    Rational au = abs(unit_);
    if (unit_ < 0) os << "-";
    if (au != 1) {
        os << au.get_str();
        printed = true;
    }
    for (SymbolId id = 0; id < tab_->size(); ++id) {
        int e = mono_[static_cast<size_t>(id)];
        if (e == 0) continue;
        if (printed) os << "*";
        os << tab_->name(id);
        if (e != 1) os << "^" << e;
        printed = true;
    }
    for (const auto& f : num_) {
        if (printed) os << "*";
        os << "(" << f.p.str() << ")";
        if (f.exp != 1) os << "^" << f.exp;
        printed = true;
    }
    if (!printed) os << "1";
    if (!den_.empty()) {
        os << "/(";
        bool first = true;
        for (const auto& f : den_) {
            if (!first) os << "*";
            os << "(" << f.p.str() << ")";
            if (f.exp != 1) os << "^" << f.exp;
            first = false;
        }
        os << ")";
    }
    return os.str();
}

}  // namespace qtorus
