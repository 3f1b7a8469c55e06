#include "qtorus/poly.hpp"

#include <algorithm>
#include <sstream>

namespace qtorus {

Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Monomial mono_div(const Monomial& a, const Monomial& b) {
    Monomial r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Monomial mono_neg(const Monomial& a) {
    Monomial r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

bool mono_divides(const Monomial& d, const Monomial& m) {
    for (size_t i = 0; i < d.size(); ++i)
        if (d[i] > m[i]) return false;
    return true;
}

Monomial mono_min(const Monomial& a, const Monomial& b) {
    Monomial r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = std::min(a[i], b[i]);
    return r;
}

bool mono_is_one(const Monomial& m) {
    for (auto e : m)
        if (e != 0) return false;
    return true;
}

Poly Poly::constant(const SymbolTable* tab, const Rational& c) {
    Poly p(tab);
    if (c != 0) p.terms_[Monomial(static_cast<size_t>(tab->size()), 0)] = c;
    return p;
}

Poly Poly::symbol(const SymbolTable* tab, SymbolId id, int exp) {
    Poly p(tab);
    Monomial m(static_cast<size_t>(tab->size()), 0);
    m[static_cast<size_t>(id)] = exp;
    Rational c(1);
    p.reduce_sqrt(m, c);
    p.terms_[m] = c;
    return p;
}

Poly Poly::monomial(const SymbolTable* tab, const Monomial& m, const Rational& c) {
    Poly p(tab);
    p.add_term(m, c);
    return p;
}

bool Poly::is_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && mono_is_one(terms_.begin()->first);
}

Rational Poly::as_constant() const {
    if (terms_.empty()) return Rational(0);
    if (!is_constant()) throw Error("Poly::as_constant on non-constant");
    return terms_.begin()->second;
}

void Poly::reduce_sqrt(Monomial& m, Rational& c) const {
    for (SymbolId id = 0; id < tab_->size(); ++id) {
        if (!tab_->is_sqrt(id)) continue;
        auto& e = m[static_cast<size_t>(id)];
        if (e == 0 || e == 1) continue;
        long d = tab_->info(id).sqrt_value;
        // s^e = d^{floor(e/2)} * s^{e mod 2}, also valid for negative e
        // using s^{-1} = s/d.
        long half = (e >= 0) ? e / 2 : (e - 1) / 2;
        c *= rat_pow(Rational(d), half);
        e = static_cast<std::int32_t>(e - 2 * half);
    }
}

void Poly::add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    Monomial mm = m;
    Rational cc = c;
    reduce_sqrt(mm, cc);
    auto it = terms_.find(mm);
    if (it == terms_.end()) {
        terms_.emplace(std::move(mm), std::move(cc));
    } else {
        it->second += cc;
        if (it->second == 0) terms_.erase(it);
    }
}

Poly Poly::operator+(const Poly& o) const {
    Poly r = *this;
    r += o;
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    if (tab_ == nullptr) tab_ = o.tab_;
    for (const auto& [m, c] : o.terms_) {
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }
    return *this;
}

Poly Poly::operator-(const Poly& o) const {
    Poly r = *this;
    r -= o;
    return r;
}

Poly& Poly::operator-=(const Poly& o) {
    if (tab_ == nullptr) tab_ = o.tab_;
    for (const auto& [m, c] : o.terms_) {
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, -c);
        } else {
            it->second -= c;
            if (it->second == 0) terms_.erase(it);
        }
    }
    return *this;
}

Poly Poly::operator-() const {
    Poly r(tab_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    Poly r(tab_ ? tab_ : o.tab_);
    for (const auto& [m1, c1] : terms_)
        for (const auto& [m2, c2] : o.terms_) r.add_term(mono_mul(m1, m2), c1 * c2);
    return r;
}

Poly Poly::scaled(const Rational& c) const {
    Poly r(tab_);
    if (c == 0) return r;
    for (const auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
    return r;
}

Poly Poly::mul_monomial(const Monomial& m, const Rational& c) const {
    Poly r(tab_);
    if (c == 0) return r;
    for (const auto& [mm, k] : terms_) r.add_term(mono_mul(mm, m), k * c);
    return r;
}

Poly Poly::pow(int e) const {
    if (e < 0) throw Error("Poly::pow negative exponent");
    Poly acc = Poly::constant(tab_, 1);
    Poly base = *this;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

int Poly::compare(const Poly& a, const Poly& b) {
    auto ia = a.terms_.begin(), ib = b.terms_.begin();
    for (; ia != a.terms_.end() && ib != b.terms_.end(); ++ia, ++ib) {
        if (ia->first != ib->first) return ia->first < ib->first ? -1 : 1;
        int c = cmp(ia->second, ib->second);
        if (c != 0) return c;
    }
    if (ia != a.terms_.end()) return 1;
    if (ib != b.terms_.end()) return -1;
    return 0;
}

const Monomial& Poly::lead_monomial() const {
    if (terms_.empty()) throw Error("Poly::lead_monomial of zero");
    return terms_.rbegin()->first;
}

const Rational& Poly::lead_coeff() const {
    if (terms_.empty()) throw Error("Poly::lead_coeff of zero");
    return terms_.rbegin()->second;
}

Rational Poly::content() const {
    if (terms_.empty()) return Rational(0);
    Rational g(0);
    for (const auto& [m, c] : terms_) g = rat_gcd(g, c);
    if (lead_coeff() < 0) g = -g;
    return g;
}

Monomial Poly::monomial_gcd() const {
    if (terms_.empty()) return Monomial(static_cast<size_t>(tab_->size()), 0);
    Monomial r = terms_.begin()->first;
    for (const auto& [m, c] : terms_) r = mono_min(r, m);
    return r;
}

int Poly::degree_in(SymbolId id) const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m[static_cast<size_t>(id)]));
    return d;
}

int Poly::min_exp_in(SymbolId id) const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::min(d, static_cast<int>(m[static_cast<size_t>(id)]));
    return d;
}

bool Poly::depends_on(SymbolId id) const {
    for (const auto& [m, c] : terms_)
        if (m[static_cast<size_t>(id)] != 0) return true;
    return false;
}

std::map<int, Poly> Poly::coeffs_in(SymbolId id) const {
    std::map<int, Poly> r;
    for (const auto& [m, c] : terms_) {
        int e = m[static_cast<size_t>(id)];
        Monomial mm = m;
        mm[static_cast<size_t>(id)] = 0;
        auto it = r.find(e);
        if (it == r.end()) it = r.emplace(e, Poly(tab_)).first;
        it->second.add_term(mm, c);
    }
    return r;
}

Poly Poly::subst(SymbolId id, const Poly& value) const {
    auto by_exp = coeffs_in(id);
    Poly r(tab_);
    // Evaluate by Horner on descending exponents; exponents must be >= 0.
    if (!by_exp.empty() && by_exp.begin()->first < 0)
        throw Error("Poly::subst: negative exponent on substituted symbol");
    std::map<int, Poly> powers;
    for (const auto& [e, coeff] : by_exp) {
        if (!powers.count(e)) powers.emplace(e, value.pow(e));
        r += coeff * powers.at(e);
    }
    return r;
}

Poly Poly::subst_monomial(SymbolId id, const Rational& c, const Monomial& m) const {
    Poly r(tab_);
    for (const auto& [mm, k] : terms_) {
        int e = mm[static_cast<size_t>(id)];
        Monomial m2 = mm;
        m2[static_cast<size_t>(id)] = 0;
        if (e != 0) {
            if (c == 0) throw DegenerateDenominator("subst_monomial: zero support");
            for (size_t i = 0; i < m2.size(); ++i) m2[i] += e * m[i];
            r.add_term(m2, k * rat_pow(c, e));
        } else {
            r.add_term(m2, k);
        }
    }
    return r;
}

Poly Poly::scale_symbol(SymbolId id, const Rational& c, const Monomial& mono) const {
    Poly r(tab_);
    for (const auto& [mm, k] : terms_) {
        int e = mm[static_cast<size_t>(id)];
        if (e == 0) {
            r.add_term(mm, k);
            continue;
        }
        Monomial m2 = mm;
        for (size_t i = 0; i < m2.size(); ++i) m2[i] += e * mono[i];
        r.add_term(m2, k * rat_pow(c, e));
    }
    return r;
}

Q236 Poly::eval(const std::vector<Rational>& vals) const {
    Q236 acc;
    for (const auto& [m, c] : terms_) {
        Q236 t{c};
        for (SymbolId id = 0; id < tab_->size(); ++id) {
            int e = m[static_cast<size_t>(id)];
            if (e == 0) continue;
            if (tab_->is_sqrt(id)) {
                // exponent is 0 or 1 after reduction
                t = t * (tab_->info(id).sqrt_value == 2 ? Q236::sqrt2() : Q236::sqrt3());
            } else {
                const Rational& v = vals.at(static_cast<size_t>(id));
                if (v == 0 && e < 0) throw EvalPole("negative power of zero at " + tab_->name(id));
                t = t * Q236(rat_pow(v, e));
            }
        }
        acc = acc + t;
    }
    return acc;
}

std::complex<double> Poly::eval_complex(const std::vector<std::complex<double>>& vals) const {
    std::complex<double> acc(0.0, 0.0);
    for (const auto& [m, c] : terms_) {
        std::complex<double> t(c.get_d(), 0.0);
        for (SymbolId id = 0; id < tab_->size(); ++id) {
            int e = m[static_cast<size_t>(id)];
            if (e == 0) continue;
            std::complex<double> base = tab_->is_sqrt(id)
                                            ? std::complex<double>(std::sqrt(double(tab_->info(id).sqrt_value)), 0.0)
                                            : vals.at(static_cast<size_t>(id));
            t *= std::pow(base, e);
        }
        acc += t;
    }
    return acc;
}

std::optional<Poly> Poly::divide_exact(const Poly& divisor) const {
    if (divisor.is_zero()) throw DegenerateDenominator("divide_exact by zero");
    if (is_zero()) return Poly(tab_);
    for (SymbolId id = 0; id < tab_->size(); ++id)
        if (tab_->is_sqrt(id) && divisor.depends_on(id))
            throw Error("divide_exact: divisor contains sqrt symbol");

    // Shift both operands to non-negative exponents so the lex order is a
    // monomial order for the division loop.
    Monomial sn = monomial_gcd();
    for (auto& e : sn) e = std::min(e, 0);
    Monomial sd = divisor.monomial_gcd();
    for (auto& e : sd) e = std::min(e, 0);
    Poly r = mul_monomial(mono_neg(sn), 1);
    Poly d = divisor.mul_monomial(mono_neg(sd), 1);

    Poly q(tab_);
    const Monomial& dl = d.lead_monomial();
    const Rational& dc = d.lead_coeff();
    while (!r.is_zero()) {
        const Monomial& rl = r.lead_monomial();
        if (!mono_divides(dl, rl)) return std::nullopt;
        Monomial t = mono_div(rl, dl);
        Rational c = r.lead_coeff() / dc;
        q.add_term(t, c);
        r -= d.mul_monomial(t, c);
    }
    // Undo the shifts: result gains sn - sd.
    return q.mul_monomial(mono_div(sn, sd), 1);
}

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        Rational ac = abs(c);
        if (!first)
            os << (c < 0 ? " - " : " + ");
        else if (c < 0)
            os << "-";
        first = false;
        bool printed = false;
        if (ac != 1 || mono_is_one(m)) {
            os << ac.get_str();
            printed = true;
        }
        for (SymbolId id = 0; id < tab_->size(); ++id) {
            int e = m[static_cast<size_t>(id)];
            if (e == 0) continue;
            if (printed) os << "*";
            os << tab_->name(id);
            if (e != 1) os << "^" << e;
            printed = true;
        }
    }
    return os.str();
}

}  // namespace qtorus
