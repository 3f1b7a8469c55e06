#include "qtorus/series.hpp"

#include <algorithm>
#include <sstream>

namespace qtorus {

RatFunc Support::as_ratfunc(const SymbolTable* tab) const {
    RatFunc r = RatFunc::constant(tab, unit);
    if (r.is_zero()) throw Error("zero support");
    // attach the monomial
    RatFunc m(tab);
    m = RatFunc::constant(tab, 1);
    for (size_t id = 0; id < mono.size(); ++id)
        if (mono[id] != 0) m = m * RatFunc::symbol(tab, static_cast<SymbolId>(id), mono[id]);
    return r * m;
}

std::string Support::str(const SymbolTable* tab) const { return as_ratfunc(tab).str(); }

Support support_of_ratfunc(const RatFunc& f) {
    if (f.is_zero() || !f.is_monomial())
        throw NonLinearFactor("support must be a nonzero invertible monomial: " + f.str());
    return Support{f.unit(), f.mono()};
}

Support support_of_symbol(const Context* ctx, SymbolId id) {
    Monomial m(static_cast<size_t>(ctx->table()->size()), 0);
    m[static_cast<size_t>(id)] = 1;
    return Support{Rational(1), m};
}

namespace {

Support sigma_support(const Context* ctx, const ShiftMono& m, const Support& s) {
    RatFunc r = ctx->sigma(m, s.as_ratfunc(ctx->table()));
    return support_of_ratfunc(r);
}

SkewElement substitute_supported(const Context* ctx, const DeltaKey& key, SkewElement coeff) {
    // ascending variable order; merge chains always point upward
    for (const auto& [var, sup] : key) {
        bool depends = false;
        for (const auto& [sm, c] : coeff.terms())
            if (c.depends_on(var)) {
                depends = true;
                break;
            }
        if (!depends) continue;
        try {
            coeff = coeff.substitute_central(var, sup.as_ratfunc(ctx->table()));
        } catch (const DegenerateDenominator& e) {
            throw PoleOnSupport(std::string("substituting ") + ctx->table()->name(var) + " -> " +
                                sup.str(ctx->table()) + ": " + e.what());
        }
    }
    return coeff;
}

}  // namespace

DeltaSeries DeltaSeries::from_regular(const SpectralElement& e) {
    DeltaSeries s(e.ctx());
    s.regular_ = e;
    return s;
}

DeltaSeries DeltaSeries::delta_term(const Context* ctx, SymbolId var, const Support& sup,
                                    const SkewElement& coeff) {
    DeltaSeries s(ctx);
    DeltaKey key;
    key[var] = sup;
    s.add_term(key, coeff);
    return s;
}

void DeltaSeries::add_term(const DeltaKey& key, const SkewElement& coeff) {
    if (coeff.is_zero()) return;
    canonicalize_key_and_add(key, coeff);
}

void DeltaSeries::canonicalize_key_and_add(DeltaKey key, const SkewElement& coeff) {
    // merge equal supports into chains delta(z/w) delta(w/p)
    std::map<Support, std::vector<SymbolId>> groups;
    for (const auto& [var, sup] : key) groups[sup].push_back(var);
    DeltaKey canon;
    for (const auto& [sup, vars] : groups) {
        for (size_t t = 0; t + 1 < vars.size(); ++t)
            canon[vars[t]] = support_of_symbol(ctx_, vars[t + 1]);
        canon[vars.back()] = sup;
    }
    SkewElement c = substitute_supported(ctx_, canon, coeff);
    if (c.is_zero()) return;
    auto it = terms_.find(canon);
    if (it == terms_.end()) {
        terms_.emplace(std::move(canon), std::move(c));
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

DeltaSeries DeltaSeries::operator+(const DeltaSeries& o) const {
    DeltaSeries r = *this;
    r += o;
    return r;
}

DeltaSeries& DeltaSeries::operator+=(const DeltaSeries& o) {
    if (ctx_ == nullptr) *this = DeltaSeries(o.ctx_);
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    regular_ += o.regular_;
    return *this;
}

DeltaSeries DeltaSeries::operator-() const {
    DeltaSeries r(ctx_);
    for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
    r.regular_ = -regular_;
    return r;
}

DeltaSeries DeltaSeries::operator-(const DeltaSeries& o) const { return *this + (-o); }

DeltaSeries DeltaSeries::scaled(const RatFunc& c) const {
    DeltaSeries r(ctx_);
    for (const auto& [k, t] : terms_) r.add_term(k, t.scaled(c));
    r.regular_ = regular_.scaled(c);
    return r;
}

DeltaSeries delta_apply_function(const RatFunc& f, const DeltaSeries& x) {
    return x.scaled(f);
}

DeltaSeries delta_mul(const DeltaSeries& x, const DeltaSeries& y) {
    const Context* ctx = x.ctx() ? x.ctx() : y.ctx();
    if (x.ctx() && y.ctx() && x.ctx() != y.ctx())
        throw MixedInstance("delta_mul across instances");
    DeltaSeries r(ctx);
    for (const auto& [kx, cx] : x.terms_) {
        for (const auto& [ky, cy] : y.terms_) {
            for (const auto& [var, sup] : ky)
                if (kx.count(var))
                    throw Error("delta_mul: overlapping spectral variable " + ctx->table()->name(var));
            for (const auto& [m1, r1] : cx.terms()) {
                DeltaKey k = kx;
                for (const auto& [var, sup] : ky) k[var] = sigma_support(ctx, m1, sup);
                r.add_term(k, SkewElement::term(ctx, m1, r1) * cy);
            }
        }
        if (!y.regular_.is_zero()) r.add_term(kx, cx * y.regular_);
    }
    if (!x.regular_.is_zero()) {
        for (const auto& [ky, cy] : y.terms_) {
            for (const auto& [m1, r1] : x.regular_.terms()) {
                DeltaKey k;
                for (const auto& [var, sup] : ky) k[var] = sigma_support(ctx, m1, sup);
                r.add_term(k, SkewElement::term(ctx, m1, r1) * cy);
            }
        }
        if (!y.regular_.is_zero()) r.add_regular(x.regular_ * y.regular_);
    }
    return r;
}

PartialFractions partial_fractions(const RatFunc& f, SymbolId var) {
    PartialFractions out;
    if (f.is_zero()) return out;
    const SymbolTable* tab = f.table();
    if (f.mono()[static_cast<size_t>(var)] < 0)
        throw NonSimplePole("pole at the origin of " + tab->name(var));

    struct PoleFactor {
        Poly p;       // L*var + T
        Poly lead;    // L
        Support root; // -T/L as a monomial
    };
    std::vector<PoleFactor> poles;
    for (const auto& fac : f.den_factors()) {
        if (!fac.p.depends_on(var)) continue;
        if (fac.exp > 1) throw NonSimplePole("repeated factor " + fac.p.str());
        auto by = fac.p.coeffs_in(var);
        if (by.rbegin()->first != 1) throw NonLinearFactor(fac.p.str());
        Poly lead = by.at(1);
        Poly tail = by.count(0) ? by.at(0) : Poly::zero(tab);
        RatFunc root = RatFunc::fraction(-tail, lead);
        if (root.is_zero() || !root.is_monomial())
            throw NonLinearFactor("pole of " + fac.p.str() + " is not an invertible monomial");
        poles.push_back(PoleFactor{fac.p, lead, support_of_ratfunc(root)});
    }
    for (size_t i = 0; i < poles.size(); ++i)
        for (size_t j = i + 1; j < poles.size(); ++j)
            if (poles[i].root == poles[j].root)
                throw NonSimplePole("colliding supports " + poles[i].root.str(tab));

    for (const auto& pf : poles) {
        RatFunc g = f * RatFunc::from_poly(pf.p);  // cancels the factor exactly
        RatFunc res;
        try {
            res = g.subst_monomial(var, pf.root.unit, pf.root.mono) / RatFunc::from_poly(pf.lead);
        } catch (const DegenerateDenominator& e) {
            throw NonSimplePole(std::string("residue at ") + pf.root.str(tab) + ": " + e.what());
        }
        out.poles.emplace_back(pf.root, res);
    }

    // polynomial part = non-negative modes of the expansion at infinity
    int deg_num = f.numerator_expanded().degree_in(var);
    int deg_den = f.denominator_expanded().degree_in(var);
    if (deg_num >= deg_den) {
        auto modes = rat_modes(f, var, 0, deg_num - deg_den, /*plus=*/true);
        out.poly_part.assign(static_cast<size_t>(deg_num - deg_den) + 1, RatFunc::zero(tab));
        for (const auto& [t, c] : modes) out.poly_part[static_cast<size_t>(t)] = c;
    }
    return out;
}

DeltaSeries expansion_difference(const RatFunc& k, SymbolId var, const Context* ctx) {
    auto pf = partial_fractions(k, var);
    DeltaSeries r(ctx);
    for (const auto& [sup, res] : pf.poles) {
        RatFunc pinv = sup.as_ratfunc(ctx->table()).inverse();
        DeltaKey key;
        key[var] = sup;
        r.add_term(key, SkewElement::coeff(ctx, res * pinv));
    }
    // the polynomial part has identical expansions on both sides and cancels
    return r;
}

std::map<int, RatFunc> rat_modes(const RatFunc& f, SymbolId var, int lo, int hi, bool plus) {
    std::map<int, RatFunc> out;
    if (f.is_zero() || lo > hi) return out;
    const SymbolTable* tab = f.table();
    int s0 = f.mono()[static_cast<size_t>(var)];
    RatFunc g = s0 == 0 ? f : f * RatFunc::symbol(tab, var, -s0);
    Poly n = g.numerator_expanded();
    Poly d = g.denominator_expanded();
    auto nc = n.coeffs_in(var);
    auto dc = d.coeffs_in(var);
    // series coefficients of N/D in ascending powers of t, where t = 1/var
    // (plus) or t = var (minus)
    int nlo = nc.begin()->first, nhi = nc.rbegin()->first;
    int dlo = dc.begin()->first, dhi = dc.rbegin()->first;
    auto coef = [&](const std::map<int, Poly>& m, int k) {
        auto it = m.find(k);
        return it == m.end() ? RatFunc::zero(tab) : RatFunc::from_poly(it->second);
    };
    // reversed (plus) or direct (minus) coefficient accessors
    auto ncoef = [&](int j) { return plus ? coef(nc, nhi - j) : coef(nc, nlo + j); };
    auto dcoef = [&](int j) { return plus ? coef(dc, dhi - j) : coef(dc, dlo + j); };
    RatFunc d0 = dcoef(0);
    if (d0.is_zero()) throw Error("rat_modes: vanishing leading denominator coefficient");
    if (!plus && dlo != 0)
        throw NonSimplePole("rat_modes: pole at the origin of " + tab->name(var));
    // coefficient of var^t in g corresponds to series index j with
    //   plus:  t = (nhi - dhi) - j       minus: t = (nlo - dlo) + j
    int jmax;
    if (plus)
        jmax = (nhi - dhi) - (lo - s0);
    else
        jmax = (hi - s0) - (nlo - dlo);
    if (jmax < 0) return out;
    std::vector<RatFunc> q(static_cast<size_t>(jmax) + 1, RatFunc::zero(tab));
    for (int j = 0; j <= jmax; ++j) {
        RatFunc acc = ncoef(j);
        for (int s = 1; s <= j; ++s) {
            RatFunc ds = dcoef(s);
            if (ds.is_zero()) continue;
            acc -= ds * q[static_cast<size_t>(j - s)];
        }
        q[static_cast<size_t>(j)] = acc / d0;
    }
    for (int j = 0; j <= jmax; ++j) {
        int t = (plus ? (nhi - dhi) - j : (nlo - dlo) + j) + s0;
        if (t < lo || t > hi) continue;
        if (!q[static_cast<size_t>(j)].is_zero()) out.emplace(t, q[static_cast<size_t>(j)]);
    }
    return out;
}

namespace {

// expand an element over a "free" variable (no delta support): coefficients
// rational in the variable contribute a mode spectrum, others sit at 0.
std::map<int, SkewElement> expand_free_var(const Context* ctx, const SkewElement& e, SymbolId var,
                                           int n, bool plus) {
    std::map<int, SkewElement> out;
    for (const auto& [sm, c] : e.terms()) {
        if (!c.depends_on(var)) {
            auto it = out.find(0);
            if (it == out.end()) it = out.emplace(0, SkewElement(ctx)).first;
            it->second.add_term(sm, c);
            continue;
        }
        for (const auto& [t, cc] : rat_modes(c, var, -n, n, plus)) {
            auto it = out.find(t);
            if (it == out.end()) it = out.emplace(t, SkewElement(ctx)).first;
            it->second.add_term(sm, cc);
        }
    }
    return out;
}

}  // namespace

std::map<std::vector<int>, SkewElement> truncated_modes(const DeltaSeries& x,
                                                        const std::vector<SymbolId>& vars, int n,
                                                        bool plus) {
    const Context* ctx = x.ctx();
    std::map<std::vector<int>, SkewElement> out;
    auto emit = [&](const std::vector<int>& tuple, const SkewElement& c) {
        if (c.is_zero()) return;
        auto it = out.find(tuple);
        if (it == out.end())
            out.emplace(tuple, c);
        else {
            it->second += c;
            if (it->second.is_zero()) out.erase(it);
        }
    };

    // process one logical term (key may be empty for the regular part)
    auto process = [&](const DeltaKey& key, const SkewElement& coeff) {
        std::vector<SymbolId> supported, free_vars;
        for (SymbolId v : vars)
            (key.count(v) ? supported : free_vars).push_back(v);
        for (const auto& [var, sup] : key)
            if (std::find(vars.begin(), vars.end(), var) == vars.end())
                throw Error("truncated_modes: term supported on unlisted variable " +
                            ctx->table()->name(var));

        // enumerate supported modes; substitution order is ascending, which
        // resolves delta chains introduced by earlier multipliers
        std::sort(supported.begin(), supported.end());
        std::vector<int> modes(supported.size(), -n);
        for (;;) {
            SkewElement c = coeff;
            for (size_t t = 0; t < supported.size(); ++t) {
                SymbolId v = supported[t];
                const Support& sup = key.at(v);
                bool dep = false;
                for (const auto& [sm, cf] : c.terms())
                    if (cf.depends_on(v)) dep = true;
                if (dep) c = c.substitute_central(v, sup.as_ratfunc(ctx->table()));
                RatFunc mult = sup.as_ratfunc(ctx->table()).pow(-modes[t]);
                c = c.scaled(mult);
            }
            // expand free variables
            std::vector<std::pair<std::map<SymbolId, int>, SkewElement>> parts;
            parts.emplace_back(std::map<SymbolId, int>{}, c);
            for (SymbolId fv : free_vars) {
                std::vector<std::pair<std::map<SymbolId, int>, SkewElement>> next;
                for (auto& [assg, elem] : parts) {
                    for (auto& [t, piece] : expand_free_var(ctx, elem, fv, n, plus)) {
                        if (t < -n || t > n) continue;
                        auto a2 = assg;
                        a2[fv] = t;
                        next.emplace_back(std::move(a2), std::move(piece));
                    }
                }
                parts = std::move(next);
            }
            for (const auto& [assg, elem] : parts) {
                std::vector<int> tuple;
                tuple.reserve(vars.size());
                for (SymbolId v : vars) {
                    auto st = std::find(supported.begin(), supported.end(), v);
                    if (st != supported.end())
                        tuple.push_back(modes[static_cast<size_t>(st - supported.begin())]);
                    else
                        tuple.push_back(assg.count(v) ? assg.at(v) : 0);
                }
                emit(tuple, elem);
            }
            // advance mode counter
            size_t t = 0;
            for (; t < modes.size(); ++t) {
                if (modes[t] < n) {
                    ++modes[t];
                    break;
                }
                modes[t] = -n;
            }
            if (t == modes.size()) break;
            if (modes.empty()) break;
        }
    };

    for (const auto& [key, coeff] : x.terms()) process(key, coeff);
    if (!x.regular().is_zero()) process(DeltaKey{}, x.regular());
    return out;
}

std::string DeltaSeries::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        for (const auto& [var, sup] : key)
            os << "delta(" << ctx_->table()->name(var) << "/" << sup.str(ctx_->table()) << ")";
        os << "*{" << c.str() << "}";
    }
    if (!regular_.is_zero()) {
        if (!first) os << " + ";
        os << "{" << regular_.str() << "}";
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace qtorus
