#include "qtorus/generators.hpp"

#include <algorithm>

namespace qtorus {

namespace {

Poly rf_to_poly(const RatFunc& f) {
    if (!f.den_factors().empty()) throw Error("expected a polynomial value");
    return f.numerator_expanded();
}

}  // namespace

std::string mutation_name(MutationKind m) {
    switch (m) {
        case MutationKind::None: return "none";
        case MutationKind::ScaleE: return "scale-E";
        case MutationKind::DropRFactor: return "drop-R-factor";
        case MutationKind::WrongShift: return "wrong-shift";
        case MutationKind::SignF: return "sign-F";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Yangian family
// ---------------------------------------------------------------------------

RatFunc GeneratorSet::yang_R(int i, const Poly& arg) const {
    const Context* c = ctx_.get();
    const auto& cfg = c->cfg();
    RatFunc r = RatFunc::one(c->table());
    if (family_ == Family::Yangian) {
        int li = cfg.li(i);
        int count = (mutation_ == MutationKind::DropRFactor && li > 0) ? li - 1 : li;
        for (int s = 1; s <= count; ++s)
            r = r * RatFunc::from_poly(arg - rf_to_poly(c->nu(i, s)));
    } else {
        int lp = cfg.lplus[static_cast<size_t>(i)];
        int lm = cfg.lminus[static_cast<size_t>(i)];
        int pcount = (mutation_ == MutationKind::DropRFactor && lp > 0) ? lp - 1 : lp;
        for (int s = 1; s <= pcount; ++s)
            r = r * RatFunc::from_poly(arg - rf_to_poly(c->nu_pm(i, s, true)));
        for (int s = 1; s <= lm; ++s)
            r = r / RatFunc::from_poly(arg - rf_to_poly(c->nu_pm(i, s, false)));
    }
    return r;
}

namespace {

// (i hbar / 2)(alpha_i + r alpha_j, alpha_j) = h (d_i a_ij / 2 + r d_j)
Poly neighbor_shift(const Context* c, int i, int j, int r) {
    Rational coef = Rational(c->cartan().bilinear(i, j), 2) + Rational(r * c->cartan().di(j));
    return rf_to_poly(c->hbar().scaled(coef));
}

}  // namespace

SpectralElement GeneratorSet::yang_H(int i, SymbolId var) const {
    const Context* c = ctx_.get();
    const CartanData& ca = c->cartan();
    Poly u = c->poly_symbol(var);
    RatFunc h = yang_R(i, u);
    for (int j = 0; j < ca.rank; ++j) {
        if (j == i) continue;
        for (int r = 1; r <= -ca.aij(j, i); ++r)
            for (int p = 0; p < c->cfg().mi(j); ++p)
                h = h * RatFunc::from_poly(u - c->poly_symbol(c->gamma(j, p)) - neighbor_shift(c, i, j, r));
    }
    Poly hd = rf_to_poly(c->hbar().scaled(ca.di(i)));
    for (int p = 0; p < c->cfg().mi(i); ++p) {
        Poly g = c->poly_symbol(c->gamma(i, p));
        h = h / RatFunc::from_poly(u - g) / RatFunc::from_poly(u - g - hd);
    }
    return SkewElement::coeff(c, h);
}

SpectralElement GeneratorSet::yang_E(int i, SymbolId var) const {
    const Context* c = ctx_.get();
    const CartanData& ca = c->cartan();
    Poly u = c->poly_symbol(var);
    SkewElement e(c);
    for (int k = 0; k < c->cfg().mi(i); ++k) {
        Poly gk = c->poly_symbol(c->gamma(i, k));
        RatFunc num = c->d_inv_sqrt(i);
        for (int j = i + 1; j < ca.rank; ++j)
            for (int r = 1; r <= -ca.aij(j, i); ++r)
                for (int p = 0; p < c->cfg().mi(j); ++p)
                    num = num * RatFunc::from_poly(gk - c->poly_symbol(c->gamma(j, p)) -
                                                   neighbor_shift(c, i, j, r));
        RatFunc den = RatFunc::from_poly(u - gk);
        for (int p = 0; p < c->cfg().mi(i); ++p)
            if (p != k) den = den * RatFunc::from_poly(gk - c->poly_symbol(c->gamma(i, p)));
        ShiftMono m = c->unit_shift();
        m[static_cast<size_t>(c->slot(i, k))] = -1;
        e.add_term(m, num / den);
    }
    if (mutation_ == MutationKind::ScaleE) e = e.scaled_rat(Rational(2));
    return e;
}

SpectralElement GeneratorSet::yang_F(int i, SymbolId var) const {
    const Context* c = ctx_.get();
    const CartanData& ca = c->cartan();
    Poly u = c->poly_symbol(var);
    Poly hd = rf_to_poly(c->hbar().scaled(ca.di(i)));
    SkewElement f(c);
    for (int k = 0; k < c->cfg().mi(i); ++k) {
        Poly gk = c->poly_symbol(c->gamma(i, k));
        Poly rarg = (mutation_ == MutationKind::WrongShift) ? gk : gk + hd;
        RatFunc num = c->d_inv_sqrt(i).scaled(-1) * yang_R(i, rarg);
        for (int j = 0; j < i; ++j)
            for (int r = 1; r <= -ca.aij(j, i); ++r)
                for (int p = 0; p < c->cfg().mi(j); ++p)
                    num = num * RatFunc::from_poly(gk - c->poly_symbol(c->gamma(j, p)) -
                                                   neighbor_shift(c, i, j, r) + hd);
        RatFunc den = RatFunc::from_poly(u - gk - hd);
        for (int p = 0; p < c->cfg().mi(i); ++p)
            if (p != k) den = den * RatFunc::from_poly(gk - c->poly_symbol(c->gamma(i, p)));
        ShiftMono m = c->unit_shift();
        m[static_cast<size_t>(c->slot(i, k))] = 1;
        f.add_term(m, num / den);
    }
    if (mutation_ == MutationKind::SignF) f = -f;
    return f;
}

SkewElement GeneratorSet::yang_mode(const SpectralElement& e, SymbolId var, int n) const {
    SkewElement out(ctx_.get());
    for (const auto& [m, c] : e.terms()) {
        auto modes = rat_modes(c, var, -n - 1, -n - 1, /*plus=*/true);
        auto it = modes.find(-n - 1);
        if (it != modes.end()) out.add_term(m, it->second);
    }
    return out;
}

SkewElement GeneratorSet::yang_E0(int i) const {
    return yang_mode(yang_E(i, ctx_->spectral("u")), ctx_->spectral("u"), 0);
}

SkewElement GeneratorSet::yang_F0(int i) const {
    return yang_mode(yang_F(i, ctx_->spectral("u")), ctx_->spectral("u"), 0);
}

// ---------------------------------------------------------------------------
// Torus families (quantum affine and rational forms)
// ---------------------------------------------------------------------------

RatFunc GeneratorSet::c_const(int i) const {
    const Context* c = ctx_.get();
    const CartanData& ca = c->cartan();
    Rational e(0);
    for (int j = 0; j < ca.rank; ++j) {
        int nji = (family_ == Family::Uqg && !zero_mode_origin_) ? nmat_[static_cast<size_t>(j)][static_cast<size_t>(i)]
                                                                 : ca.aij(j, i);
        e += Rational(ca.di(j) * c->cfg().mi(j) * nji, 2);
    }
    return c->q_to(e);
}

RatFunc GeneratorSet::torus_R(int i, bool plus, const RatFunc& arg) const {
    const Context* c = ctx_.get();
    const auto& split = c->cfg().rsplit[static_cast<size_t>(i)];
    int li = c->cfg().li(i);
    int wexp = static_cast<int>(wconv_);
    RatFunc r = RatFunc::one(c->table());
    int drop = -1;
    if (mutation_ == MutationKind::DropRFactor && li > 0) {
        // drop the largest factor index from whichever side holds it
        drop = li;
    }
    for (int s = 1; s <= li; ++s) {
        bool in_plus = split.count(s) > 0;
        if (in_plus != plus) continue;
        if (s == drop) {
            // only drop from the side that owns it; if R^+ owns nothing the
            // factor falls out of R^-
            continue;
        }
        r = r * (arg * c->wparam_pow(i, s, -wexp) - c->wparam_pow(i, s, wexp));
    }
    return r;
}

Support GeneratorSet::e_support(int i, int k) const {
    return support_of_ratfunc(ctx_->rat_symbol(ctx_->vsym(i, k), 2));
}

Support GeneratorSet::f_support(int i, int k) const {
    const Context* c = ctx_.get();
    RatFunc s = c->rat_symbol(c->vsym(i, k), 2);
    if (mutation_ != MutationKind::WrongShift) s = s * c->q_power(i, 2);
    return support_of_ratfunc(s);
}

RatFunc GeneratorSet::torus_E_prefactor(int i) const {
    const Context* c = ctx_.get();
    const CartanData& ca = c->cartan();
    RatFunc pre = c_const(i) / (c->q_power(i, 1) - c->q_power(i, -1));
    for (int p = 0; p < c->cfg().mi(i); ++p) pre = pre * c->rat_symbol(c->vsym(i, p));
    for (int j = i + 1; j < ca.rank; ++j)
        for (int p = 0; p < c->cfg().mi(j); ++p)
            pre = pre * c->rat_symbol(c->vsym(j, p), ca.aij(j, i));
    if (mutation_ == MutationKind::ScaleE) pre = pre * c->q_to(1);
    return pre;
}

RatFunc GeneratorSet::torus_F_prefactor(int i) const {
    const Context* c = ctx_.get();
    const CartanData& ca = c->cartan();
    RatFunc pre = c->q_power(i, Rational(-2 * c->cfg().mi(i))) /
                  (c->q_power(i, 1) - c->q_power(i, -1));
    pre = pre.scaled(-1);
    for (int p = 0; p < c->cfg().mi(i); ++p) pre = pre * c->rat_symbol(c->vsym(i, p));
    for (int j = 0; j < i; ++j)
        for (int p = 0; p < c->cfg().mi(j); ++p)
            pre = pre * c->rat_symbol(c->vsym(j, p), ca.aij(j, i));
    if (mutation_ == MutationKind::SignF) pre = pre.scaled(-1);
    return pre;
}

RatFunc GeneratorSet::torus_E_coeff(int i, int k) const {
    const Context* c = ctx_.get();
    const CartanData& ca = c->cartan();
    RatFunc vk2 = c->rat_symbol(c->vsym(i, k), 2);
    RatFunc num = c->rat_symbol(c->vsym(i, k), -2) * torus_R(i, /*plus=*/true, vk2);
    for (int j = i + 1; j < ca.rank; ++j)
        for (int r = 1; r <= -ca.aij(j, i); ++r)
            for (int p = 0; p < c->cfg().mi(j); ++p)
                num = num * (vk2 - c->q_power(j, ca.aij(j, i) + 2 * r) * c->rat_symbol(c->vsym(j, p), 2));
    RatFunc den = RatFunc::one(c->table());
    for (int p = 0; p < c->cfg().mi(i); ++p)
        if (p != k) den = den * (vk2 - c->rat_symbol(c->vsym(i, p), 2));
    return num / den;
}

RatFunc GeneratorSet::torus_F_coeff(int i, int k) const {
    const Context* c = ctx_.get();
    const CartanData& ca = c->cartan();
    RatFunc vk2 = c->rat_symbol(c->vsym(i, k), 2);
    RatFunc arg = (mutation_ == MutationKind::WrongShift) ? vk2 : c->q_power(i, 2) * vk2;
    RatFunc num = c->rat_symbol(c->vsym(i, k), -2) * torus_R(i, /*plus=*/false, arg);
    for (int j = 0; j < i; ++j)
        for (int r = 1; r <= -ca.aij(j, i); ++r)
            for (int p = 0; p < c->cfg().mi(j); ++p)
                num = num * (arg - c->q_power(j, ca.aij(j, i) + 2 * r) * c->rat_symbol(c->vsym(j, p), 2));
    RatFunc den = RatFunc::one(c->table());
    for (int p = 0; p < c->cfg().mi(i); ++p)
        if (p != k) den = den * (vk2 - c->rat_symbol(c->vsym(i, p), 2));
    return num / den;
}

RatFunc GeneratorSet::aff_K(int i, SymbolId var) const {
    const Context* c = ctx_.get();
    const CartanData& ca = c->cartan();
    RatFunc z = c->rat_symbol(var);
    RatFunc k = c_const(i);
    for (int j = 0; j < ca.rank; ++j)
        for (int p = 0; p < c->cfg().mi(j); ++p) k = k * c->rat_symbol(c->vsym(j, p), ca.aij(j, i));
    k = k * torus_R(i, true, z) * torus_R(i, false, z);
    for (int j = 0; j < ca.rank; ++j) {
        if (j == i) continue;
        for (int r = 1; r <= -ca.aij(j, i); ++r)
            for (int p = 0; p < c->cfg().mi(j); ++p)
                k = k * (z - c->q_power(j, ca.aij(j, i) + 2 * r) * c->rat_symbol(c->vsym(j, p), 2));
    }
    for (int p = 0; p < c->cfg().mi(i); ++p) {
        RatFunc vp2 = c->rat_symbol(c->vsym(i, p), 2);
        k = k / (z - vp2) / (z - c->q_power(i, 2) * vp2);
    }
    if (mutation_ == MutationKind::None) {
        // degree balance in the spectral variable is forced by the l_i
        // condition; guard against transcription slips
        int dn = k.numerator_expanded().degree_in(var);
        int dd = k.denominator_expanded().degree_in(var);
        if (dn != dd) throw ConfigMismatch("K degree balance violated");
    }
    return k;
}

RatFunc GeneratorSet::aff_K_closed(int i) const {
    const Context* c = ctx_.get();
    const CartanData& ca = c->cartan();
    RatFunc k = c_const(i);
    for (int s = 1; s <= c->cfg().li(i); ++s) k = k * c->wparam_pow(i, s, -static_cast<int>(wconv_));
    for (int j = 0; j < ca.rank; ++j)
        for (int p = 0; p < c->cfg().mi(j); ++p) k = k * c->rat_symbol(c->vsym(j, p), ca.aij(j, i));
    return k;
}

DeltaSeries GeneratorSet::aff_E(int i, SymbolId var) const {
    const Context* c = ctx_.get();
    DeltaSeries s(c);
    RatFunc pre = torus_E_prefactor(i);
    for (int k = 0; k < c->cfg().mi(i); ++k) {
        ShiftMono m = c->unit_shift();
        m[static_cast<size_t>(c->slot(i, k))] = -1;
        DeltaKey key;
        key[var] = e_support(i, k);
        s.add_term(key, SkewElement::term(c, m, pre * torus_E_coeff(i, k)));
    }
    return s;
}

DeltaSeries GeneratorSet::aff_F(int i, SymbolId var) const {
    const Context* c = ctx_.get();
    DeltaSeries s(c);
    RatFunc pre = torus_F_prefactor(i);
    for (int k = 0; k < c->cfg().mi(i); ++k) {
        ShiftMono m = c->unit_shift();
        m[static_cast<size_t>(c->slot(i, k))] = 1;
        DeltaKey key;
        key[var] = f_support(i, k);
        s.add_term(key, SkewElement::term(c, m, pre * torus_F_coeff(i, k)));
    }
    return s;
}

SkewElement GeneratorSet::aff_E_mode(int i, int zpow) const {
    const Context* c = ctx_.get();
    SkewElement out(c);
    RatFunc pre = torus_E_prefactor(i);
    for (int k = 0; k < c->cfg().mi(i); ++k) {
        ShiftMono m = c->unit_shift();
        m[static_cast<size_t>(c->slot(i, k))] = -1;
        RatFunc sup = e_support(i, k).as_ratfunc(c->table());
        out.add_term(m, pre * torus_E_coeff(i, k) * sup.pow(-zpow));
    }
    return out;
}

SkewElement GeneratorSet::aff_F_mode(int i, int zpow) const {
    const Context* c = ctx_.get();
    SkewElement out(c);
    RatFunc pre = torus_F_prefactor(i);
    for (int k = 0; k < c->cfg().mi(i); ++k) {
        ShiftMono m = c->unit_shift();
        m[static_cast<size_t>(c->slot(i, k))] = 1;
        RatFunc sup = f_support(i, k).as_ratfunc(c->table());
        out.add_term(m, pre * torus_F_coeff(i, k) * sup.pow(-zpow));
    }
    return out;
}

std::map<int, RatFunc> GeneratorSet::aff_K_modes(int i, int lo, int hi, bool plus) const {
    return rat_modes(aff_K(i, ctx_->spectral("z")), ctx_->spectral("z"), lo, hi, plus);
}

// ---------------------------------------------------------------------------
// rational form
// ---------------------------------------------------------------------------

int GeneratorSet::lattice_nji(int j, int i) const { return nmat_[static_cast<size_t>(j)][static_cast<size_t>(i)]; }
int GeneratorSet::lattice_mji(int j, int i) const { return mmat_[static_cast<size_t>(j)][static_cast<size_t>(i)]; }

SkewElement GeneratorSet::uqg_Kbeta(int i, int sign) const {
    const Context* c = ctx_.get();
    const CartanData& ca = c->cartan();
    if (zero_mode_origin_) return uqg_K(i, sign);
    const LatticeData& lat = *c->cfg().lattice;
    RatFunc k = c_const(i);
    for (int j = 0; j < ca.rank; ++j) {
        for (int s = 1; s <= c->cfg().li(j); ++s) {
            Rational e = Rational(lat.det_a) * lat.Mji(j, i);
            if (e.get_den() != 1) throw NonIntegerExponent("d*M_ji not integral");
            long wexp = -e.get_num().get_si();
            k = k * c->wparam_pow(j, s, static_cast<int>(wexp));
        }
        for (int p = 0; p < c->cfg().mi(j); ++p)
            k = k * c->rat_symbol(c->vsym(j, p), lattice_nji(j, i));
    }
    return SkewElement::coeff(c, sign >= 0 ? k : k.inverse());
}

SkewElement GeneratorSet::uqg_K(int i, int sign) const {
    RatFunc k = aff_K_closed(i);
    return SkewElement::coeff(ctx_.get(), sign >= 0 ? k : k.inverse());
}

SkewElement GeneratorSet::uqg_K_recon(int i) const {
    const Context* c = ctx_.get();
    SkewElement acc = SkewElement::one(c);
    for (int j = 0; j < c->cartan().rank; ++j) {
        int e = lattice_mji(j, i);
        if (e == 0) continue;
        acc = acc * uqg_Kbeta(j, e > 0 ? 1 : -1).pow(e > 0 ? e : -e);
    }
    return acc;
}

SkewElement GeneratorSet::uqg_E(int i) const { return aff_E_mode(i, 0); }

SkewElement GeneratorSet::uqg_F(int i) const { return aff_F_mode(i, 0); }

// ---------------------------------------------------------------------------
// builders
// ---------------------------------------------------------------------------

GeneratorSet build_yangian(ContextPtr ctx) {
    const Family f = ctx->cfg().family;
    if (f != Family::Yangian && f != Family::YangianBorel)
        throw ConfigMismatch("build_yangian on a non-Yangian configuration");
    GeneratorSet g;
    g.ctx_ = std::move(ctx);
    g.family_ = f;
    return g;
}

GeneratorSet build_qaffine(ContextPtr ctx) {
    if (ctx->cfg().family != Family::QAffine)
        throw ConfigMismatch("build_qaffine on a non-affine configuration");
    GeneratorSet g;
    g.ctx_ = std::move(ctx);
    g.family_ = Family::QAffine;
    g.wconv_ = 1;
    // relations use a_{ji} as the conjugation exponents
    const CartanData& ca = g.ctx_->cartan();
    g.nmat_ = ca.a;
    g.mmat_.assign(static_cast<size_t>(ca.rank), std::vector<int>(static_cast<size_t>(ca.rank), 0));
    for (int i = 0; i < ca.rank; ++i) g.mmat_[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
    return g;
}

GeneratorSet build_uqg(ContextPtr ctx) {
    if (ctx->cfg().family != Family::Uqg) throw ConfigMismatch("build_uqg on a non-uqg configuration");
    if (!ctx->cfg().lattice) throw ConfigMismatch("uqg requires lattice data");
    GeneratorSet g;
    g.ctx_ = std::move(ctx);
    g.family_ = Family::Uqg;
    const LatticeData& lat = *g.ctx_->cfg().lattice;
    g.wconv_ = lat.det_a;
    if (g.wconv_ == 0) throw LatticeOutOfRange("det a = 0");
    g.nmat_ = lat.n;
    g.mmat_ = lat.mmat;
    return g;
}

GeneratorSet uqg_from_zero_modes(const GeneratorSet& affine) {
    if (affine.family() != Family::QAffine)
        throw ConfigMismatch("zero modes must come from an affine set");
    GeneratorSet g;
    g.ctx_ = affine.ctx_ptr();
    g.family_ = Family::Uqg;
    g.mutation_ = affine.mutation();
    g.zero_mode_origin_ = true;
    g.wconv_ = 1;  // inherits the affine w-convention
    const CartanData& ca = g.ctx_->cartan();
    g.nmat_ = ca.a;  // adjoint lattice: beta_i = alpha_i
    g.mmat_.assign(static_cast<size_t>(ca.rank), std::vector<int>(static_cast<size_t>(ca.rank), 0));
    for (int i = 0; i < ca.rank; ++i) g.mmat_[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
    return g;
}

}  // namespace qtorus
