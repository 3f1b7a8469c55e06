#include "qtorus/selfcheck.hpp"

#include <cstdlib>
#include <functional>
#include <random>

#include "qtorus/cli.hpp"
#include "qtorus/repr.hpp"

namespace qtorus {

namespace {

ContextPtr yangian_ctx() {
    CartanData ca = cartan_from_type('A', 2);
    RepConfig cfg = make_rep_config(ca, Family::Yangian, {1, 1});
    return make_context(ca, cfg);
}

ContextPtr torus_ctx() {
    CartanData ca = cartan_from_type('A', 1);
    RepConfig cfg = make_rep_config(ca, Family::QAffine, {2});
    return make_context(ca, cfg);
}

}  // namespace

SelfCheckResult run_selfcheck(std::uint64_t seed) {
    SelfCheckResult out;
    auto battery = [&](const std::string& name, const std::function<bool(std::string&)>& fn) {
        std::string detail;
        bool ok = false;
        try {
            ok = fn(detail);
        } catch (const std::exception& e) {
            ok = false;
            detail = e.what();
        }
        out.batteries.emplace_back(name, ok, detail);
        if (!ok) out.all_pass = false;
    };

    std::mt19937_64 rng(seed);
    auto ri = [&](int lo, int hi) {
        std::uniform_int_distribution<int> d(lo, hi);
        return d(rng);
    };

    ContextPtr yc = yangian_ctx();
    ContextPtr tc = torus_ctx();

    auto random_ratfunc = [&](const Context* c) {
        std::vector<SymbolId> syms;
        if (c->instance() == InstanceKind::Additive) {
            syms = {c->gamma(0, 0), c->gamma(1, 0), c->hbar_sym()};
        } else {
            syms = {c->vsym(0, 0), c->vsym(0, 1), c->lambda()};
        }
        Poly num = c->poly_constant(ri(-4, 4));
        for (int t = 0; t < 3; ++t) {
            SymbolId s = syms[static_cast<size_t>(ri(0, static_cast<int>(syms.size()) - 1))];
            num += c->poly_symbol(s, ri(1, 2)).scaled(ri(-3, 3));
        }
        RatFunc r = RatFunc::from_poly(num);
        if (ri(0, 1)) {
            Poly den = c->poly_symbol(syms[0]) + c->poly_constant(ri(1, 5));
            r = r / RatFunc::from_poly(den);
        }
        if (r.is_zero()) r = RatFunc::one(c->table());
        return r;
    };
    auto random_skew = [&](const Context* c, int terms) {
        SkewElement e(c);
        for (int t = 0; t < terms; ++t) {
            ShiftMono m = c->unit_shift();
            for (auto& x : m) x = ri(-1, 1);
            e.add_term(m, random_ratfunc(c));
        }
        return e;
    };

    battery("scalars-field-axioms", [&](std::string& why) {
        for (int t = 0; t < 100; ++t) {
            const Context* c = (t % 2 == 0) ? yc.get() : tc.get();
            RatFunc a = random_ratfunc(c), b = random_ratfunc(c), d = random_ratfunc(c);
            if (!((a + b) + d == a + (b + d))) { why = "add assoc"; return false; }
            if (!(a * (b + d) == a * b + a * d)) { why = "distributivity"; return false; }
            if (!(a * b == b * a)) { why = "mul comm"; return false; }
            if (!(a - a).is_zero()) { why = "additive inverse"; return false; }
            if (!b.is_zero() && !(a / b * b == a)) { why = "division"; return false; }
        }
        return true;
    });

    battery("scalars-eval-homomorphism", [&](std::string& why) {
        const Context* c = yc.get();
        for (int t = 0; t < 40; ++t) {
            RatFunc a = random_ratfunc(c), b = random_ratfunc(c);
            std::vector<Rational> vals(static_cast<size_t>(c->table()->size()), Rational(0));
            for (auto& v : vals) v = Rational(ri(-6, 6), ri(1, 3));
            try {
                Q236 pa = a.eval(vals), pb = b.eval(vals);
                if (!((a * b).eval(vals) == pa * pb)) { why = "product"; return false; }
                if (!((a + b).eval(vals) == pa + pb)) { why = "sum"; return false; }
            } catch (const EvalPole&) {
                --t;  // resample
            }
        }
        return true;
    });

    battery("scalars-canonical-idempotent", [&](std::string& why) {
        const Context* c = yc.get();
        for (int t = 0; t < 40; ++t) {
            RatFunc a = random_ratfunc(c) + random_ratfunc(c);
            RatFunc b = RatFunc::fraction(a.numerator_expanded(), a.denominator_expanded());
            if (!(a == b)) { why = "renormalize changed value"; return false; }
        }
        // adjoined square roots
        RatFunc s2 = RatFunc::symbol(yc->table(), yc->table()->find("s2"));
        if (!(s2 * s2 == RatFunc::constant(yc->table(), 2))) { why = "s2^2 != 2"; return false; }
        return true;
    });

    battery("sigma-automorphism", [&](std::string& why) {
        for (int t = 0; t < 60; ++t) {
            const Context* c = (t % 2 == 0) ? yc.get() : tc.get();
            ShiftMono m = c->unit_shift(), n = c->unit_shift();
            for (auto& x : m) x = ri(-2, 2);
            for (auto& x : n) x = ri(-2, 2);
            RatFunc f = random_ratfunc(c), g2 = random_ratfunc(c);
            if (!(c->sigma(m, f * g2) == c->sigma(m, f) * c->sigma(m, g2))) { why = "product"; return false; }
            if (!(c->sigma(m, f + g2) == c->sigma(m, f) + c->sigma(m, g2))) { why = "sum"; return false; }
            ShiftMono mn = m;
            for (size_t s = 0; s < mn.size(); ++s) mn[s] += n[s];
            if (!(c->sigma(mn, f) == c->sigma(m, c->sigma(n, f)))) { why = "composition"; return false; }
        }
        return true;
    });

    battery("skew-associativity", [&](std::string& why) {
        for (int t = 0; t < 200; ++t) {
            const Context* c = (t % 2 == 0) ? yc.get() : tc.get();
            SkewElement x = random_skew(c, 2), y = random_skew(c, 2), z = random_skew(c, 2);
            if (!((x * y) * z == x * (y * z))) { why = "triple " + std::to_string(t); return false; }
        }
        return true;
    });

    battery("skew-parallel-kernel", [&](std::string& why) {
        for (int t = 0; t < 6; ++t) {
            const Context* c = (t % 2 == 0) ? yc.get() : tc.get();
            SkewElement x = random_skew(c, 12), y = random_skew(c, 12);
            if (!(SkewElement::mul_serial(x, y) == SkewElement::mul_parallel(x, y))) {
                why = "kernel mismatch";
                return false;
            }
        }
        return true;
    });

    battery("delta-geometric-oracle", [&](std::string& why) {
        const Context* c = tc.get();
        SymbolId z = c->spectral("z");
        RatFunc p = c->rat_symbol(c->vsym(0, 0), 2);
        RatFunc f = (c->rat_symbol(z) - p).inverse();
        DeltaSeries d = expansion_difference(f, z, c);
        auto dm = truncated_modes(d, {z}, 6);
        auto plus = rat_modes(f, z, -6, 6, true);
        auto minus = rat_modes(f, z, -6, 6, false);
        for (int t = -6; t <= 6; ++t) {
            RatFunc expect = RatFunc::zero(c->table());
            if (plus.count(t)) expect += plus.at(t);
            if (minus.count(t)) expect -= minus.at(t);
            SkewElement got = dm.count({t}) ? dm.at({t}) : SkewElement::zero(c);
            if (!(got == SkewElement::coeff(c, expect))) {
                why = "mode " + std::to_string(t);
                return false;
            }
        }
        return true;
    });

    battery("partial-fractions-reassembly", [&](std::string& why) {
        const Context* c = tc.get();
        SymbolId z = c->spectral("z");
        RatFunc zr = c->rat_symbol(z);
        RatFunc p1 = c->rat_symbol(c->vsym(0, 0), 2);
        RatFunc p2 = c->rat_symbol(c->vsym(0, 1), 2) * c->q_to(2);
        RatFunc f = (zr * zr + c->rat_symbol(c->vsym(0, 0))) / ((zr - p1) * (zr - p2));
        auto pf = partial_fractions(f, z);
        RatFunc re = RatFunc::zero(c->table());
        for (const auto& [sup, res] : pf.poles)
            re += res / (zr - sup.as_ratfunc(c->table()));
        for (size_t k = 0; k < pf.poly_part.size(); ++k)
            re += pf.poly_part[k] * zr.pow(static_cast<int>(k));
        if (!(re == f)) { why = "reassembly differs"; return false; }
        return true;
    });

    battery("delta-mode-agreement-A1", [&](std::string& why) {
        CartanData ca = cartan_from_type('A', 1);
        RepConfig cfg = make_rep_config(ca, Family::QAffine, {1});
        GeneratorSet g = build_qaffine(make_context(ca, cfg));
        VerifyOptions opt;
        opt.mode = VerifyMode::Modes;
        opt.truncation = 4;
        VerificationReport rep = verify(g, opt);
        if (!rep.all_pass) { why = "modes verification failed"; return false; }
        return true;
    });

    battery("q-binomial-recurrence", [&](std::string& why) {
        const Context* c = tc.get();
        for (int m = 1; m <= 6; ++m) {
            for (int k = 0; k <= m; ++k) {
                RatFunc lhs = q_binomial(c, m, k, 0);
                if (!(lhs == q_binomial(c, m, m - k, 0))) { why = "symmetry"; return false; }
                if (k >= 1 && k <= m - 1) {
                    RatFunc rhs = c->q_power(0, k) * q_binomial(c, m - 1, k, 0) +
                                  c->q_power(0, -(m - k)) * q_binomial(c, m - 1, k - 1, 0);
                    if (!(lhs == rhs)) { why = "recurrence m=" + std::to_string(m); return false; }
                }
            }
        }
        return true;
    });

    battery("mutation-detection", [&](std::string& why) {
        CartanData ca = cartan_from_type('A', 1);
        // uqg, scale-E
        {
            RepConfig cfg = make_rep_config(ca, Family::Uqg, {1}, nullptr,
                                            lattice_from_choice(ca, LatticeChoice::Adjoint));
            GeneratorSet g = build_uqg(make_context(ca, cfg));
            g.set_mutation(MutationKind::ScaleE);
            if (verify(g, VerifyOptions{}).all_pass) { why = "uqg scale-E undetected"; return false; }
        }
        // yangian, drop-R-factor
        {
            RepConfig cfg = make_rep_config(ca, Family::Yangian, {1});
            GeneratorSet g = build_yangian(make_context(ca, cfg));
            g.set_mutation(MutationKind::DropRFactor);
            if (verify(g, VerifyOptions{}).all_pass) { why = "yangian drop-R undetected"; return false; }
        }
        // affine, wrong-shift
        {
            RepConfig cfg = make_rep_config(ca, Family::QAffine, {1});
            GeneratorSet g = build_qaffine(make_context(ca, cfg));
            g.set_mutation(MutationKind::WrongShift);
            if (verify(g, VerifyOptions{}).all_pass) { why = "affine wrong-shift undetected"; return false; }
        }
        return true;
    });

    battery("repr-homomorphism", [&](std::string& why) {
        const Context* c = yc.get();
        for (int t = 0; t < 60; ++t) {
            SkewElement x = random_skew(c, 2), y = random_skew(c, 2);
            RatFunc f = random_ratfunc(c);
            if (!(apply_exact(x * y, f) == apply_exact(x, apply_exact(y, f)))) {
                why = "module property";
                return false;
            }
        }
        return true;
    });

    battery("verify-determinism", [&](std::string& why) {
        CartanData ca = cartan_from_type('A', 1);
        RepConfig cfg = make_rep_config(ca, Family::Uqg, {1}, nullptr,
                                        lattice_from_choice(ca, LatticeChoice::Adjoint));
        GeneratorSet g = build_uqg(make_context(ca, cfg));
        VerifyOptions opt;
        opt.mode = VerifyMode::Randomized;
        opt.trials = 2;
        opt.seed = seed;
        VerificationReport a = verify(g, opt), b = verify(g, opt);
        if (a.instances.size() != b.instances.size()) { why = "instance count"; return false; }
        for (size_t k = 0; k < a.outcomes.size(); ++k)
            if (a.outcomes[k].pass != b.outcomes[k].pass) { why = "verdict differs"; return false; }
        return true;
    });

    if (std::getenv("QTORUS_SELFCHECK_INJECT") != nullptr) {
        battery("injected-mutation", [&](std::string& why) {
            why = "deliberate failure hook (QTORUS_SELFCHECK_INJECT)";
            return false;
        });
    }

    return out;
}

}  // namespace qtorus
