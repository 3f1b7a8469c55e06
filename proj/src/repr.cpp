#include "qtorus/repr.hpp"

#include <cmath>
#include <random>

namespace qtorus {

RatFunc apply_exact(const SkewElement& x, const RatFunc& f) {
    const Context* c = x.ctx();
    if (c->instance() != InstanceKind::Additive)
        throw MixedInstance("apply_exact needs the additive instance");
    RatFunc acc = RatFunc::zero(f.table());
    for (const auto& [m, coeff] : x.terms()) acc += coeff * c->sigma(m, f);
    return acc;
}

namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

NumFn apply_numeric(const SkewElement& x, NumFn f, const NumericParams& p) {
    const Context* c = x.ctx();
    bool additive = c->instance() == InstanceKind::Additive;
    // snapshot terms; the handle owns its data
    std::vector<std::pair<ShiftMono, RatFunc>> terms(x.terms().begin(), x.terms().end());
    return [c, additive, p, f, terms](const std::vector<std::complex<double>>& gam) {
        if (static_cast<int>(gam.size()) != c->slot_count())
            throw Error("apply_numeric: gamma vector size mismatch");
        const SymbolTable* tab = c->table();
        std::vector<std::complex<double>> vals(static_cast<size_t>(tab->size()), {0.0, 0.0});
        for (SymbolId id = 0; id < tab->size(); ++id) {
            const SymbolInfo& si = tab->info(id);
            switch (si.kind) {
                case SymbolKind::Gamma:
                    vals[static_cast<size_t>(id)] = gam[static_cast<size_t>(c->slot(si.node - 1, si.index - 1))];
                    break;
                case SymbolKind::V:
                    vals[static_cast<size_t>(id)] =
                        std::exp(2.0 * kPi * gam[static_cast<size_t>(c->slot(si.node - 1, si.index - 1))] / p.omega2);
                    break;
                case SymbolKind::W:
                    vals[static_cast<size_t>(id)] =
                        std::exp(2.0 * kPi * p.nu.at(static_cast<size_t>(si.node - 1)).at(static_cast<size_t>(si.index - 1)) /
                                 p.omega2);
                    break;
                case SymbolKind::Nu: case SymbolKind::NuPlus: case SymbolKind::NuMinus:
                    vals[static_cast<size_t>(id)] =
                        p.nu.at(static_cast<size_t>(si.node - 1)).at(static_cast<size_t>(si.index - 1));
                    break;
                case SymbolKind::Lambda:
                    // q^(1/2) = exp(pi i omega1 / omega2)
                    vals[static_cast<size_t>(id)] =
                        std::exp(std::complex<double>(0.0, 1.0) * kPi * p.omega1 / p.omega2);
                    break;
                case SymbolKind::Hbar:
                    vals[static_cast<size_t>(id)] = p.hval;
                    break;
                default:
                    break;  // spectral unused, sqrt handled inside eval_complex
            }
        }
        std::complex<double> acc(0.0, 0.0);
        for (const auto& [m, coeff] : terms) {
            std::complex<double> cval = coeff.eval_complex(vals, p.pole_guard);
            std::vector<std::complex<double>> shifted = gam;
            for (size_t s = 0; s < m.size(); ++s) {
                if (m[s] == 0) continue;
                auto [i, k] = c->slot_nodes(static_cast<int>(s));
                std::complex<double> step =
                    additive ? p.hval * double(c->cartan().di(i))
                             : std::complex<double>(0.0, 1.0) * p.omega1 * double(c->cartan().di(i));
                shifted[s] += step * double(m[s]);
            }
            acc += cval * f(shifted);
        }
        return acc;
    };
}

double uqg_numeric_residual_max(const GeneratorSet& g, std::uint64_t seed, int points) {
    const Context* c = g.ctx();
    if (g.family() != Family::Uqg) throw ConfigMismatch("numeric residual needs a uqg set");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    auto rc = [&]() { return std::complex<double>(uni(rng), uni(rng)); };

    double worst = 0.0;
    int rank = c->rank();
    int retries = 0;
    for (int pt = 0; pt < points; ++pt) {
        NumericParams p;
        p.omega1 = std::complex<double>(0.3, 0.0) + 0.2 * rc();
        p.omega2 = std::complex<double>(1.1, 0.0) + 0.2 * rc();
        p.nu.assign(static_cast<size_t>(rank), {});
        for (int i = 0; i < rank; ++i)
            for (int s = 0; s < c->cfg().li(i); ++s)
                p.nu[static_cast<size_t>(i)].push_back(rc());
        std::vector<std::complex<double>> gam;
        for (int s = 0; s < c->slot_count(); ++s) gam.push_back(0.5 * rc());
        std::complex<double> tc = rc();
        NumFn f = [tc](const std::vector<std::complex<double>>& gv) {
            std::complex<double> acc(1.0, 0.0);
            for (const auto& gk : gv) acc *= (gk - tc - std::complex<double>(2.0, 0.0));
            return 1.0 / acc;
        };
        for (int i = 0; i < rank; ++i) {
            SkewElement E = g.uqg_E(i), F = g.uqg_F(i);
            RatFunc pref = (c->q_power(i, 1) - c->q_power(i, -1)).inverse();
            SkewElement Kdiff = (g.uqg_K(i, 1) - g.uqg_K(i, -1)).scaled(pref);
            try {
                std::complex<double> ef = apply_numeric(E, apply_numeric(F, f, p), p)(gam);
                std::complex<double> fe = apply_numeric(F, apply_numeric(E, f, p), p)(gam);
                std::complex<double> kk = apply_numeric(Kdiff, f, p)(gam);
                double scale = std::abs(ef) + std::abs(fe) + std::abs(kk) + 1e-30;
                worst = std::max(worst, std::abs(ef - fe - kk) / scale);
            } catch (const NumericPole&) {
                if (++retries > 64) throw NumericPole("too many degenerate sample points");
                --pt;
                break;
            }
        }
    }
    return worst;
}

}  // namespace qtorus
