#include "qtorus/context.hpp"

#include <algorithm>

#include "qtorus/errors.hpp"

namespace qtorus {

namespace {

std::string idx_name(const std::string& base, int i, int k) {
    return base + "(" + std::to_string(i + 1) + "," + std::to_string(k) + ")";
}

}  // namespace

Context::Context(CartanData cartan, RepConfig cfg)
    : cartan_(std::move(cartan)), cfg_(std::move(cfg)) {
    bool additive = cfg_.family == Family::Yangian || cfg_.family == Family::YangianBorel;
    instance_ = additive ? InstanceKind::Additive : InstanceKind::Multiplicative;
    int rank = cartan_.rank;
    if (static_cast<int>(cfg_.m.size()) != rank) throw ConfigMismatch("m size != rank");

    auto declare_indexed = [&](std::vector<std::vector<SymbolId>>& out, const std::string& base,
                               SymbolKind kind, const std::vector<int>& counts, int first_index) {
        out.assign(static_cast<size_t>(rank), {});
        for (int i = 0; i < rank; ++i) {
            for (int k = 0; k < counts[static_cast<size_t>(i)]; ++k) {
                SymbolInfo info;
                info.name = idx_name(base, i, k + first_index);
                info.kind = kind;
                info.node = i + 1;
                info.index = k + first_index;
                out[static_cast<size_t>(i)].push_back(table_.declare(info));
            }
        }
    };

    if (additive) {
        declare_indexed(gamma_, "gamma", SymbolKind::Gamma, cfg_.m, 1);
        if (!cfg_.values.hbar) h_ = table_.declare({"h", SymbolKind::Hbar, 0, -1, -1});
        if (cfg_.family == Family::Yangian) {
            if (cfg_.values.nu.empty()) declare_indexed(nu_, "nu", SymbolKind::Nu, cfg_.l, 1);
        } else {
            if (cfg_.values.nu_plus.empty()) declare_indexed(nplus_, "nu+", SymbolKind::NuPlus, cfg_.lplus, 1);
            if (cfg_.values.nu_minus.empty()) declare_indexed(nminus_, "nu-", SymbolKind::NuMinus, cfg_.lminus, 1);
        }
        bool need2 = false, need3 = false;
        for (int d : cartan_.d) {
            if (d == 2) need2 = true;
            if (d == 3) need3 = true;
            if (d != 1 && d != 2 && d != 3) throw ConfigMismatch("symmetrizer outside {1,2,3}");
        }
        if (need2) s2_ = table_.declare({"s2", SymbolKind::SqrtD, 2, -1, -1});
        if (need3) s3_ = table_.declare({"s3", SymbolKind::SqrtD, 3, -1, -1});
    } else {
        declare_indexed(v_, "v", SymbolKind::V, cfg_.m, 1);
        if (cfg_.values.w.empty()) declare_indexed(w_, "w", SymbolKind::W, cfg_.l, 1);
        if (!cfg_.values.lambda) lambda_ = table_.declare({"lam", SymbolKind::Lambda, 0, -1, -1});
    }

    // Spectral slots: two pair variables plus enough Serre variables for the
    // largest 1 - a_ij arising in this Cartan matrix.
    int serre_max = 1;
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j)
            if (i != j) serre_max = std::max(serre_max, 1 - cartan_.aij(i, j));
    std::vector<std::string> spec_names =
        additive ? std::vector<std::string>{"u", "v"} : std::vector<std::string>{"z", "w"};
    for (int t = 1; t <= serre_max; ++t)
        spec_names.push_back((additive ? "u" : "z") + std::to_string(t));
    for (const auto& n : spec_names)
        spectral_.push_back(table_.declare({n, SymbolKind::Spectral, 0, -1, -1}));

    table_.freeze();

    slot_of_.assign(static_cast<size_t>(rank), {});
    for (int i = 0; i < rank; ++i) {
        for (int k = 0; k < cfg_.m[static_cast<size_t>(i)]; ++k) {
            slot_of_[static_cast<size_t>(i)].push_back(static_cast<int>(slots_.size()));
            slots_.emplace_back(i, k);
        }
    }
}

SymbolId Context::spectral(const std::string& name) const {
    SymbolId id = table_.find(name);
    if (id < 0 || table_.kind(id) != SymbolKind::Spectral)
        throw Error("unknown spectral symbol " + name);
    return id;
}

RatFunc Context::hbar() const {
    if (cfg_.values.hbar) return rat_constant(*cfg_.values.hbar);
    return rat_symbol(h_);
}

RatFunc Context::nu(int i, int s) const {
    if (!cfg_.values.nu.empty())
        return rat_constant(cfg_.values.nu[static_cast<size_t>(i)][static_cast<size_t>(s - 1)]);
    return rat_symbol(nu_[static_cast<size_t>(i)][static_cast<size_t>(s - 1)]);
}

RatFunc Context::nu_pm(int i, int s, bool plus) const {
    const auto& vals = plus ? cfg_.values.nu_plus : cfg_.values.nu_minus;
    if (!vals.empty()) return rat_constant(vals[static_cast<size_t>(i)][static_cast<size_t>(s - 1)]);
    const auto& ids = plus ? nplus_ : nminus_;
    return rat_symbol(ids[static_cast<size_t>(i)][static_cast<size_t>(s - 1)]);
}

RatFunc Context::wparam(int i, int s) const { return wparam_pow(i, s, 1); }

RatFunc Context::wparam_pow(int i, int s, int e) const {
    if (!cfg_.values.w.empty())
        return rat_constant(rat_pow(cfg_.values.w[static_cast<size_t>(i)][static_cast<size_t>(s - 1)], e));
    return rat_symbol(w_[static_cast<size_t>(i)][static_cast<size_t>(s - 1)], e);
}

RatFunc Context::q_to(const Rational& e) const {
    Rational le = e * 2;  // lambda exponent
    if (le.get_den() != 1) throw NonIntegerExponent("q power " + e.get_str());
    long k = le.get_num().get_si();
    if (cfg_.values.lambda) return rat_constant(rat_pow(*cfg_.values.lambda, k));
    return rat_symbol(lambda_, static_cast<int>(k));
}

RatFunc Context::q_power(int i, const Rational& e) const { return q_to(e * cartan_.di(i)); }

RatFunc Context::d_inv_sqrt(int i) const {
    int d = cartan_.di(i);
    if (d == 1) return rat_constant(1);
    SymbolId s = (d == 2) ? s2_ : s3_;
    // 1/sqrt(d) = s_d / d
    return rat_symbol(s).scaled(Rational(1, d));
}

bool Context::sigma_moves(SymbolId id) const {
    SymbolKind k = table_.kind(id);
    return instance_ == InstanceKind::Additive ? k == SymbolKind::Gamma : k == SymbolKind::V;
}

RatFunc Context::sigma(const ShiftMono& m, const RatFunc& f) const {
    RatFunc r = f;
    for (size_t s = 0; s < m.size(); ++s) {
        if (m[s] == 0) continue;
        auto [i, k] = slots_[s];
        if (instance_ == InstanceKind::Additive) {
            SymbolId g = gamma_[static_cast<size_t>(i)][static_cast<size_t>(k)];
            if (!r.depends_on(g)) continue;
            // gamma -> gamma + (m * d_i) * hbar
            Poly shift = poly_symbol(g) +
                         (hbar().is_constant()
                              ? poly_constant(hbar().unit() * cartan_.di(i) * m[s])
                              : poly_symbol(h_).scaled(Rational(cartan_.di(i)) * m[s]));
            r = r.subst_poly(g, shift);
        } else {
            SymbolId vid = v_[static_cast<size_t>(i)][static_cast<size_t>(k)];
            if (!r.depends_on(vid)) continue;
            // v -> q_i^m v: lambda exponent 2 d_i m
            long le = 2L * cartan_.di(i) * m[s];
            if (cfg_.values.lambda) {
                r = r.scale_symbol(vid, rat_pow(*cfg_.values.lambda, le),
                                   Monomial(static_cast<size_t>(table_.size()), 0));
            } else {
                Monomial scale(static_cast<size_t>(table_.size()), 0);
                scale[static_cast<size_t>(lambda_)] = static_cast<std::int32_t>(le);
                r = r.scale_symbol(vid, Rational(1), scale);
            }
        }
    }
    return r;
}

std::string Context::shift_name(int s) const {
    auto [i, k] = slots_[static_cast<size_t>(s)];
    return idx_name(instance_ == InstanceKind::Additive ? "b" : "u", i, k + 1);
}

ContextPtr make_context(CartanData cartan, RepConfig cfg) {
    return std::make_shared<Context>(std::move(cartan), std::move(cfg));
}

}  // namespace qtorus
