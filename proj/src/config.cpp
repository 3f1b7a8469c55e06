#include "qtorus/config.hpp"

#include <set>

#include <json.hpp>

namespace qtorus {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json config_json(const RunConfig& rc) {
    ordered_json j;
    j["schema_version"] = 1;
    j["family"] = rc.family;
    if (!rc.matrix.empty()) {
        j["cartan"]["matrix"] = rc.matrix;
    } else {
        j["cartan"]["type"] = rc.type;
        j["cartan"]["rank"] = rc.rank;
    }
    j["m"] = rc.m;
    if (!rc.nu_values.empty()) {
        ordered_json nv = ordered_json::array();
        for (const auto& row : rc.nu_values) {
            ordered_json r = ordered_json::array();
            for (const auto& q : row) r.push_back(q.get_str());
            nv.push_back(r);
        }
        j["nu"] = nv;
    } else {
        j["nu"] = "symbolic";
    }
    if (!rc.lplus.empty()) j["lplus"] = rc.lplus;
    if (!rc.lminus.empty()) j["lminus"] = rc.lminus;
    if (rc.family == "uqg") {
        if (!rc.lattice_n.empty())
            j["lattice"]["n"] = rc.lattice_n;
        else
            j["lattice"] = rc.lattice;
    }
    if (!rc.rsplit.empty()) j["rsplit"] = rc.rsplit;
    j["mode"] = rc.mode;
    j["truncation"] = rc.truncation;
    j["seed"] = rc.seed;
    j["trials"] = rc.trials;
    if (rc.mutation != "none") j["mutation"] = rc.mutation;
    return j;
}

Rational parse_rational(const std::string& s) {
    try {
        Rational r(s);
        r.canonicalize();
        return r;
    } catch (const std::exception&) {
        throw ConfigError("bad rational literal '" + s + "'");
    }
}

}  // namespace

std::string RunConfig::to_json_string() const { return config_json(*this).dump(2); }

RunConfig RunConfig::from_json_string(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config parse: ") + e.what());
    }
    RunConfig rc;
    try {
        rc.family = j.at("family").get<std::string>();
        const auto& ca = j.at("cartan");
        if (ca.contains("matrix"))
            rc.matrix = ca.at("matrix").get<std::vector<std::vector<int>>>();
        else {
            rc.type = ca.at("type").get<std::string>();
            rc.rank = ca.at("rank").get<int>();
        }
        rc.m = j.at("m").get<std::vector<int>>();
        if (j.contains("nu") && j.at("nu").is_array()) {
            for (const auto& row : j.at("nu")) {
                std::vector<Rational> r;
                for (const auto& v : row)
                    r.push_back(v.is_string() ? parse_rational(v.get<std::string>())
                                              : Rational(v.get<long>()));
                rc.nu_values.push_back(std::move(r));
            }
        }
        if (j.contains("lplus")) rc.lplus = j.at("lplus").get<std::vector<int>>();
        if (j.contains("lminus")) rc.lminus = j.at("lminus").get<std::vector<int>>();
        if (j.contains("lattice")) {
            if (j.at("lattice").is_object())
                rc.lattice_n = j.at("lattice").at("n").get<std::vector<std::vector<int>>>();
            else
                rc.lattice = j.at("lattice").get<std::string>();
        }
        if (j.contains("rsplit")) rc.rsplit = j.at("rsplit").get<std::vector<std::vector<int>>>();
        if (j.contains("mode")) rc.mode = j.at("mode").get<std::string>();
        if (j.contains("truncation")) rc.truncation = j.at("truncation").get<int>();
        if (j.contains("seed")) rc.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("trials")) rc.trials = j.at("trials").get<int>();
        if (j.contains("mutation")) rc.mutation = j.at("mutation").get<std::string>();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config fields: ") + e.what());
    }
    return rc;
}

ResolvedConfig resolve_config(const RunConfig& rc) {
    ResolvedConfig out;
    auto fam = family_from_name(rc.family);
    if (!fam) throw ConfigError("unknown family '" + rc.family + "'");

    try {
        if (!rc.matrix.empty())
            out.cartan = cartan_from_matrix(rc.matrix);
        else if (!rc.type.empty() && rc.rank >= 1)
            out.cartan = cartan_from_type(rc.type.at(0), rc.rank);
        else
            throw ConfigError("need --type/--rank or --matrix");
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }

    if (rc.m.empty()) throw ConfigError("missing multiplicities --m");

    std::optional<LatticeData> lat;
    if (*fam == Family::Uqg) {
        try {
            if (!rc.lattice_n.empty())
                lat = lattice_from_choice(out.cartan, LatticeChoice::Explicit, &rc.lattice_n);
            else if (rc.lattice == "adjoint")
                lat = lattice_from_choice(out.cartan, LatticeChoice::Adjoint);
            else if (rc.lattice == "simply-connected")
                lat = lattice_from_choice(out.cartan, LatticeChoice::SimplyConnected);
            else
                throw ConfigError("unknown lattice '" + rc.lattice + "'");
        } catch (const ConfigError&) {
            throw;
        } catch (const Error& e) {
            throw ConfigError(e.what());
        }
    }

    std::vector<std::set<int>> rsplit;
    const std::vector<std::set<int>>* rsplit_ptr = nullptr;
    if (!rc.rsplit.empty()) {
        for (const auto& row : rc.rsplit) rsplit.emplace_back(row.begin(), row.end());
        rsplit.resize(static_cast<size_t>(out.cartan.rank));
        rsplit_ptr = &rsplit;
    }

    ParamValues vals;
    if (!rc.nu_values.empty()) {
        if (*fam == Family::YangianBorel) throw ConfigError("explicit nu for borel not supported; use symbolic");
        if (*fam == Family::Yangian)
            vals.nu = rc.nu_values;
        else
            vals.w = rc.nu_values;  // torus families carry the parameters as w
    }

    try {
        out.rep = make_rep_config(out.cartan, *fam, rc.m, rsplit_ptr, lat,
                                  rc.lplus.empty() ? nullptr : &rc.lplus,
                                  rc.lminus.empty() ? nullptr : &rc.lminus, std::move(vals));
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }

    if (rc.mode == "symbolic")
        out.options.mode = VerifyMode::Symbolic;
    else if (rc.mode == "modes")
        out.options.mode = VerifyMode::Modes;
    else if (rc.mode == "random")
        out.options.mode = VerifyMode::Randomized;
    else
        throw ConfigError("unknown mode '" + rc.mode + "'");
    if (rc.truncation < 1) throw ConfigError("truncation must be >= 1");
    out.options.truncation = rc.truncation;
    out.options.seed = rc.seed;
    if (rc.trials < 1) throw ConfigError("trials must be >= 1");
    out.options.trials = rc.trials;

    if (rc.mutation == "none")
        out.mutation = MutationKind::None;
    else if (rc.mutation == "scale-E")
        out.mutation = MutationKind::ScaleE;
    else if (rc.mutation == "drop-R-factor")
        out.mutation = MutationKind::DropRFactor;
    else if (rc.mutation == "wrong-shift")
        out.mutation = MutationKind::WrongShift;
    else if (rc.mutation == "sign-F")
        out.mutation = MutationKind::SignF;
    else
        throw ConfigError("unknown mutation '" + rc.mutation + "'");
    return out;
}

std::string report_document(const RunConfig& rc, const VerificationReport& rep) {
    ordered_json j;
    j["schema_version"] = 1;
    j["tool"] = "qtorus";
    j["version"] = "0.1.0";
    j["config"] = config_json(rc);
    j["mode"] = rep.mode;
    if (rep.mutation != MutationKind::None) j["mutation"] = mutation_name(rep.mutation);
    ordered_json arr = ordered_json::array();
    for (size_t k = 0; k < rep.instances.size(); ++k) {
        const auto& ri = rep.instances[k];
        const auto& o = rep.outcomes[k];
        ordered_json e;
        e["schema"] = schema_name(ri.schema);
        e["i"] = ri.i + 1;
        e["j"] = ri.j + 1;
        if (ri.serre_m > 0) e["serre_order"] = ri.serre_m;
        e["status"] = o.skipped ? "skipped" : (o.pass ? "pass" : "fail");
        if (!o.residual.empty()) e["residual"] = o.residual;
        if (!o.note.empty()) e["note"] = o.note;
        if (rc.timings) e["wall_ms"] = o.wall_ms;
        arr.push_back(std::move(e));
    }
    j["instances"] = std::move(arr);
    j["totals"]["instances"] = rep.instances.size();
    j["totals"]["passed"] = rep.passed();
    j["totals"]["failed"] = rep.failed();
    j["all_pass"] = rep.all_pass;
    if (rc.timings) j["total_ms"] = rep.total_ms;
    return j.dump(2) + "\n";
}

}  // namespace qtorus
