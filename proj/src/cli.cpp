#include "qtorus/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "qtorus/selfcheck.hpp"

namespace qtorus {

GeneratorSet build_generators(const ResolvedConfig& rcfg) {
    ContextPtr ctx = make_context(rcfg.cartan, rcfg.rep);
    GeneratorSet g;
    switch (rcfg.rep.family) {
        case Family::Yangian:
        case Family::YangianBorel:
            g = build_yangian(ctx);
            break;
        case Family::QAffine:
            g = build_qaffine(ctx);
            break;
        case Family::Uqg:
            g = build_uqg(ctx);
            break;
    }
    g.set_mutation(rcfg.mutation);
    return g;
}

namespace {

void emit_report(const RunConfig& rc, const std::string& doc) {
    if (rc.out.empty()) {
        std::cout << doc;
    } else {
        std::ofstream f(rc.out);
        if (!f) throw ConfigError("cannot open output file " + rc.out);
        f << doc;
    }
}

}  // namespace

int cmd_verify(const RunConfig& rc) {
    ResolvedConfig rcfg;
    try {
        rcfg = resolve_config(rc);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    try {
        GeneratorSet g = build_generators(rcfg);
        std::cerr << "qtorus verify: family=" << family_name(g.family())
                  << " mode=" << verify_mode_name(rcfg.options.mode)
                  << " instances=" << instances_for(g).size() << "\n";
        VerificationReport rep = verify(g, rcfg.options);
        if (rc.verbose > 0) {
            for (size_t k = 0; k < rep.instances.size(); ++k) {
                const auto& ri = rep.instances[k];
                const auto& o = rep.outcomes[k];
                std::cerr << "  " << schema_name(ri.schema) << "(" << ri.i + 1 << "," << ri.j + 1
                          << ") " << (o.skipped ? "SKIP" : (o.pass ? "pass" : "FAIL"));
                if (!o.residual.empty() && rc.verbose > 1) std::cerr << "  residual: " << o.residual;
                std::cerr << "\n";
            }
        }
        emit_report(rc, report_document(rc, rep));
        std::cerr << "qtorus verify: " << rep.passed() << "/" << rep.instances.size()
                  << " relation instances pass\n";
        return rep.all_pass ? 0 : 1;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

int cmd_print_generators(const RunConfig& rc) {
    ResolvedConfig rcfg;
    try {
        rcfg = resolve_config(rc);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    try {
        GeneratorSet g = build_generators(rcfg);
        const Context* c = g.ctx();
        nlohmann::ordered_json doc;
        doc["schema_version"] = 1;
        doc["family"] = family_name(g.family());
        std::ostringstream text;
        int rank = c->rank();
        if (g.family() == Family::Yangian || g.family() == Family::YangianBorel) {
            SymbolId u = c->spectral("u");
            for (int i = 0; i < rank; ++i) {
                std::string hs = g.yang_H(i, u).str();
                std::string es = g.yang_E(i, u).str();
                std::string fs;
                if (g.family() == Family::Yangian) fs = g.yang_F(i, u).str();
                text << "H_" << i + 1 << "(u) = " << hs << "\n";
                text << "E_" << i + 1 << "(u) = " << es << "\n";
                if (!fs.empty()) text << "F_" << i + 1 << "(u) = " << fs << "\n";
                doc["generators"]["H"].push_back(hs);
                doc["generators"]["E"].push_back(es);
                if (!fs.empty()) doc["generators"]["F"].push_back(fs);
            }
        } else if (g.family() == Family::QAffine) {
            SymbolId z = c->spectral("z");
            for (int i = 0; i < rank; ++i) {
                std::string ks = g.aff_K(i, z).str();
                std::string es = g.aff_E(i, z).str();
                std::string fs = g.aff_F(i, z).str();
                text << "K_" << i + 1 << "(z) = " << ks << "\n";
                text << "E_" << i + 1 << "(z) = " << es << "\n";
                text << "F_" << i + 1 << "(z) = " << fs << "\n";
                text << "K_" << i + 1 << " (constant term) = " << g.aff_K_closed(i).str() << "\n";
                doc["generators"]["K"].push_back(ks);
                doc["generators"]["E"].push_back(es);
                doc["generators"]["F"].push_back(fs);
            }
        } else {
            for (int i = 0; i < rank; ++i) {
                std::string kb = g.uqg_Kbeta(i, 1).str();
                std::string ks = g.uqg_K(i, 1).str();
                std::string es = g.uqg_E(i).str();
                std::string fs = g.uqg_F(i).str();
                text << "K_beta_" << i + 1 << " = " << kb << "\n";
                text << "K_" << i + 1 << " = " << ks << "\n";
                text << "E_" << i + 1 << " = " << es << "\n";
                text << "F_" << i + 1 << " = " << fs << "\n";
                doc["generators"]["Kbeta"].push_back(kb);
                doc["generators"]["K"].push_back(ks);
                doc["generators"]["E"].push_back(es);
                doc["generators"]["F"].push_back(fs);
            }
        }
        std::cout << text.str();
        if (!rc.out.empty()) {
            std::ofstream f(rc.out);
            if (!f) throw ConfigError("cannot open output file " + rc.out);
            f << doc.dump(2) << "\n";
        }
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

int cmd_selfcheck(std::uint64_t seed, bool verbose) {
    SelfCheckResult r = run_selfcheck(seed);
    for (const auto& [name, ok, detail] : r.batteries) {
        std::cout << (ok ? "ok   " : "FAIL ") << name << "\n";
        if (!ok && verbose && !detail.empty()) std::cout << "     " << detail << "\n";
    }
    std::cout << (r.all_pass ? "selfcheck: all batteries green" : "selfcheck: FAILURES") << "\n";
    return r.all_pass ? 0 : 1;
}

}  // namespace qtorus
