#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qtorus/cli.hpp"

namespace {

void add_config_flags(CLI::App* app, qtorus::RunConfig& rc, std::string& config_file,
                      std::string& matrix_str, std::string& m_str, std::string& nu_str,
                      std::string& rsplit_str, std::string& lplus_str, std::string& lminus_str) {
    app->add_option("--config", config_file, "JSON config file (other flags override)");
    app->add_option("--family", rc.family, "yangian | yangian-borel | qaffine | uqg");
    app->add_option("--type", rc.type, "Cartan series letter A..G");
    app->add_option("--rank", rc.rank, "rank of the series");
    app->add_option("--matrix", matrix_str, "explicit Cartan matrix, rows ; separated: \"2,-1;-1,2\"");
    app->add_option("--m", m_str, "multiplicities, comma separated");
    app->add_option("--nu", nu_str, "\"symbolic\" or rows of rationals \"1,2;3\"");
    app->add_option("--rsplit", rsplit_str, "R^(+) factor indices per node, e.g. \"1,2;\" (rest in R^(-))");
    app->add_option("--lplus", lplus_str, "Borel l+ per node, comma separated");
    app->add_option("--lminus", lminus_str, "Borel l- per node, comma separated");
    app->add_option("--lattice", rc.lattice, "adjoint | simply-connected (uqg)");
    app->add_option("--mode", rc.mode, "symbolic | modes | random");
    app->add_option("--truncation", rc.truncation, "mode truncation N");
    app->add_option("--seed", rc.seed, "random seed");
    app->add_option("--trials", rc.trials, "random trials");
    app->add_option("--out", rc.out, "report output path (default stdout)");
    app->add_flag("--timings", rc.timings, "include wall times in the report");
    app->add_option("--mutation", rc.mutation,
                    "mutation harness: none | scale-E | drop-R-factor | wrong-shift | sign-F");
    app->add_flag_function("-v,--verbose", [&rc](std::int64_t n) { rc.verbose = static_cast<int>(n); },
                           "per-instance progress on stderr");
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(std::stoi(tok));
    }
    return out;
}

std::vector<std::vector<int>> parse_int_rows(const std::string& s) {
    std::vector<std::vector<int>> out;
    std::stringstream ss(s);
    std::string row;
    while (std::getline(ss, row, ';')) out.push_back(parse_int_list(row));
    return out;
}

bool apply_string_flags(qtorus::RunConfig& rc, const std::string& config_file,
                        const std::string& matrix_str, const std::string& m_str,
                        const std::string& nu_str, const std::string& rsplit_str,
                        const std::string& lplus_str, const std::string& lminus_str) {
    if (!config_file.empty()) {
        std::ifstream f(config_file);
        if (!f) {
            std::cerr << "config error: cannot read " << config_file << "\n";
            return false;
        }
        std::stringstream buf;
        buf << f.rdbuf();
        try {
            qtorus::RunConfig base = qtorus::RunConfig::from_json_string(buf.str());
            // file provides defaults; flags already parsed into rc override below
            std::swap(rc, base);
            rc.out = base.out.empty() ? rc.out : base.out;
            // re-apply simple overrides
            if (!base.family.empty() && base.family != "yangian") rc.family = base.family;
            if (!base.type.empty()) rc.type = base.type;
            if (base.rank) rc.rank = base.rank;
            if (!base.m.empty()) rc.m = base.m;
            if (base.mode != "symbolic") rc.mode = base.mode;
        } catch (const qtorus::Error& e) {
            std::cerr << "config error: " << e.what() << "\n";
            return false;
        }
    }
    try {
        if (!matrix_str.empty()) rc.matrix = parse_int_rows(matrix_str);
        if (!m_str.empty()) rc.m = parse_int_list(m_str);
        if (!lplus_str.empty()) rc.lplus = parse_int_list(lplus_str);
        if (!lminus_str.empty()) rc.lminus = parse_int_list(lminus_str);
        if (!rsplit_str.empty()) rc.rsplit = parse_int_rows(rsplit_str);
        if (!nu_str.empty() && nu_str != "symbolic") {
            rc.nu_values.clear();
            std::stringstream ss(nu_str);
            std::string row;
            while (std::getline(ss, row, ';')) {
                std::vector<qtorus::Rational> r;
                std::stringstream rs(row);
                std::string tok;
                while (std::getline(rs, tok, ','))
                    if (!tok.empty()) {
                        qtorus::Rational q(tok);
                        q.canonicalize();
                        r.push_back(q);
                    }
                rc.nu_values.push_back(std::move(r));
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return false;
    }
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qtorus: exact verification of quantum-torus realizations of quantum groups"};
    app.require_subcommand(1);

    qtorus::RunConfig rc_verify, rc_print;
    std::string cfg_v, mat_v, m_v, nu_v, rs_v, lp_v, lm_v;
    std::string cfg_p, mat_p, m_p, nu_p, rs_p, lp_p, lm_p;
    std::uint64_t selfcheck_seed = 1;
    bool selfcheck_verbose = false;

    CLI::App* verify = app.add_subcommand("verify", "build generators and verify every defining relation");
    add_config_flags(verify, rc_verify, cfg_v, mat_v, m_v, nu_v, rs_v, lp_v, lm_v);

    CLI::App* print = app.add_subcommand("print-generators", "print the generator family");
    add_config_flags(print, rc_print, cfg_p, mat_p, m_p, nu_p, rs_p, lp_p, lm_p);

    CLI::App* selfcheck = app.add_subcommand("selfcheck", "run the internal invariant suite");
    selfcheck->add_option("--seed", selfcheck_seed, "random seed");
    selfcheck->add_flag("--verbose", selfcheck_verbose, "details on failures");

    CLI11_PARSE(app, argc, argv);

    if (verify->parsed()) {
        if (!apply_string_flags(rc_verify, cfg_v, mat_v, m_v, nu_v, rs_v, lp_v, lm_v)) return 2;
        return qtorus::cmd_verify(rc_verify);
    }
    if (print->parsed()) {
        if (!apply_string_flags(rc_print, cfg_p, mat_p, m_p, nu_p, rs_p, lp_p, lm_p)) return 2;
        return qtorus::cmd_print_generators(rc_print);
    }
    if (selfcheck->parsed()) return qtorus::cmd_selfcheck(selfcheck_seed, selfcheck_verbose);
    return 2;
}
