#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "nilprog/occupancy.hpp"
#include "nilprog/suite.hpp"

using namespace nilprog;

namespace {

TorusSystem system_by_name(const std::string& name) {
    using namespace torus_systems;
    if (name == "T_Z") return rotation();
    if (name == "T") return example41_T();
    if (name == "S_beta") return s_beta();
    if (name == "S_2a") return s_2a();
    if (name == "U_beta") return u_beta();
    if (name == "R_beta") return r_beta();
    if (name == "R_2a") return r_2a();
    if (name == "heisenberg") return heisenberg();
    if (name == "heisenberg_factor") return heisenberg_factor();
    if (name == "SxS2") return product(s_beta(), iterate_power(s_beta(), 2));
    if (name == "TxT2") return product(example41_T(), iterate_power(example41_T(), 2));
    throw ConfigInvalid("unknown system '" + name + "'");
}

int cmd_run(const std::string& config_path, const std::string& out_path, std::uint64_t seed,
            bool seed_given, const std::string& suite, bool suite_given) {
    SuiteConfig cfg;
    if (!config_path.empty()) cfg = SuiteConfig::parse_file(config_path);
    if (suite_given) cfg.suite = suite;
    if (seed_given) cfg.seed = seed;
    cfg.validate();
    auto report = run_suite(cfg);
    auto j = report.to_json();
    std::string dest = !out_path.empty() ? out_path : cfg.out;
    if (!dest.empty()) {
        std::ofstream out(dest);
        if (!out) throw ConfigInvalid("cannot write report to " + dest);
        out << j.dump(2) << "\n";
    }
    for (const auto& c : report.checks)
        std::printf("[%-5s] %s\n", c.status.c_str(), c.name.c_str());
    std::printf("%d passed, %d failed, %d errored\n", report.passed, report.failed, report.errored);
    if (dest.empty()) std::cout << j.dump(2) << "\n";
    return report.all_pass() ? 0 : 1;
}

int cmd_orbit(const std::string& system, long count, const std::string& csv_path,
              const std::array<std::string, kNumParams>& param_strings, const std::string& x0_text) {
    auto sys = system_by_name(system);
    std::array<double, kNumParams> params{};
    for (int i = 0; i < kNumParams; ++i)
        params[static_cast<std::size_t>(i)] =
            parse_rational(param_strings[static_cast<std::size_t>(i)]).get_d();
    std::vector<double> x0(static_cast<std::size_t>(sys.dim), 0.0);
    if (!x0_text.empty()) {
        std::stringstream ss(x0_text);
        std::string tok;
        std::size_t i = 0;
        while (std::getline(ss, tok, ',')) {
            if (i >= x0.size()) throw ConfigInvalid("x0 has too many coordinates");
            x0[i++] = parse_rational(tok).get_d();
        }
        if (i != x0.size()) throw ConfigInvalid("x0 has too few coordinates");
    }
    auto samples = orbit_samples(sys, x0, params, count);
    std::ofstream out(csv_path);
    if (!out) throw ConfigInvalid("cannot write csv to " + csv_path);
    out << "n";
    for (int d = 1; d <= sys.dim; ++d) out << ",coord" << d;
    out << "\n";
    for (std::size_t n = 0; n < samples.size(); ++n) {
        out << n;
        char buf[32];
        for (double c : samples[n]) {
            std::snprintf(buf, sizeof buf, "%.17g", c);
            out << "," << buf;
        }
        out << "\n";
    }
    std::printf("wrote %zu samples of %s to %s\n", samples.size(), sys.name.c_str(),
                csv_path.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact nilpotent-group sequence algebra and torus nilsystem checks"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "run a verification suite and emit a JSON report");
    std::string suite = "all", config_path, out_path;
    std::uint64_t seed = 1;
    auto* suite_opt = run->add_option("--suite", suite, "algebra|hallpetresco|example41|occupancy|all");
    run->add_option("--config", config_path, "key=value config file");
    run->add_option("--out", out_path, "report destination (JSON)");
    auto* seed_opt = run->add_option("--seed", seed, "seed override");

    auto* explain_cmd = app.add_subcommand("explain", "print what a check verifies and its oracle");
    std::string check_name;
    explain_cmd->add_option("check", check_name, "check name, e.g. dark-weight")->required();

    auto* orbit = app.add_subcommand("orbit", "sample an orbit and write it as CSV");
    std::string system_name, csv_path, x0_text;
    long count = 1000;
    std::array<std::string, kNumParams> param_strings = {"0.41421356237309515",
                                                         "0.8660254037844386", "0.0", "0.0"};
    orbit->add_option("--system", system_name, "T_Z|T|S_beta|S_2a|U_beta|R_beta|R_2a|heisenberg|SxS2|TxT2")
        ->required();
    orbit->add_option("--n", count, "number of samples");
    orbit->add_option("--csv", csv_path, "output path")->required();
    orbit->add_option("--alpha", param_strings[0], "decimal value for alpha");
    orbit->add_option("--a", param_strings[1], "decimal value for a");
    orbit->add_option("--b", param_strings[2], "decimal value for b");
    orbit->add_option("--beta", param_strings[3], "decimal value for beta");
    orbit->add_option("--x0", x0_text, "starting point, comma-separated decimals");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_name() == "CallForHelp" ? 0 : 2;
    }

    try {
        if (run->parsed())
            return cmd_run(config_path, out_path, seed, seed_opt->count() > 0, suite,
                           suite_opt->count() > 0);
        if (explain_cmd->parsed()) {
            std::cout << check_name << "\n" << explain(check_name) << "\n";
            return 0;
        }
        if (orbit->parsed()) return cmd_orbit(system_name, count, csv_path, param_strings, x0_text);
    } catch (const ConfigInvalid& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "unexpected error: %s\n", e.what());
        return 1;
    }
    return 2;
}
