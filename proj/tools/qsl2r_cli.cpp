// Command line front end: runs the verification suites and emits a
// machine-readable report. Exit code 0 = all checks pass, 1 = at least one
// check failed, 2 = invalid configuration.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qsl2r/checks.hpp"
#include "qsl2r/par.hpp"

namespace {

struct RunConfig {
    double q = 0.5;
    double a = 1.0;
    double tol = 1e-9;
    double max_spin = 4.0;
    int truncation = 6;
    double g_exponent = -1.0;
    std::uint64_t seed = 20240901ULL;
    std::string json_out;
    std::string format = "text";
};

using SuiteFn = std::vector<qsl2r::CheckReport> (*)(const qsl2r::SuiteConfig&);

nlohmann::json report_json(const std::string& subcommand, const RunConfig& rc,
                           const std::vector<qsl2r::CheckReport>& checks, double elapsed) {
    nlohmann::json doc;
    doc["schema_version"] = 1;
    doc["subcommand"] = subcommand;
    doc["params"] = {{"q", rc.q},
                     {"a", rc.a},
                     {"tol", rc.tol},
                     {"max_spin", rc.max_spin},
                     {"truncation", rc.truncation},
                     {"g_exponent", rc.g_exponent},
                     {"seed", rc.seed},
                     {"threads", qsl2r::thread_count()}};
    bool all_pass = true;
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : checks) {
        arr.push_back({{"name", c.name},
                       {"status", c.pass ? "pass" : "fail"},
                       {"residual", c.residual},
                       {"threshold", c.threshold},
                       {"seconds", c.seconds}});
        all_pass = all_pass && c.pass;
    }
    doc["checks"] = arr;
    doc["status"] = all_pass ? "pass" : "fail";
    doc["elapsed_seconds"] = elapsed;
    return doc;
}

void print_text(const std::string& subcommand, const std::vector<qsl2r::CheckReport>& checks,
                double elapsed) {
    std::printf("== %s ==\n", subcommand.c_str());
    int failed = 0;
    for (const auto& c : checks) {
        std::printf("[%s] %-36s residual=%.3e  threshold=%.3e  (%.3fs)\n",
                    c.pass ? "PASS" : "FAIL", c.name.c_str(), c.residual, c.threshold,
                    c.seconds);
        if (!c.pass) ++failed;
    }
    std::printf("%d/%zu checks passed in %.2fs\n", static_cast<int>(checks.size()) - failed,
                checks.size(), elapsed);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Verification toolkit for the quantized SU(2) coideal, its relatively "
                 "invariant integral and the double-coideal regular representation"};
    app.require_subcommand(1);

    RunConfig rc;
    const std::vector<std::pair<std::string, SuiteFn>> suites = {
        {"spectrum", qsl2r::suite_spectrum}, {"balance", qsl2r::suite_balance},
        {"integral", qsl2r::suite_integral}, {"haar", qsl2r::suite_haar},
        {"gelfand", qsl2r::suite_gelfand},   {"double", qsl2r::suite_double},
        {"regrep", qsl2r::suite_regrep},     {"all", qsl2r::suite_all},
    };

    std::string chosen;
    for (const auto& [name, fn] : suites) {
        auto* sub = app.add_subcommand(name, "run the " + name + " checks");
        sub->add_option("--q", rc.q, "deformation parameter in (0,1)");
        sub->add_option("--a", rc.a, "coideal parameter (t = q^a - q^-a)");
        sub->add_option("--tol", rc.tol, "comparison tolerance");
        sub->add_option("--max-spin", rc.max_spin, "spin cutoff for block sweeps");
        sub->add_option("--truncation,-M", rc.truncation, "stabilizer weight truncation");
        sub->add_option("--g-exponent", rc.g_exponent, "candidate character k^s");
        sub->add_option("--seed", rc.seed, "sampling seed");
        sub->add_option("--json-out", rc.json_out, "write the JSON report to this path");
        sub->add_option("--format", rc.format, "stdout format: text or json")
            ->check(CLI::IsMember({"text", "json"}));
        sub->callback([&chosen, name = name] { chosen = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // help/version exit cleanly, bad config is 2
    }

    qsl2r::SuiteConfig cfg;
    try {
        cfg.ctx = qsl2r::QContext(rc.q, rc.a, rc.tol, rc.max_spin);
        if (rc.truncation < 1 || rc.truncation > 2 * rc.max_spin + 8)
            throw std::invalid_argument("truncation out of range");
        cfg.truncation = rc.truncation;
        cfg.g_exponent = rc.g_exponent;
        cfg.seed = rc.seed;
    } catch (const std::exception& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return 2;
    }

    SuiteFn fn = nullptr;
    for (const auto& [name, f] : suites)
        if (name == chosen) fn = f;

    std::vector<qsl2r::CheckReport> checks;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        checks = fn(cfg);
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "check execution failed: " << e.what() << "\n";
        return 1;
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const nlohmann::json doc = report_json(chosen, rc, checks, elapsed);
    if (rc.format == "json")
        std::cout << doc.dump(2) << "\n";
    else
        print_text(chosen, checks, elapsed);
    if (!rc.json_out.empty()) {
        std::ofstream f(rc.json_out);
        if (!f) {
            std::cerr << "cannot open " << rc.json_out << " for writing\n";
            return 2;
        }
        f << doc.dump(2) << "\n";
    }

    for (const auto& c : checks)
        if (!c.pass) return 1;
    return 0;
}
