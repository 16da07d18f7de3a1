#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "commands.hpp"
#include "config.hpp"

namespace {

using namespace quasibif::cli;

struct Flags {
    std::string config;
    std::string phi;
    std::string f;
    std::vector<double> lambdas;
    std::vector<double> Ls;
    std::vector<double> rs;
    std::optional<double> tol;
    std::optional<std::string> out;
    std::vector<std::string> formats;
    std::optional<int> per_decade;
    std::optional<int> r_points;
    std::optional<int> g_points;
    std::optional<std::string> subset;
    bool force = false;
};

void add_common(CLI::App* sub, Flags& fl, bool problem) {
    sub->add_option("config", fl.config, "Config file (key = value format)");
    if (problem) {
        sub->add_option("--phi", fl.phi, "phi descriptor, e.g. '{ kind = \"phi_k\", k = 3 }'");
        sub->add_option("--f", fl.f, "f descriptor, e.g. '{ kind = \"power_sum\", p = 1, q = 6 }'");
        sub->add_option("--lambda", fl.lambdas, "lambda values")->delimiter(',');
        sub->add_option("--L", fl.Ls, "half-lengths L")->delimiter(',');
        sub->add_option("--r", fl.rs, "initial heights r")->delimiter(',');
        sub->add_option("--tol", fl.tol, "quadrature tolerance");
        sub->add_option("--r-points", fl.r_points, "time-map samples per lambda");
        sub->add_option("--g-points", fl.g_points, "g-tilde samples");
        sub->add_flag("--force", fl.force, "solve even when the time map is not certified monotone");
    }
    sub->add_option("--per-decade", fl.per_decade, "lambda grid points per decade for diagrams");
    sub->add_option("--out", fl.out, "output directory");
    sub->add_option("--format", fl.formats, "output formats: csv, svg, structured")->delimiter(',');
}

RunConfig assemble(const Flags& fl, std::optional<Command> command) {
    RunConfig cfg = fl.config.empty() ? RunConfig{} : load_config(fl.config);
    if (command) cfg.command = *command;
    if (!fl.phi.empty()) cfg.phi = descriptor_from_value(parse_value(fl.phi));
    if (!fl.f.empty()) cfg.f = descriptor_from_value(parse_value(fl.f));
    if (!fl.lambdas.empty()) cfg.lambdas = fl.lambdas;
    if (!fl.Ls.empty()) cfg.L_values = fl.Ls;
    if (!fl.rs.empty()) cfg.r_values = fl.rs;
    if (fl.tol) cfg.tol = *fl.tol;
    if (fl.out) cfg.output.dir = *fl.out;
    if (fl.per_decade) cfg.per_decade = *fl.per_decade;
    if (fl.r_points) cfg.r_points = *fl.r_points;
    if (fl.g_points) cfg.g_points = *fl.g_points;
    if (fl.subset) cfg.subset = *fl.subset;
    if (fl.force) cfg.force = true;
    if (!fl.formats.empty()) {
        cfg.output.csv = cfg.output.svg = cfg.output.structured = false;
        for (const auto& f : fl.formats) {
            if (f == "csv") cfg.output.csv = true;
            else if (f == "svg") cfg.output.svg = true;
            else if (f == "structured") cfg.output.structured = true;
            else throw ConfigError("unknown output format '" + f + "'");
        }
    }
    // Re-validate through the same path as config files.
    Table doc = parse_document(serialize(cfg));
    return config_from_table(doc);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Time maps, g-profiles and exact-multiplicity bifurcation diagrams for -(phi(u'))' = lambda f(u)"};
    app.require_subcommand(1);
    Flags fl;
    struct Entry {
        CLI::App* sub;
        std::optional<Command> command;
    };
    std::vector<Entry> entries;
    auto add = [&](const char* name, const char* help, std::optional<Command> c, bool problem) {
        CLI::App* sub = app.add_subcommand(name, help);
        add_common(sub, fl, problem);
        entries.push_back({sub, c});
        return sub;
    };
    add("classify", "Print case, condition report, g-type and thresholds", Command::classify, true);
    add("timemap", "Sample T(r, lambda) for each lambda", Command::timemap, true);
    add("gcurve", "Sample g(lambda) and g~(r) with extrema and limits", Command::gcurve, true);
    add("bifurcate", "Build bifurcation diagrams for each L", Command::bifurcate, true);
    auto* verify = add("verify", "Check theorem patterns on the regression matrix", Command::verify, false);
    verify->add_option("--subset", fl.subset, "case123, iv-alpha, iv-beta, iv-gamma, iv-delta, v-vi, monotone, all");
    add("report", "Classify, sample g and build diagrams with pattern verdicts", Command::report, true);
    add("run", "Run the command named in the config file", std::nullopt, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_config_error;
    }
    try {
        for (const auto& e : entries) {
            if (!e.sub->parsed()) continue;
            if (!e.command && fl.config.empty()) throw ConfigError("run needs a config file");
            const RunConfig cfg = assemble(fl, e.command);
            return run(cfg, std::cout, std::cerr);
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config_error;
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config_error;
    }
    return exit_config_error;
}
