#pragma once

#include "CLI11.hpp"
#include "dtorus/cli/commands.hpp"

#include <algorithm>
#include <ostream>
#include <string>
#include <vector>

namespace dtorus::cli {

/*
 * Parses argv-style arguments, runs the command and writes the report.
 * Returns the process exit code (0 pass, 2 usage, 3 failed check).
 */
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Reduced and prime cycle counts on discrete tori", "dtorus"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string sides, n_range, format = "text";

    auto add_common = [&](CLI::App* sub, bool with_torus) {
        if (with_torus)
            sub->add_option("--M", sides, "torus sides, e.g. 3,4");
        sub->add_option("--m", cfg.m, "side of the normalized torus");
        sub->add_option("--d", cfg.d, "dimension of the normalized torus");
        sub->add_option("--n", n_range, "cycle length or range lo..hi");
        sub->add_option("--format", format, "json | csv | text")
            ->check(CLI::IsMember({"json", "csv", "text"}));
        sub->add_option("--budget", cfg.budget, "DFS node budget for enumerative oracles")
            ->check(CLI::PositiveNumber);
    };

    auto* count = app.add_subcommand("count", "N(n) by the explicit formula");
    add_common(count, true);
    count->add_flag("--pi", cfg.with_pi, "also prime cycle counts and delta");

    auto* verify = app.add_subcommand("verify", "theorem against oracles and spectral identities");
    add_common(verify, true);
    verify->add_option("--oracle", cfg.oracles, "trace | path | enumerative (repeatable)")
        ->check(CLI::IsMember({"trace", "path", "enumerative"}));
    verify->add_flag("--spectral", cfg.spectral, "check theta, zeta and Ihara identities");
    verify->add_option("--h-max", cfg.h_max, "heat-kernel truncation for the zeta series")
        ->check(CLI::NonNegativeNumber);
    verify->add_option("--tol", cfg.tolerance, "override spectral tolerances");

    auto* conj = app.add_subcommand("conjectures", "integrality and path-count sweep");
    add_common(conj, false);

    auto* table = app.add_subcommand("table1", "X values by n and h for a normalized torus");
    add_common(table, false);

    std::vector<std::string> argv = std::move(args);
    std::reverse(argv.begin(), argv.end());
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }

    for (auto* sub : {count, verify, conj, table})
        if (sub->parsed())
            cfg.command = sub->get_name();
    cfg.format = format == "json" ? OutputFormat::json : format == "csv" ? OutputFormat::csv : OutputFormat::text;

    try {
        if (!sides.empty())
            cfg.sides = parse_sides(sides);
        if (!n_range.empty())
            cfg.n_range = parse_range(n_range);
        const Report report = run_command(cfg);
        out << render(report, cfg.format);
        return report.exit_code();
    } catch (const usage_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const integrity_error& e) {
        err << "integrity failure: " << e.what() << "\n";
        return exit_failure;
    }
}

inline int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err)
{
    return run_cli(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

} // namespace dtorus::cli
