#pragma once

#include "dtorus/cli/report.hpp"
#include "dtorus/combinatorics.hpp"
#include "dtorus/graph_oracle.hpp"
#include "dtorus/spectral.hpp"
#include "dtorus/theorem.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace dtorus::cli {

/// Bad flags or parameters; the front end maps it to exit code 2.
class usage_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 2;
inline constexpr int exit_failure = 3;

enum class OutputFormat { text, json, csv };

struct RunConfig {
    std::string command;
    std::vector<int> sides;                  // --M
    std::optional<int> m, d;                 // --m / --d
    std::optional<std::pair<int, int>> n_range;
    bool with_pi = false;
    std::vector<std::string> oracles;        // trace | path | enumerative
    bool spectral = false;
    int h_max = 60;
    std::optional<double> tolerance;
    OutputFormat format = OutputFormat::text;
    std::uint64_t budget = 100'000'000;

    bool normalized() const { return sides.empty() && m && d; }

    TorusSpec torus() const
    {
        if (!sides.empty() && (m || d))
            throw usage_error("give either --M or --m/--d, not both");
        try {
            if (!sides.empty())
                return TorusSpec(sides);
            if (m && d)
                return TorusSpec::normalized(*m, *d);
        } catch (const std::invalid_argument& e) {
            throw usage_error(e.what());
        }
        throw usage_error("a torus is required: --M a,b,... or --m M --d D");
    }

    std::pair<int, int> lengths() const
    {
        if (!n_range)
            throw usage_error("--n is required");
        return *n_range;
    }

    oracle::WorkBudget work_budget() const { return {budget}; }
};

/// "7" or "3..10".
inline std::pair<int, int> parse_range(const std::string& text)
{
    auto parse_int = [&](const std::string& s) {
        std::size_t pos = 0;
        int v = 0;
        try {
            v = std::stoi(s, &pos);
        } catch (const std::exception&) {
            throw usage_error("bad integer '" + s + "' in range '" + text + "'");
        }
        if (pos != s.size())
            throw usage_error("bad integer '" + s + "' in range '" + text + "'");
        return v;
    };
    const auto dots = text.find("..");
    std::pair<int, int> r;
    if (dots == std::string::npos)
        r = {parse_int(text), parse_int(text)};
    else
        r = {parse_int(text.substr(0, dots)), parse_int(text.substr(dots + 2))};
    if (r.first < 1 || r.second < r.first)
        throw usage_error("empty or non-positive range '" + text + "'");
    return r;
}

/// "3,4,5".
inline std::vector<int> parse_sides(const std::string& text)
{
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t pos = 0;
        int v = 0;
        try {
            v = std::stoi(item, &pos);
        } catch (const std::exception&) {
            throw usage_error("bad torus side '" + item + "'");
        }
        if (pos != item.size())
            throw usage_error("bad torus side '" + item + "'");
        out.push_back(v);
    }
    if (out.empty())
        throw usage_error("empty --M");
    return out;
}

namespace detail {

inline Json torus_params(const RunConfig& cfg, const TorusSpec& torus)
{
    Json p = Json::object();
    p["M"] = Json::array();
    for (int m : torus.sides())
        p["M"].push_back(m);
    if (cfg.n_range) {
        p["n_min"] = cfg.n_range->first;
        p["n_max"] = cfg.n_range->second;
    }
    return p;
}

inline Json weight_json(const WeightVector& z)
{
    Json a = Json::array();
    for (int v : z.parts())
        a.push_back(v);
    return a;
}

inline CycleCountReport theorem_count(const RunConfig& cfg, const TorusSpec& torus, int n)
{
    if (cfg.normalized())
        return count_normalized(*cfg.m, *cfg.d, n);
    return count_reduced_cycles(torus, n);
}

} // namespace detail

/// One row per n with N, N/||M|| and optionally pi; delta in the summary.
inline Report cmd_count(const RunConfig& cfg)
{
    const TorusSpec torus = cfg.torus();
    const auto [lo, hi] = cfg.lengths();
    Report r;
    r.command = "count";
    r.params = detail::torus_params(cfg, torus);
    r.params["pi"] = cfg.with_pi;
    try {
        std::map<int, BigInt> totals;
        auto total_at = [&](int n) -> const BigInt& {
            auto it = totals.find(n);
            if (it == totals.end())
                it = totals.emplace(n, detail::theorem_count(cfg, torus, n).total).first;
            return it->second;
        };
        for (int n = lo; n <= hi; ++n) {
            const auto report = detail::theorem_count(cfg, torus, n);
            totals.emplace(n, report.total);
            Json row = Json::object();
            row["n"] = n;
            row["N"] = to_string(report.total);
            row["N_per_vertex"] = to_string(BigRational(report.total) / torus.volume());
            if (cfg.with_pi)
                row["pi"] = to_string(prime_count_from(n, total_at));
            Json contributions = Json::array();
            for (const auto& c : report.contributions) {
                Json cj = Json::object();
                cj["h"] = c.h;
                cj["z"] = detail::weight_json(c.z);
                if (c.mu)
                    cj["mu"] = format_partition(*c.mu);
                cj["m"] = to_string(c.multiplicity);
                cj["X"] = to_string(c.x);
                contributions.push_back(std::move(cj));
            }
            row["contributions"] = std::move(contributions);
            r.rows.push_back(std::move(row));
        }
        if (cfg.with_pi && hi >= 3)
            r.summary["delta"] = empirical_delta(torus, hi);
        r.summary["exit_code"] = exit_ok;
    } catch (const integrity_error& e) {
        r.summary["error"] = e.what();
        r.summary["exit_code"] = exit_failure;
    }
    return r;
}

namespace detail {

struct SpectralCase {
    std::string name;
    double residual;
    double tolerance;
};

inline std::vector<SpectralCase> spectral_cases(const RunConfig& cfg, const TorusSpec& torus)
{
    auto tol = [&](double fallback) { return cfg.tolerance.value_or(fallback); };
    std::vector<SpectralCase> out;
    auto label = [](const char* what, double v) {
        std::ostringstream s;
        s << what << v << ")";
        return s.str();
    };
    for (double t : {0.1, 0.5, 1.0, 2.0, 5.0})
        out.push_back({label("theta(t=", t),
                       std::abs(spectral::theta_bessel(torus, t) - spectral::theta_eigen(torus, t)),
                       tol(1e-10)});
    for (double s : {0.5, 1.0, 2.0, 5.0}) {
        const auto series = spectral::spectral_zeta_heatkernel(torus, s, cfg.h_max);
        out.push_back({label("zeta(s=", s), std::abs(series.value - spectral::spectral_zeta_eigen(torus, s)),
                       tol(1e-8)});
    }
    for (double s : {0.5, 1.0, 3.0})
        out.push_back({label("ihara(s=", s), spectral::ihara_identity_check(torus, s), tol(1e-10)});
    out.push_back({"ihara_series(n<=8)", spectral::ihara_series_check(torus, 8), tol(1e-8)});
    return out;
}

} // namespace detail

/*
 * Theorem route against the requested oracles for every n, plus the
 * spectral identity residuals with --spectral.  Oracles over budget are
 * reported as SKIPPED(budget) and do not fail the run.
 */
inline Report cmd_verify(const RunConfig& cfg)
{
    const TorusSpec torus = cfg.torus();
    if (!cfg.n_range && !cfg.spectral)
        throw usage_error("verify needs --n and/or --spectral");
    std::vector<std::string> oracles = cfg.oracles;
    if (oracles.empty())
        oracles.push_back("trace");
    for (const auto& o : oracles)
        if (o != "trace" && o != "path" && o != "enumerative")
            throw usage_error("unknown oracle '" + o + "'");

    Report r;
    r.command = "verify";
    r.params = detail::torus_params(cfg, torus);
    r.params["oracles"] = oracles;
    r.params["spectral"] = cfg.spectral;
    r.params["budget"] = cfg.budget;
    int passed = 0, failed = 0, skipped = 0;

    if (cfg.n_range) {
        for (int n = cfg.n_range->first; n <= cfg.n_range->second; ++n) {
            Json row = Json::object();
            row["case"] = "N(n=" + std::to_string(n) + ")";
            row["n"] = n;
            std::string status;
            try {
                const BigInt expected = detail::theorem_count(cfg, torus, n).total;
                row["theorem"] = to_string(expected);
                bool all_equal = true;
                bool any_run = false;
                for (const auto& o : oracles) {
                    try {
                        BigInt value;
                        if (o == "trace")
                            value = oracle::trace_count(torus, n);
                        else if (o == "enumerative")
                            value = oracle::count_reduced_cycles_enumerative(torus, n, cfg.work_budget());
                        else
                            value = oracle::count_reduced_cycles_via_lattice(torus, n, cfg.work_budget());
                        row[o] = to_string(value);
                        any_run = true;
                        all_equal = all_equal && value == expected;
                    } catch (const budget_exceeded&) {
                        row[o] = "SKIPPED(budget)";
                    }
                }
                status = !all_equal ? "FAIL" : any_run ? "PASS" : "SKIPPED(budget)";
            } catch (const integrity_error& e) {
                row["error"] = e.what();
                status = "FAIL";
            }
            row["status"] = status;
            (status == "PASS" ? passed : status == "FAIL" ? failed : skipped)++;
            r.rows.push_back(std::move(row));
        }
    }
    if (cfg.spectral) {
        for (const auto& c : detail::spectral_cases(cfg, torus)) {
            Json row = Json::object();
            row["case"] = c.name;
            row["residual"] = c.residual;
            row["tolerance"] = c.tolerance;
            const bool ok = c.residual < c.tolerance;
            row["status"] = ok ? "PASS" : "FAIL";
            (ok ? passed : failed)++;
            r.rows.push_back(std::move(row));
        }
    }
    r.summary["passed"] = passed;
    r.summary["failed"] = failed;
    r.summary["skipped"] = skipped;
    r.summary["exit_code"] = failed ? exit_failure : exit_ok;
    return r;
}

/*
 * For every (n, h, mu) of the normalized torus: X exactly, whether it is a
 * nonnegative integer, and the reduced-mod-m lattice path count it is
 * conjectured to equal.  Violations are listed verbatim in the summary.
 */
inline Report cmd_conjectures(const RunConfig& cfg)
{
    if (!cfg.normalized())
        throw usage_error("conjectures needs a normalized torus: --m M --d D");
    const int m = *cfg.m, d = *cfg.d;
    const TorusSpec torus = cfg.torus();
    const auto [lo, hi] = cfg.lengths();

    Report r;
    r.command = "conjectures";
    r.params = detail::torus_params(cfg, torus);
    r.params["m"] = m;
    r.params["d"] = d;
    int entries = 0, integrality_violations = 0, equality_violations = 0, skipped = 0;
    Json counterexamples = Json::array();

    for (int n = lo; n <= hi; ++n) {
        for (int h = 0; m * h <= n; ++h) {
            if ((m * h - n) % 2 != 0)
                continue;
            for (const auto& mu : partitions(h, d)) {
                const BigRational x = x_weight_normalized(m, d, n, mu);
                const bool integral = is_integer(x) && x >= 0;
                Json row = Json::object();
                row["n"] = n;
                row["h"] = h;
                row["mu"] = format_partition(mu);
                row["X"] = to_string(x);
                row["integral_nonnegative"] = integral;
                ++entries;
                const std::string where =
                    "n=" + std::to_string(n) + " mu=(" + format_partition(mu) + ")";
                if (!integral) {
                    ++integrality_violations;
                    counterexamples.push_back("X not a nonnegative integer at " + where + ": X=" + to_string(x));
                }
                try {
                    const BigInt paths = oracle::count_reduced_paths_mod_m(
                        oracle::LatticeWalkQuery::for_partition(m, d, n, mu), cfg.work_budget());
                    const bool equal = BigRational(paths) == x;
                    row["paths"] = to_string(paths);
                    row["equal"] = equal;
                    if (!equal) {
                        ++equality_violations;
                        counterexamples.push_back("X != path count at " + where + ": X=" + to_string(x) +
                                                  " paths=" + to_string(paths));
                    }
                } catch (const budget_exceeded&) {
                    row["paths"] = "SKIPPED(budget)";
                    row["equal"] = nullptr;
                    ++skipped;
                }
                r.rows.push_back(std::move(row));
            }
        }
    }
    r.summary["entries"] = entries;
    r.summary["integrality_violations"] = integrality_violations;
    r.summary["equality_violations"] = equality_violations;
    r.summary["skipped"] = skipped;
    r.summary["counterexample"] = std::move(counterexamples);
    r.summary["exit_code"] = (integrality_violations || equality_violations) ? exit_failure : exit_ok;
    return r;
}

/// X values of the normalized torus arranged by n (rows) and h (columns),
/// with the N/m^d column.  Defaults reproduce the d = 2, m = 3 table.
inline Report cmd_table1(const RunConfig& cfg)
{
    const int m = cfg.m.value_or(3);
    const int d = cfg.d.value_or(2);
    if (!cfg.sides.empty())
        throw usage_error("table1 takes --m/--d, not --M");
    const auto [lo, hi] = cfg.n_range.value_or(std::pair{3, 10});
    if (m < 3 || d < 1)
        throw usage_error("table1 needs m >= 3 and d >= 1");

    Report r;
    r.command = "table1";
    r.params["m"] = m;
    r.params["d"] = d;
    r.params["n_min"] = lo;
    r.params["n_max"] = hi;
    const int h_cols = hi / m;
    const std::string total_col = "N/" + std::to_string(m) + "^" + std::to_string(d);
    try {
        for (int n = lo; n <= hi; ++n) {
            Json row = Json::object();
            row["n"] = n;
            const auto report = count_normalized(m, d, n);
            for (int h = 0; h <= h_cols; ++h) {
                std::string cell;
                for (const auto& c : report.contributions) {
                    if (!c.mu || c.mu->weight() != h)
                        continue;
                    if (!cell.empty())
                        cell += ", ";
                    cell += "X(" + format_partition(*c.mu) + ")=" + to_string(c.x);
                }
                row["h=" + std::to_string(h)] = cell;
            }
            row[total_col] = to_string(BigRational(report.total) / report.torus.volume());
            r.rows.push_back(std::move(row));
        }
        r.summary["exit_code"] = exit_ok;
    } catch (const integrity_error& e) {
        r.summary["error"] = e.what();
        r.summary["exit_code"] = exit_failure;
    }
    return r;
}

inline Report run_command(const RunConfig& cfg)
{
    if (cfg.command == "count")
        return cmd_count(cfg);
    if (cfg.command == "verify")
        return cmd_verify(cfg);
    if (cfg.command == "conjectures")
        return cmd_conjectures(cfg);
    if (cfg.command == "table1")
        return cmd_table1(cfg);
    throw usage_error("unknown command '" + cfg.command + "'");
}

inline std::string render(const Report& r, OutputFormat f)
{
    switch (f) {
    case OutputFormat::json:
        return render_json(r);
    case OutputFormat::csv:
        return render_csv(r);
    case OutputFormat::text:
        break;
    }
    return render_text(r);
}

} // namespace dtorus::cli
