#include "dtorus/cli/app.hpp"

#include <catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

using namespace dtorus::cli;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = run_cli(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

Json run_json(std::vector<std::string> args)
{
    args.push_back("--format");
    args.push_back("json");
    const auto r = run(std::move(args));
    INFO(r.err);
    return Json::parse(r.out);
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

} // namespace

TEST_CASE("count reproduces the per-vertex column")
{
    const auto j = run_json({"count", "--m", "3", "--d", "2", "--n", "3..10", "--pi"});
    const std::vector<std::string> expected{"4", "8", "40", "108", "168", "696", "2332", "6560"};
    REQUIRE(j["rows"].size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i)
        CHECK(j["rows"][i]["N_per_vertex"] == expected[i]);
    CHECK(j["rows"][3]["pi"] == "156");
    CHECK(j["summary"]["delta"] == 1);
    CHECK(j["summary"]["exit_code"] == 0);

    CHECK(run_json({"count", "--M", "3", "--n", "7"})["rows"][0]["N"] == "0");
    CHECK(run_json({"count", "--M", "3,3", "--n", "2"})["rows"][0]["N"] == "0");
    CHECK(run_json({"count", "--M", "3,3", "--n", "6"})["rows"][0]["N"] == "972");
}

TEST_CASE("verify")
{
    const auto j = run_json({"verify", "--M", "3,3", "--n", "3..8", "--oracle", "trace"});
    REQUIRE(j["rows"].size() == 6);
    for (const auto& row : j["rows"])
        CHECK(row["status"] == "PASS");

    const auto spectral = run({"verify", "--M", "3", "--spectral"});
    CHECK(spectral.code == 0);
    CHECK(spectral.out.find("FAIL") == std::string::npos);

    const auto skipped = run_json({"verify", "--M", "3,3", "--n", "30", "--oracle", "enumerative"});
    CHECK(skipped["rows"][0]["status"] == "SKIPPED(budget)");
    CHECK(skipped["summary"]["exit_code"] == 0);

    const auto three = run_json({"verify", "--M", "3,4", "--n", "3..6", "--oracle", "trace", "--oracle", "enumerative",
                                 "--oracle", "path"});
    for (const auto& row : three["rows"]) {
        CHECK(row["status"] == "PASS");
        CHECK(row["trace"] == row["theorem"]);
        CHECK(row["path"] == row["theorem"]);
    }

    // an impossible tolerance turns spectral rows into failures
    CHECK(run({"verify", "--M", "3", "--spectral", "--tol", "0"}).code == 3);
}

TEST_CASE("conjectures sweep")
{
    const auto j = run_json({"conjectures", "--m", "3", "--d", "2", "--n", "3..10"});
    CHECK(j["summary"]["integrality_violations"] == 0);
    CHECK(j["summary"]["equality_violations"] == 0);
    CHECK(j["summary"]["counterexample"].empty());
    bool saw_21 = false, saw_n4_h1 = false;
    for (const auto& row : j["rows"]) {
        CHECK(row["equal"] == true);
        if (row["n"] == 9 && row["mu"] == "21")
            saw_21 = row["X"] == "84";
        if (row["n"] == 4 && row["h"] == 1)
            saw_n4_h1 = true;
    }
    CHECK(saw_21);
    CHECK_FALSE(saw_n4_h1);
}

TEST_CASE("table1 matches the golden file byte for byte")
{
    const auto text = run({"table1"});
    CHECK(text.code == 0);
    CHECK(text.out == slurp(DTORUS_GOLDEN_DIR "/table1.txt"));
    CHECK(run({"table1"}).out == text.out);
    const auto csv = run({"table1", "--format", "csv"});
    CHECK(csv.out == slurp(DTORUS_GOLDEN_DIR "/table1.csv"));
}

TEST_CASE("JSON reports round-trip")
{
    const std::vector<std::vector<std::string>> grid{
        {"count", "--M", "3,4", "--n", "3..7", "--pi"},
        {"verify", "--M", "3", "--n", "3..6", "--spectral"},
        {"conjectures", "--m", "3", "--d", "2", "--n", "3..6"},
        {"table1"},
    };
    for (auto args : grid) {
        args.push_back("--format");
        args.push_back("json");
        const auto r = run(args);
        const Report report = Report::from_json(Json::parse(r.out));
        CHECK(render_json(report) == r.out);
        CHECK(Report::from_json(report.to_json()) == report);
    }
}

TEST_CASE("usage errors exit with 2")
{
    CHECK(run({}).code == 2);
    CHECK(run({"bogus"}).code == 2);
    CHECK(run({"count", "--n", "3"}).code == 2);
    CHECK(run({"count", "--M", "3", "--n", "5..3"}).code == 2);
    CHECK(run({"count", "--M", "2", "--n", "3"}).code == 2);
    CHECK(run({"count", "--M", "3,x", "--n", "3"}).code == 2);
    CHECK(run({"count", "--M", "3", "--m", "3", "--d", "1", "--n", "3"}).code == 2);
    CHECK(run({"count", "--M", "3", "--n", "3", "--format", "xml"}).code == 2);
    CHECK(run({"verify", "--M", "3", "--n", "3", "--budget", "0"}).code == 2);
    CHECK(run({"verify", "--M", "3"}).code == 2);
    CHECK(run({"conjectures", "--n", "3..5"}).code == 2);
    CHECK(run({"count", "--help"}).code == 0);
}

TEST_CASE("range parsing")
{
    CHECK(parse_range("7") == std::pair{7, 7});
    CHECK(parse_range("3..10") == std::pair{3, 10});
    CHECK_THROWS_AS(parse_range("0..3"), usage_error);
    CHECK_THROWS_AS(parse_range("3..x"), usage_error);
    CHECK(parse_sides("3,4,5") == std::vector<int>{3, 4, 5});
}
