#include "fixtures.hh"

#include <strata/errors.hh>
#include <strata/report.hh>

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace strata;
using strata::testing::fixture_path;
using strata::testing::load;

namespace
{
    auto scratch_file(const std::string & name, const std::string & text) -> std::string
    {
        auto dir = std::filesystem::temp_directory_path() / "strata_tests";
        std::filesystem::create_directories(dir);
        auto path = (dir / name).string();
        std::ofstream(path) << text;
        return path;
    }

    auto fixture_text(const std::string & name) -> std::string
    {
        std::ifstream in(fixture_path(name));
        std::stringstream s;
        s << in.rdbuf();
        return s.str();
    }

    auto replace(std::string s, const std::string & from, const std::string & to) -> std::string
    {
        auto at = s.find(from);
        REQUIRE(at != std::string::npos);
        return s.replace(at, from.size(), to);
    }
}

TEST_CASE("sha256 of known strings")
{
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("module specs")
{
    auto a = load("MP4");
    CHECK(module_from_spec(a, "P(1)").dim() == 6);
    CHECK(module_from_spec(a, "I(2)").dim() == 4);
    CHECK(module_from_spec(a, "L(2)").dim() == 1);
    CHECK(module_from_spec(a, "Delta(2)").dim() == 4);
    CHECK(module_from_spec(a, "DeltaBar(1)").dim() == 1);
    CHECK(module_from_spec(a, "Nabla(1)").dim() == 2);
    CHECK(module_from_spec(a, "NablaBar(2)").dim() == 2);
    CHECK(module_from_spec(a, "T(2)").dim() == 8);
    CHECK(module_from_spec(a, "A").dim() == 10);
    CHECK_THROWS_AS((void) module_from_spec(a, "Q(1)"), InputError);
    CHECK_THROWS_AS((void) module_from_spec(a, "P(7)"), InputError);
}

TEST_CASE("counterexample assertions on the stock fixture")
{
    auto checks = verify_counterexample(fixture_path("MP4"));
    CHECK(checks.size() == 11);
    for (const auto & c : checks)
        CHECK_MESSAGE(c.pass, c.name << ": " << c.detail);
}

TEST_CASE("counterexample assertions fail when the order is reversed")
{
    auto path = scratch_file("mp4_reversed.qar", replace(fixture_text("MP4"), "order 1 2", "order 2 1"));
    auto checks = verify_counterexample(path);
    REQUIRE(checks.size() == 11);
    CHECK_FALSE(checks[0].pass);
    bool strat_failed = ! checks[1].pass || ! checks[2].pass;
    CHECK(strat_failed);
    AnalysisRequest req{path, {"verify-paper-example"}};
    CHECK(run(req).exit_code == 1);
}

TEST_CASE("dropping a nilpotency relation makes the algebra infinite dimensional")
{
    auto path = scratch_file("mp4_no_xx.qar", replace(fixture_text("MP4"), "x*x", "x*y*y"));
    AnalysisRequest req{path, {"verify-paper-example"}};
    auto r = run(req);
    CHECK(r.exit_code == 1);
    CHECK(r.report.contains("error"));
}

TEST_CASE("run reports and exit codes")
{
    AnalysisRequest req{fixture_path("MP4"), {"fdim"}};
    auto r = run(req);
    CHECK(r.exit_code == 0);
    CHECK(r.report["fdim"]["report"]["fdim"] == nlohmann::json{{"status", "exact"}, {"value", 1}});
    CHECK(r.report["fdim"]["report"]["chain"] == "0 < 1 < 2");
    CHECK(r.report["seed"] == 1);

    auto o2r = run(AnalysisRequest{fixture_path("O2R"), {"stratify"}});
    CHECK(o2r.exit_code == 0);
    const auto & failure = o2r.report["stratify"]["sss"]["failure"];
    CHECK(failure["trace_dim"] == 1);
    CHECK(failure["projective_dim"] == 3);

    auto dual0 = run(AnalysisRequest{fixture_path("DUAL0"), {"fdim", "ringel"}});
    CHECK(dual0.report["fdim"]["report"]["fdim"]["value"] == 0);
    CHECK(dual0.report["ringel"]["isomorphic_to_algebra"] == "true");
    CHECK(dual0.report["ringel"]["two_step"]["isomorphic_to_algebra"] == true);

    auto missing = run(AnalysisRequest{"/nonexistent/file.qar", {"basis"}});
    CHECK(missing.exit_code == 1);

    auto bad = scratch_file("bad.qar", "vertices 2\narrow a 1 5\n");
    auto parse = run(AnalysisRequest{bad, {"basis"}});
    CHECK(parse.exit_code == 1);
    CHECK(parse.report["error"]["message"].get<std::string>().find(":2:") != std::string::npos);

    auto small = scratch_file("small.qar", "field 101\nvertices 1\n");
    CHECK(run(AnalysisRequest{small, {"basis"}}).exit_code == 1);
}

TEST_CASE("resolve sections are keyed by module spec")
{
    AnalysisRequest req{fixture_path("O2"), {"resolve", "resolve"}, {"L(2)", "P(1)"}};
    auto r = run(req);
    CHECK(r.report["resolve"]["L(2)"]["resolution"]["projective_dimension"]["value"] == 2);
    CHECK(r.report["resolve"]["P(1)"]["resolution"]["projective_dimension"]["value"] == 0);
}

TEST_CASE("cache hits reproduce the report and corrupt entries are recomputed")
{
    auto dir = std::filesystem::temp_directory_path() / "strata_tests" / "cache";
    std::filesystem::remove_all(dir);
    AnalysisRequest req{fixture_path("MP4"), {"tilting", "fdim"}};
    req.cache_dir = dir.string();
    auto first = run(req);
    CHECK(first.notes.empty());
    auto second = run(req);
    CHECK(dump_report(first.report) == dump_report(second.report));
    REQUIRE(second.notes.size() == 2);
    CHECK(second.notes[0].rfind("cache: hit", 0) == 0);

    for (const auto & e : std::filesystem::directory_iterator(dir))
        std::ofstream(e.path()) << "{not json";
    auto third = run(req);
    CHECK(dump_report(first.report) == dump_report(third.report));
    CHECK(third.notes[0].rfind("warning", 0) == 0);

    req.seed = 9;
    auto other = run(req);
    for (const auto & n : other.notes)
        CHECK(n.rfind("cache: hit", 0) != 0);
}

TEST_CASE("text rendering is derived from the report")
{
    auto r = run(AnalysisRequest{fixture_path("O2"), {"fdim"}});
    auto text = render_text(r.report);
    CHECK(text.find("fdim: exact 2") != std::string::npos);
    CHECK(text.find("seed: 1") != std::string::npos);
}
