#include "fixtures.hh"

#include <strata/errors.hh>

#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

using namespace strata;
using strata::testing::fixture_path;
using strata::testing::load;

namespace
{
    auto words_of(const Algebra<PrimeField> & a) -> std::vector<std::string>
    {
        std::vector<std::string> out = a.labels();
        std::sort(out.begin(), out.end());
        return out;
    }

    // paths avoiding monomial relation words, counted by brute force
    auto count_paths(const QuiverPresentation & q) -> std::size_t
    {
        std::vector<std::vector<std::size_t>> forbidden;
        for (const auto & r : q.relations)
            forbidden.push_back(r[0].word);
        auto contains = [&](const std::vector<std::size_t> & w) {
            for (const auto & f : forbidden)
                if (std::search(w.begin(), w.end(), f.begin(), f.end()) != w.end())
                    return true;
            return false;
        };
        std::size_t count = q.vertex_count;
        std::vector<std::vector<std::size_t>> layer;
        for (std::size_t a = 0; a < q.arrows.size(); ++a)
            layer.push_back({a});
        while (! layer.empty()) {
            std::vector<std::vector<std::size_t>> next;
            for (const auto & w : layer) {
                if (contains(w))
                    continue;
                ++count;
                // prepend an arrow acting after the path
                for (std::size_t a = 0; a < q.arrows.size(); ++a)
                    if (q.arrows[a].source == q.arrows[w.front()].target) {
                        auto longer = w;
                        longer.insert(longer.begin(), a);
                        next.push_back(longer);
                    }
            }
            layer = std::move(next);
        }
        return count;
    }
}

TEST_CASE("parsing the four loop fixture")
{
    auto q = parse_quiver_file(fixture_path("MP4"));
    CHECK(q.vertex_count == 2);
    CHECK(q.arrows.size() == 4);
    CHECK(q.relations.size() == 5);
    CHECK(q.order == std::vector<std::size_t>{0, 1});
    REQUIRE(q.duality);
    CHECK(q.duality->size() == 4);
}

TEST_CASE("composition typing is function style")
{
    CHECK_NOTHROW((void) parse_quiver("vertices 2\narrow a 1 2\narrow b 2 1\nrelation b*a\n"));
    CHECK_NOTHROW((void) parse_quiver("vertices 2\narrow x 1 1\narrow b 2 1\nrelation x*b\n"));
    CHECK_THROWS_AS((void) parse_quiver("vertices 2\narrow x 1 1\narrow b 2 1\nrelation b*x\n"), ParseError);
}

TEST_CASE("parse errors carry line numbers")
{
    try {
        (void) parse_quiver("vertices 2\n# comment\narrow a 1 2\nbogus line\n");
        FAIL("expected a parse error");
    }
    catch (const ParseError & e) {
        CHECK(e.line() == 4);
    }
    CHECK_THROWS_AS((void) parse_quiver("vertices 2\narrow a 1 2\narrow a 2 1\n"), ParseError);
    CHECK_THROWS_AS((void) parse_quiver("vertices 2\norder 1 1\n"), InputError);
}

TEST_CASE("path bases of the fixtures")
{
    auto mp4 = load("MP4");
    CHECK(mp4->dim() == 10);
    CHECK(words_of(*mp4) == std::vector<std::string>{"alpha", "beta", "beta*alpha", "beta*y", "beta*y*alpha", "e1", "e2", "x", "y", "y*alpha"});
    auto o2 = load("O2");
    CHECK(words_of(*o2) == std::vector<std::string>{"e1", "e2", "u", "v", "v*u"});
    CHECK(load("DUAL0")->dim() == 2);
}

TEST_CASE("monomial fixtures match a brute force path count")
{
    for (const auto * name : {"MP4", "O2", "DUAL0", "HER2"}) {
        CAPTURE(name);
        auto q = parse_quiver_file(fixture_path(name));
        CHECK(load(name)->dim() == count_paths(q));
    }
}

TEST_CASE("blocks count paths between vertices")
{
    auto a = load("MP4");
    CHECK(a->block(0, 0).size() == 4);
    CHECK(a->block(1, 0).size() == 2);
    CHECK(a->block(0, 1).size() == 2);
    CHECK(a->block(1, 1).size() == 2);
}

TEST_CASE("non monomial relations are completed")
{
    // commutative square: both paths from 1 to 4 agree
    auto q = parse_quiver("vertices 4\narrow a 1 2\narrow b 2 4\narrow c 1 3\narrow d 3 4\nrelation b*a - d*c\n");
    auto a = build_algebra(q, PrimeField());
    CHECK(a->dim() == 4 + 4 + 1);
    CHECK(validate(*a).empty());
}

TEST_CASE("input errors from the builder")
{
    auto loop = parse_quiver("vertices 1\narrow x 1 1\n");
    CHECK_THROWS_AS((void) build_algebra(loop, PrimeField()), NotFiniteDimensional);
    auto short_rel = parse_quiver("vertices 2\narrow a 1 2\narrow b 1 2\nrelation a - b\n");
    CHECK_THROWS_AS((void) build_algebra(short_rel, PrimeField()), NonAdmissible);
}
