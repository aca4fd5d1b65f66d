#include "fixtures.hh"

#include <strata/homology.hh>

#include <doctest.h>

using namespace strata;
using strata::testing::load;

TEST_CASE("simple modules of the two cycle algebra")
{
    auto a = load("O2");
    auto l1 = simple(a, 0), l2 = simple(a, 1);
    auto r = minimal_resolution(l2, 5);
    CHECK(r.status == Resolution<PrimeField>::Status::Terminated);
    CHECK(r.length() == 2);
    CHECK(r.term(0) == std::vector<std::size_t>{0, 1});
    CHECK(r.term(1) == std::vector<std::size_t>{1, 0});
    CHECK(r.term(2) == std::vector<std::size_t>{0, 1});
    CHECK(projective_dimension(l1) == DimensionValue::exact(1));
    CHECK(global_dimension(a) == DimensionValue::exact(2));
    CHECK(ext(l2, l1, 1) == 1);
    CHECK(ext(l1, projective(a, 1), 1) == 1);
}

TEST_CASE("infinite projective dimension is detected by periodic syzygies")
{
    auto d = load("DUAL0");
    CHECK(projective_dimension(simple(d, 0)).is_infinite());
    auto m = load("MP4");
    CHECK(projective_dimension(simple(m, 0)).is_infinite());
    CHECK(global_dimension(m).is_infinite());
}

TEST_CASE("hereditary path algebra has global dimension one")
{
    CHECK(global_dimension(load("HER2")) == DimensionValue::exact(1));
}

TEST_CASE("ext in degree zero is hom")
{
    auto a = load("MP4");
    std::vector<Module<PrimeField>> mods{simple(a, 0), simple(a, 1), projective(a, 0), injective(a, 1)};
    for (const auto & x : mods)
        for (const auto & y : mods)
            CHECK(ext(x, y, 0) == hom_space(x, y).size());
}

TEST_CASE("ext from projective resolutions agrees with injective coresolutions")
{
    for (auto name : {"MP4", "O2", "DUAL0"}) {
        auto a = load(name);
        std::vector<Module<PrimeField>> mods;
        for (std::size_t v = 0; v < a->vertex_count(); ++v) {
            mods.push_back(simple(a, v));
            mods.push_back(projective(a, v));
            mods.push_back(injective(a, v));
        }
        for (const auto & x : mods)
            for (const auto & y : mods)
                for (std::size_t i = 1; i <= 3; ++i)
                    CHECK(ext(x, y, i) == ext_via_coresolution(x, y, i));
    }
}
