#include "fixtures.hh"

#include <strata/stratification.hh>

#include <doctest.h>

using namespace strata;
using strata::testing::load;

using Layers = std::vector<std::vector<std::size_t>>;

TEST_CASE("standard modules of the four loop algebra")
{
    auto a = load("MP4");
    CHECK(strat_module(a, StratKind::Standard, 0).dim() == 2);
    CHECK(strat_module(a, StratKind::Standard, 1).dim() == 4);
    CHECK(strat_module(a, StratKind::ProperStandard, 0).dim() == 1);
    CHECK(strat_module(a, StratKind::ProperStandard, 1).dim() == 2);
    CHECK(radical_layers(strat_module(a, StratKind::Standard, 0)) == Layers{{1, 0}, {1, 0}});
    CHECK(radical_layers(strat_module(a, StratKind::ProperStandard, 1)) == Layers{{0, 1}, {1, 0}});
    for (auto kind : {StratKind::Costandard, StratKind::ProperCostandard})
        for (std::size_t l = 0; l < 2; ++l) {
            auto m = strat_module(a, kind, l);
            CHECK(check_module(m).empty());
            auto soc = socle_vector(m);
            CHECK(soc[l] == 1);
            CHECK(soc[1 - l] == 0);
        }
}

TEST_CASE("stratification verdicts on the fixtures")
{
    auto mp4 = stratify(load("MP4"));
    CHECK(mp4.sss.sss);
    CHECK(mp4.properly_stratified == Answer::Yes);
    CHECK(mp4.quasi_hereditary == Answer::No);

    auto o2 = stratify(load("O2"));
    CHECK(o2.quasi_hereditary == Answer::Yes);

    auto d = stratify(load("DUAL0"));
    CHECK(d.properly_stratified == Answer::Yes);
    CHECK(d.quasi_hereditary == Answer::No);

    auto o2r = stratify(load("O2R"));
    CHECK_FALSE(o2r.sss.sss);
    REQUIRE(o2r.sss.failure);
    CHECK(o2r.sss.failure->trace_dim == 1);
    CHECK(o2r.sss.failure->projective_dim == 3);

    CHECK(stratify(load("HER2")).quasi_hereditary == Answer::Yes);
}

TEST_CASE("alternative characterisation agrees with the layer test")
{
    for (auto name : {"MP4", "O2", "O2R", "DUAL0", "HER2"}) {
        CAPTURE(name);
        auto a = load(name);
        auto expected = is_sss(a).sss ? Answer::Yes : Answer::No;
        CHECK(sss_alternative_check(a) == expected);
    }
}

TEST_CASE("filtration chains")
{
    auto a = load("MP4");
    auto deltas = strat_family(a, StratKind::Standard);
    auto r = has_filtration(projective(a, 0), deltas);
    CHECK(r.answer == Answer::Yes);
    CHECK(r.chain == std::vector<std::size_t>{1, 0});
    CHECK(delta_multiplicities(r, 2) == std::vector<std::size_t>{1, 1});

    auto bars = strat_family(a, StratKind::ProperStandard);
    auto r2 = has_filtration(deltas[1], std::vector<Module<PrimeField>>{bars[1]});
    CHECK(r2.answer == Answer::Yes);
    CHECK(r2.chain.size() == 2);

    auto o2 = load("O2");
    CHECK(has_filtration(simple(o2, 1), strat_family(o2, StratKind::Standard)).answer == Answer::No);
    auto reg = has_filtration(regular_module(o2), strat_family(o2, StratKind::Standard));
    REQUIRE(reg.answer == Answer::Yes);
    CHECK(delta_multiplicities(reg, 2) == std::vector<std::size_t>{1, 2});
}

TEST_CASE("filtration dimensions")
{
    auto o2 = load("O2");
    CHECK(delta_dim(simple(o2, 1)) == DimensionValue::exact(1));
    CHECK(delta_dim(strat_module(o2, StratKind::Standard, 0)) == DimensionValue::exact(0));
    auto a = load("MP4");
    CHECK(nablabar_codim(regular_module(a)) == DimensionValue::exact(1));
}
