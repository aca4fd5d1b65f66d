#include "fixtures.hh"

#include <strata/errors.hh>
#include <strata/tilting.hh>

#include <doctest.h>

using namespace strata;
using strata::testing::fixture_path;
using strata::testing::load;

using Layers = std::vector<std::vector<std::size_t>>;

namespace
{
    auto analysis_of(const std::string & name) -> Analysis<PrimeField>
    {
        auto q = parse_quiver_file(fixture_path(name));
        auto a = build_algebra(q, PrimeField(q.field.prime));
        return analyse(a, &q);
    }

    auto verdict(const FdimReport & r, const std::string & id) -> std::string
    {
        for (const auto & c : r.checks)
            if (c.id == id)
                return c.verdict;
        return "missing";
    }
}

TEST_CASE("universal extension kills the first extension group")
{
    auto a = load("MP4");
    auto d = strat_family(a, StratKind::Standard);
    CHECK(ext(d[0], d[1], 1) > 0);
    auto e = universal_extension(d[1], d[0]);
    CHECK(e.copies == ext(d[0], d[1], 1));
    CHECK(e.module.dim() == d[1].dim() + e.copies * d[0].dim());
    CHECK(is_homomorphism(d[1], e.module, e.inclusion));
    CHECK(rank(e.inclusion) == d[1].dim());
    CHECK(ext(d[0], e.module, 1) == 0);
}

TEST_CASE("characteristic tilting module of the four loop algebra")
{
    auto a = load("MP4");
    auto t = characteristic_tilting(a);
    REQUIRE(t.summands.size() == 2);
    CHECK(t.summands[0].dim() == 2);
    CHECK(is_isomorphic(t.summands[0], strat_module(a, StratKind::Standard, 0)));
    CHECK(t.summands[1].dim() == 8);
    CHECK(t.pd == DimensionValue::exact(1));
    auto cover = projective_cover(t.summands[1]);
    CHECK(cover.tops == std::vector<std::size_t>{0, 0});
    auto kernel = map_spaces(cover.source, t.summands[1], cover.map).kernel.module;
    CHECK(is_isomorphic(kernel, projective(a, 1)));
    CHECK(radical_layers(t.summands[1]) == Layers{{2, 0}, {2, 1}, {1, 1}, {1, 0}});
    for (std::size_t i = 1; i <= 3; ++i)
        CHECK(ext(t.total, t.total, i) == 0);
    CHECK(is_generalized_tilting(t.total).answer == Answer::Yes);
    auto c = characteristic_cotilting(a);
    CHECK_FALSE(is_isomorphic(t.total, c.total));
}

TEST_CASE("tilting modules of the two vertex hereditary quotient")
{
    auto a = load("O2");
    auto t = characteristic_tilting(a);
    CHECK(is_isomorphic(t.summands[0], simple(a, 0)));
    CHECK(is_isomorphic(t.summands[1], projective(a, 0)));
    CHECK(t.pd == DimensionValue::exact(1));
}

TEST_CASE("self-injective local algebra is its own tilting module")
{
    auto a = load("DUAL0");
    auto t = characteristic_tilting(a);
    CHECK(is_isomorphic(t.total, regular_module(a)));
    auto rd = ringel_dual(a, t);
    CHECK(rd.ringel->dim() == a->dim());
    CHECK(ringel_functor(rd, t.total).dim() == a->dim());
    CHECK(ringel_isomorphic_to_algebra(rd) == std::optional<bool>(true));
}

TEST_CASE("generalized tilting rejects modules with self extensions")
{
    auto a = load("O2");
    auto check = is_generalized_tilting(simple(a, 1));
    CHECK(check.answer == Answer::No);
    auto reg = is_generalized_tilting(regular_module(a));
    CHECK(reg.answer == Answer::Yes);
    CHECK(reg.pd == DimensionValue::exact(0));
}

TEST_CASE("Ringel dual of the quasi-hereditary quotient")
{
    auto a = load("O2");
    auto rd = ringel_dual(a, characteristic_tilting(a));
    CHECK(rd.ringel->dim() == 5);
    CHECK(rd.ringel_sss);
    CHECK(is_quasi_hereditary(rd.ringel) == Answer::Yes);
    CHECK(rd.ringel->order() == std::vector<std::size_t>{1, 0});
    CHECK(validate(*rd.ringel).empty());
    // F(T) is the regular R-module
    CHECK(is_isomorphic(ringel_functor(rd, rd.tilting.total), regular_module(rd.ringel)));
    auto rs = ringel_dual_properly_stratified(rd);
    CHECK(rs.answer == Answer::Yes);
    CHECK(rs.via_n == Answer::Yes);
    CHECK(ringel_isomorphic_to_algebra(rd) == std::nullopt);
}

TEST_CASE("Ringel dual of the four loop algebra is not properly stratified")
{
    auto a = load("MP4");
    auto rd = ringel_dual(a, characteristic_tilting(a));
    CHECK(validate(*rd.ringel).empty());
    CHECK(is_isomorphic(ringel_functor(rd, rd.tilting.total), regular_module(rd.ringel)));
    auto rs = ringel_dual_properly_stratified(rd);
    CHECK(rs.answer == Answer::No);
}

TEST_CASE("duality checks")
{
    auto q = parse_quiver_file(fixture_path("MP4"));
    auto a = build_algebra(q, PrimeField(q.field.prime));
    auto d = verify_duality(a, *q.duality);
    CHECK(d.simples_fixed);
    auto p = projective(a, 0);
    CHECK(is_isomorphic(d.star(p), injective(a, 0)));
    CHECK(is_isomorphic(d.star(d.star(p)), p));
    CHECK(check_module(d.star(p)).empty());
    // swapping only one direction is not an involution
    CHECK_THROWS_AS((void) verify_duality(a, {{0, 1}, {1, 1}, {2, 2}, {3, 3}}), NotAntiInvolution);
    // loops cannot map to arrows with different endpoints
    CHECK_THROWS_AS((void) verify_duality(a, {{0, 1}, {1, 0}, {2, 3}, {3, 2}}), NotAntiInvolution);
}

TEST_CASE("finitistic dimension report for the four loop algebra")
{
    auto an = analysis_of("MP4");
    REQUIRE(an.fdim);
    const auto & r = *an.fdim;
    CHECK(r.pd_t == DimensionValue::exact(1));
    CHECK(r.fdim_delta.exact);
    CHECK(r.fdim_delta.value == 0);
    CHECK(r.fdim_delta.route == "injection_certificate");
    CHECK(r.fdim_exact);
    CHECK(r.lower == 1);
    CHECK(r.chain == "0 < 1 < 2");
    CHECK(r.chain_holds);
    CHECK(an.ringel_strat->answer == Answer::No);
    CHECK(verdict(r, "fdim_at_most_fdim_delta_plus_pd_t") == "pass");
    CHECK(verdict(r, "fdim_at_least_twice_fdim_delta") == "pass");
    CHECK(verdict(r, "pd_h_equals_fdim") == "inapplicable");
    CHECK(verdict(r, "fdim_at_most_2n_minus_2") == "pass");
    CHECK(r.conjecture.verdict == "holds");
}

TEST_CASE("finitistic dimension report for the quasi-hereditary quotient")
{
    auto an = analysis_of("O2");
    REQUIRE(an.fdim);
    REQUIRE(an.two_step);
    const auto & r = *an.fdim;
    CHECK(r.fdim_delta.exact);
    CHECK(r.fdim_delta.value == 1);
    CHECK(r.fdim_delta.route == "ringel_tilting");
    CHECK(r.fdim_exact);
    CHECK(r.lower == 2);
    CHECK(an.two_step->pd == DimensionValue::exact(2));
    CHECK(an.two_step->functor_check);
    CHECK(verdict(r, "gldim_equals_twice_pd_t") == "pass");
    CHECK(verdict(r, "pd_h_equals_fdim") == "pass");
    CHECK(verdict(r, "fdim_equals_twice_fdim_delta") == "pass");
    CHECK(verdict(r, "pd_ringel_tilting_equals_fdim_delta") == "pass");
    CHECK(an.t_self_dual == std::optional<bool>(true));
    CHECK(verdict(r, "fdim_equals_twice_pd_t") == "pass");
    REQUIRE(an.ifdim);
    CHECK(an.ifdim->applicable);
    CHECK(an.ifdim->holds);
}

TEST_CASE("finitistic dimension report for the self-injective algebra")
{
    auto an = analysis_of("DUAL0");
    REQUIRE(an.fdim);
    REQUIRE(an.two_step);
    CHECK(is_isomorphic(an.two_step->total, regular_module(an.algebra)));
    CHECK(an.fdim->fdim_exact);
    CHECK(an.fdim->lower == 0);
    CHECK(an.fdim->pd_t == DimensionValue::exact(0));
    CHECK(verdict(*an.fdim, "pd_h_equals_fdim") == "pass");
    CHECK(verdict(*an.fdim, "fdim_equals_twice_pd_t") == "pass");
    CHECK(an.strat.properly_stratified == Answer::Yes);
    CHECK(an.strat.quasi_hereditary == Answer::No);
}
