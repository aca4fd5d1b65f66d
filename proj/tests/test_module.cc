#include "fixtures.hh"

#include <strata/errors.hh>
#include <strata/module.hh>

#include <doctest.h>

using namespace strata;
using strata::testing::load;

using Layers = std::vector<std::vector<std::size_t>>;

TEST_CASE("projective dimensions in the four loop algebra")
{
    auto a = load("MP4");
    CHECK(a->dim() == 10);
    CHECK(projective(a, 0).dim() == 6);
    CHECK(projective(a, 1).dim() == 4);
    CHECK(injective(a, 0).dim() == 6);
    CHECK(injective(a, 1).dim() == 4);
    CHECK(radical_layers(projective(a, 0)) == Layers{{1, 0}, {1, 1}, {1, 1}, {1, 0}});
}

TEST_CASE("canonical modules satisfy the module axioms")
{
    for (auto name : {"MP4", "O2", "DUAL0", "HER2"}) {
        auto a = load(name);
        CHECK(check_module(regular_module<PrimeField>(a)).empty());
        for (std::size_t v = 0; v < a->vertex_count(); ++v) {
            CHECK(check_module(projective(a, v)).empty());
            CHECK(check_module(injective(a, v)).empty());
            CHECK(check_module(simple(a, v)).empty());
        }
    }
}

TEST_CASE("hom space dimensions between projectives equal block sizes")
{
    auto a = load("MP4");
    for (std::size_t l = 0; l < 2; ++l)
        for (std::size_t m = 0; m < 2; ++m)
            CHECK(hom_space(projective(a, l), projective(a, m)).size() == a->block(l, m).size());
}

TEST_CASE("trace of the first projective in the second")
{
    auto a = load("O2");
    auto t = trace(projective(a, 0), projective(a, 1));
    CHECK(t.module.dim() == 1);
}

TEST_CASE("regular module decomposes into indecomposable projectives")
{
    auto a = load("MP4");
    auto parts = decompose(regular_module<PrimeField>(a), 7);
    REQUIRE(parts.size() == 2);
    std::size_t total = 0;
    for (const auto & p : parts) {
        CHECK(p.multiplicity == 1);
        CHECK(is_indecomposable(p.module));
        total += p.module.dim();
    }
    CHECK(total == 10);
}

TEST_CASE("isomorphism of sums in different orders")
{
    auto a = load("MP4");
    auto p1 = projective(a, 0), p2 = projective(a, 1), l1 = simple(a, 0);
    auto x = direct_sum<PrimeField>({p1, l1, p2});
    auto y = direct_sum<PrimeField>({p2, p1, l1});
    auto iso = is_isomorphic(x, y);
    REQUIRE(iso);
    CHECK(is_homomorphism(x, y, *iso));
    CHECK(rank(*iso) == x.dim());
    CHECK_FALSE(is_isomorphic(direct_sum<PrimeField>({p1, l1}), direct_sum<PrimeField>({p1, simple(a, 1)})));
}

TEST_CASE("double dual is the identity")
{
    auto a = load("MP4");
    auto p = projective(a, 0);
    auto dd = dualize(dualize(p));
    CHECK(dd.algebra()->same_as(*a));
    CHECK(is_isomorphic(dd, p));
}
