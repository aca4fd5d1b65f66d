#include "fixtures.hh"

#include <strata/errors.hh>
#include <strata/module.hh>

#include <doctest.h>

#include <algorithm>

using namespace strata;
using strata::testing::load;
using strata::testing::load_rational;

namespace
{
    auto labels_of(const Algebra<PrimeField> & a) -> std::vector<std::string>
    {
        auto l = a.labels();
        std::sort(l.begin(), l.end());
        return l;
    }

    auto semisimple_pair() -> Algebra<PrimeField>::Ptr
    {
        PrimeField f;
        Algebra<PrimeField>::Data d;
        d.field = f;
        d.vertex_names = {"1", "2"};
        d.labels = {"e1", "e2"};
        d.source = {0, 1};
        d.target = {0, 1};
        d.idempotents = {0, 1};
        d.products.resize(4);
        d.order = {0, 1};
        d.products[0] = {{0, 1}};
        d.products[3] = {{1, 1}};
        return Algebra<PrimeField>::create(d);
    }
}

TEST_CASE("fixture algebras validate")
{
    for (const auto * name : {"MP4", "O2", "O2R", "DUAL0", "HER2"}) {
        CAPTURE(name);
        CHECK(validate(*load(name)).empty());
        CHECK(validate(*load_rational(name)).empty());
    }
    CHECK(load("MP4")->dim() == 10);
    CHECK(validate(*semisimple_pair()).empty());
}

TEST_CASE("validation reports a broken unit")
{
    auto a = load("DUAL0");
    auto x = a->data().idempotents[0] == 0 ? 1 : 0;
    auto e = a->data().idempotents[0];
    // x * e = 0 breaks the unit
    auto broken = a->data();
    broken.products[x * 2 + e] = {};
    CHECK_FALSE(validate(*Algebra<PrimeField>::create(broken)).empty());
}

TEST_CASE("Jacobson radicals")
{
    auto dual = load("DUAL0");
    CHECK(dual->radical().size() == 1);
    CHECK(load("MP4")->radical().size() == 8);
    CHECK(load("O2")->radical().size() == 3);
    CHECK(semisimple_pair()->radical().empty());
    // the radical is nilpotent
    auto a = load("MP4");
    std::vector<Vector<PrimeField>> power = a->radical();
    std::size_t steps = 0;
    while (! power.empty() && steps <= a->dim()) {
        Subspace<PrimeField> next(a->field(), a->dim());
        for (const auto & x : power)
            for (const auto & r : a->radical())
                next.add(a->multiply(x, r));
        power = next.basis();
        ++steps;
    }
    CHECK(power.empty());
    CHECK(steps == 3);
}

TEST_CASE("a prime not exceeding the dimension is rejected by the radical")
{
    auto q = parse_quiver_file(strata::testing::fixture_path("MP4"));
    auto a = build_algebra(q, PrimeField(7));
    CHECK_THROWS_AS((void) a->radical(), FieldTooSmall);
}

TEST_CASE("opposite algebras")
{
    auto dual = load("DUAL0");
    CHECK(dual->opposite()->data().products == dual->data().products);
    auto a = load("MP4");
    auto op = a->opposite();
    CHECK(op->dim() == 10);
    CHECK(op->opposite() == a);
    CHECK(validate(*op).empty());
    for (std::size_t i = 0; i < a->dim(); ++i)
        for (std::size_t j = 0; j < a->dim(); ++j)
            CHECK(op->multiply(op->basis_vector(i), op->basis_vector(j)) == a->multiply(a->basis_vector(j), a->basis_vector(i)));
    auto reversed = labels_of(*op);
    CHECK(std::find(reversed.begin(), reversed.end(), "alpha*beta") != reversed.end());
}

TEST_CASE("quotients by idempotent ideals")
{
    auto mp4 = load("MP4");
    auto q = quotient_by_idempotent_ideal<PrimeField>(mp4, 1);
    CHECK(q.quotient->dim() == 2);
    CHECK(q.retained == std::vector<std::size_t>{0});
    CHECK(validate(*q.quotient).empty());
    CHECK(q.quotient->radical().size() == 1);
    for (std::size_t i = 0; i < mp4->dim(); ++i)
        for (std::size_t j = 0; j < mp4->dim(); ++j)
            CHECK(q.projection.apply(mp4->multiply(mp4->basis_vector(i), mp4->basis_vector(j))) ==
                  q.quotient->multiply(q.projection.column(i), q.projection.column(j)));

    CHECK(quotient_by_idempotent_ideal<PrimeField>(load("DUAL0"), 0).quotient->dim() == 0);
    auto o2 = quotient_by_idempotent_ideal<PrimeField>(load("O2"), 1);
    CHECK(o2.quotient->dim() == 1);
}

TEST_CASE("regular modules")
{
    auto dual = regular_module(load("DUAL0"));
    CHECK(dual.dim() == 2);
    auto mp4 = load("MP4");
    Rng rng(1);
    auto parts = indecomposable_summands(regular_module(mp4), rng);
    std::vector<std::size_t> dims;
    for (auto & p : parts)
        dims.push_back(p.module.dim());
    std::sort(dims.begin(), dims.end());
    CHECK(dims == std::vector<std::size_t>{4, 6});
    CHECK(regular_module(load("O2")).dim() == 5);
}

TEST_CASE("algebra json round trip")
{
    auto a = load("MP4");
    auto j = to_json(*a);
    auto b = algebra_from_json(a->field(), j);
    CHECK(b->same_as(*a));
    CHECK(to_json(*b) == j);
}
