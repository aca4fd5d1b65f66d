#include <strata/matrix.hh>

#include <doctest.h>

using namespace strata;

using PM = Matrix<PrimeField>;
using QM = Matrix<RationalField>;

namespace
{
    auto random_matrix(const PrimeField & f, std::size_t r, std::size_t c, Rng & rng, std::uint64_t density) -> PM
    {
        PM m(f, r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                if (rng.below(density) == 0)
                    m(i, j) = f.from_random(rng.next());
        return m;
    }
}

TEST_CASE("row reduction examples")
{
    PrimeField f;
    auto id = rref(PM::identity(f, 2));
    CHECK(id.rank == 2);
    CHECK(id.pivot_cols == std::vector<std::size_t>{0, 1});
    auto zero = rref(PM(f, 3, 4));
    CHECK(zero.rank == 0);
    CHECK(zero.pivot_cols.empty());
    PrimeField f5(5);
    CHECK(rank(PM::from_ints(f5, {{2, 4}, {1, 2}})) == 1);
    auto r = rref(PM::from_ints(f5, {{2, 4}, {1, 2}}));
    CHECK(r.reduced == PM::from_ints(f5, {{1, 2}, {0, 0}}));
}

TEST_CASE("kernel examples")
{
    PrimeField f;
    CHECK(kernel_basis(PM::identity(f, 3)).empty());
    CHECK(kernel_basis(PM(f, 2, 3)).size() == 3);
    PrimeField f7(7);
    auto k = kernel_basis(PM::from_ints(f7, {{1, 1}}));
    REQUIRE(k.size() == 1);
    CHECK(f7.add(k[0][0], k[0][1]) == 0);
    CHECK(k[0][0] != 0);
}

TEST_CASE("solve examples")
{
    PrimeField f;
    auto b = PM::from_ints(f, {{3, 1}, {5, 9}});
    CHECK(solve(PM::identity(f, 2), b) == std::optional<PM>(b));
    CHECK_FALSE(solve(PM(f, 2, 2), PM::from_ints(f, {{1}, {0}})));

    RationalField q;
    auto x = solve(QM::from_ints(q, {{1, 2}, {2, 4}}), QM::from_ints(q, {{1}, {2}}));
    REQUIRE(x);
    CHECK((*x)(0, 0) + 2 * (*x)(1, 0) == 1);
    CHECK_FALSE(solve(QM::from_ints(q, {{1, 2}, {2, 4}}), QM::from_ints(q, {{1}, {3}})));
}

TEST_CASE("rational arithmetic stays exact")
{
    RationalField q;
    auto m = QM::from_ints(q, {{3, 1}, {1, 3}});
    auto inv = inverse(m);
    REQUIRE(inv);
    CHECK((*inv)(0, 0) == mpq_class(3, 8));
    CHECK((m * *inv).is_identity());
}

TEST_CASE("linear algebra invariants on random matrices")
{
    PrimeField f;
    Rng rng(2024);
    for (int t = 0; t < 200; ++t) {
        auto r = 1 + rng.below(7), c = 1 + rng.below(7);
        auto m = random_matrix(f, r, c, rng, 1 + rng.below(3));
        auto red = rref(m);
        CHECK(rref(red.reduced).reduced == red.reduced);
        auto ker = kernel_basis(m);
        CHECK(red.rank + ker.size() == c);
        for (const auto & v : ker)
            CHECK(is_zero_vector(f, m.apply(v)));
        auto rhs = random_matrix(f, r, 2, rng, 1);
        if (auto x = solve(m, rhs))
            CHECK(m * *x == rhs);
        else
            CHECK(rank(PM::hstack(m, rhs)) > red.rank);
        auto image = m * random_matrix(f, c, 2, rng, 1);
        auto x = solve(m, image);
        REQUIRE(x);
        CHECK(m * *x == image);
    }
}

TEST_CASE("subspaces reduce against their pivots")
{
    PrimeField f;
    Subspace<PrimeField> s(f, 3);
    CHECK(s.add({1, 1, 0}));
    CHECK(s.add({0, 1, 1}));
    CHECK_FALSE(s.add({1, 2, 1}));
    CHECK(s.dim() == 2);
    CHECK(s.contains({2, 0, f.neg(2)}));
    auto coords = s.coordinates({1, 0, f.neg(1)});
    REQUIRE(coords);
    CHECK(s.non_pivots().size() == 1);
}

TEST_CASE("seeded generator is reproducible")
{
    Rng a(5), b(5);
    for (int i = 0; i < 10; ++i)
        CHECK(a.next() == b.next());
    // first output of mt19937_64 with the default seed
    Rng standard(5489);
    CHECK(standard.next() == 14514284786278117030ULL);
}
