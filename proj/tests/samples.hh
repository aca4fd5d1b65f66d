#pragma once

#include <strata/tilting.hh>

#include <optional>
#include <vector>

namespace strata::testing
{
    inline auto homogeneous_vector(const Module<PrimeField> & m, std::size_t v, Rng & rng) -> Vector<PrimeField>
    {
        const auto & f = m.field();
        Vector<PrimeField> x(m.dim(), f.zero());
        for (auto i : m.indices_at(v))
            x[i] = f.from_random(rng.next());
        return x;
    }

    inline auto pool_of(const Algebra<PrimeField>::Ptr & a) -> std::vector<Module<PrimeField>>
    {
        std::vector<Module<PrimeField>> pool;
        for (std::size_t v = 0; v < a->vertex_count(); ++v) {
            pool.push_back(projective(a, v));
            pool.push_back(injective(a, v));
            for (auto kind : {StratKind::Standard, StratKind::Costandard})
                pool.push_back(strat_module(a, kind, v));
            for (std::size_t w = 0; w < a->vertex_count(); ++w)
                pool.push_back(direct_sum(std::vector<Module<PrimeField>>{projective(a, v), injective(a, w)}));
        }
        return pool;
    }

    // random quotients and submodules of small sums of projectives and injectives, dim <= 12
    inline auto random_modules(const Algebra<PrimeField>::Ptr & a, std::size_t count, std::uint64_t seed) -> std::vector<Module<PrimeField>>
    {
        Rng rng(seed);
        auto pool = pool_of(a);
        std::vector<Module<PrimeField>> out;
        while (out.size() < count) {
            const auto & base = pool[rng.below(pool.size())];
            std::vector<Vector<PrimeField>> gens;
            auto k = 1 + rng.below(2);
            for (std::size_t i = 0; i < k; ++i)
                gens.push_back(homogeneous_vector(base, rng.below(a->vertex_count()), rng));
            auto op = rng.below(3);
            std::optional<Module<PrimeField>> m;
            if (op == 0)
                m = quotient_module(base, submodule_space(base, gens)).module;
            else if (op == 1)
                m = submodule_generated(base, gens).module;
            else
                m = base;
            if (m->dim() >= 1 && m->dim() <= 12)
                out.push_back(*m);
        }
        return out;
    }

    inline auto family_of(const Algebra<PrimeField>::Ptr & a) -> std::vector<Module<PrimeField>>
    {
        std::vector<Module<PrimeField>> out;
        for (std::size_t v = 0; v < a->vertex_count(); ++v) {
            out.push_back(simple(a, v));
            out.push_back(projective(a, v));
            out.push_back(injective(a, v));
            for (auto kind : {StratKind::Standard, StratKind::ProperStandard, StratKind::Costandard, StratKind::ProperCostandard})
                out.push_back(strat_module(a, kind, v));
        }
        if (is_sss(a).sss)
            for (auto & t : characteristic_tilting(a).summands)
                out.push_back(t);
        return out;
    }
}
