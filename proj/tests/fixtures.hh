#pragma once

#include <strata/quiver.hh>

#include <string>

namespace strata::testing
{
    inline auto fixture_path(const std::string & name) -> std::string
    {
        return std::string(STRATA_FIXTURES) + "/" + name + ".qar";
    }

    inline auto load(const std::string & name) -> Algebra<PrimeField>::Ptr
    {
        auto q = parse_quiver_file(fixture_path(name));
        return build_algebra(q, PrimeField(q.field.prime));
    }

    inline auto load_rational(const std::string & name) -> Algebra<RationalField>::Ptr
    {
        return build_algebra(parse_quiver_file(fixture_path(name)), RationalField{});
    }
}
