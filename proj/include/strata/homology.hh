#pragma once

#include <strata/module.hh>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace strata
{
    /// A projective or injective dimension: exact, a lower bound, or infinite.
    struct DimensionValue
    {
        enum class Kind
        {
            Exact,
            AtLeast,
            Infinite
        };

        Kind kind = Kind::Exact;
        std::size_t value = 0;

        [[nodiscard]] static auto exact(std::size_t v) -> DimensionValue { return {Kind::Exact, v}; }
        [[nodiscard]] static auto at_least(std::size_t v) -> DimensionValue { return {Kind::AtLeast, v}; }
        [[nodiscard]] static auto infinite() -> DimensionValue { return {Kind::Infinite, 0}; }

        [[nodiscard]] auto is_exact() const -> bool { return kind == Kind::Exact; }
        [[nodiscard]] auto is_infinite() const -> bool { return kind == Kind::Infinite; }
        [[nodiscard]] auto to_string() const -> std::string;
        [[nodiscard]] auto to_json() const -> nlohmann::json;

        auto operator==(const DimensionValue &) const -> bool = default;
    };

    /// Maximum of several dimensions, keeping track of bounds.
    [[nodiscard]] auto max_dimension(const std::vector<DimensionValue> & values) -> DimensionValue;

    inline constexpr std::size_t default_cap = 20;

    template <Field F>
    struct Resolution
    {
        enum class Status
        {
            Terminated,
            Truncated,
            Periodic
        };

        Module<F> target;
        // syzygies[0] is the target; syzygies[i + 1] is the kernel of covers[i]
        std::vector<Module<F>> syzygies;
        std::vector<Cover<F>> covers;
        // inclusion of syzygies[i + 1] into covers[i].source
        std::vector<Matrix<F>> inclusions;
        Status status = Status::Truncated;
        // for periodic resolutions, syzygies[offset + period] is isomorphic to syzygies[offset]
        std::size_t period = 0, offset = 0;
        std::size_t cap = 0;

        /// Number of indecomposable projectives at each vertex in the i-th term.
        [[nodiscard]] auto term(std::size_t i) const -> std::vector<std::size_t>;
        /// The map P_i -> P_{i-1}, for i >= 1.
        [[nodiscard]] auto differential(std::size_t i) const -> Matrix<F>;
        /// Index of the last nonzero term of a terminated resolution.
        [[nodiscard]] auto length() const -> std::size_t;
        [[nodiscard]] auto projective_dimension() const -> DimensionValue;
    };

    /// Minimal projective resolution with up to cap syzygies. With detect_periodic,
    /// each new syzygy is compared against the earlier ones.
    template <Field F>
    [[nodiscard]] auto minimal_resolution(const Module<F> & m, std::size_t cap = default_cap, bool detect_periodic = true, std::uint64_t seed = 1) -> Resolution<F>;

    /// dim Ext^i(M, N) from a projective resolution of M.
    template <Field F>
    [[nodiscard]] auto ext(const Module<F> & m, const Module<F> & n, std::size_t i) -> std::size_t;
    /// Ext^i computed from the given resolution of M, which must reach depth i + 1.
    template <Field F>
    [[nodiscard]] auto ext_from_resolution(const Resolution<F> & r, const Module<F> & n, std::size_t i) -> std::size_t;
    /// dim Ext^i(M, N) from an injective coresolution of N, computed over the opposite algebra.
    template <Field F>
    [[nodiscard]] auto ext_via_coresolution(const Module<F> & m, const Module<F> & n, std::size_t i) -> std::size_t;

    template <Field F>
    [[nodiscard]] auto projective_dimension(const Module<F> & m, std::size_t cap = default_cap) -> DimensionValue;
    template <Field F>
    [[nodiscard]] auto injective_dimension(const Module<F> & m, std::size_t cap = default_cap) -> DimensionValue;
    template <Field F>
    [[nodiscard]] auto global_dimension(const std::shared_ptr<const Algebra<F>> & a, std::size_t cap = default_cap) -> DimensionValue;

    template <Field F>
    [[nodiscard]] auto resolution_to_json(const Resolution<F> & r) -> nlohmann::json;
}
