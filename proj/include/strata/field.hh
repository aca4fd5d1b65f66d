#pragma once

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <string>

namespace strata
{
    /// Runtime description of the ground field, as read from an input file.
    struct FieldSpec
    {
        enum class Kind
        {
            Prime,
            Rational
        };

        Kind kind = Kind::Prime;
        std::uint32_t prime = 32003;

        static constexpr std::uint32_t default_prime = 32003;

        [[nodiscard]] auto to_string() const -> std::string;
        auto operator==(const FieldSpec &) const -> bool = default;
    };

    [[nodiscard]] auto is_prime(std::uint64_t n) -> bool;

    /// Validates a prime field request against the configured minimum. Throws
    /// InputError on failure.
    auto check_field_spec(const FieldSpec & spec, std::uint32_t minimum_prime = FieldSpec::default_prime) -> void;

    /// GF(p) with p < 2^31; elements are canonical representatives 0 <= e < p.
    class PrimeField
    {
    public:
        using Element = std::uint32_t;

        explicit PrimeField(std::uint32_t p = FieldSpec::default_prime);

        [[nodiscard]] auto characteristic() const -> std::uint32_t { return _p; }
        [[nodiscard]] auto spec() const -> FieldSpec { return FieldSpec{FieldSpec::Kind::Prime, _p}; }

        [[nodiscard]] auto zero() const -> Element { return 0; }
        [[nodiscard]] auto one() const -> Element { return 1; }
        [[nodiscard]] auto from_int(std::int64_t v) const -> Element;
        [[nodiscard]] auto from_ratio(std::int64_t num, std::int64_t den) const -> Element;

        [[nodiscard]] auto add(Element a, Element b) const -> Element
        {
            auto s = a + b;
            return s >= _p ? s - _p : s;
        }
        [[nodiscard]] auto sub(Element a, Element b) const -> Element { return a >= b ? a - b : a + _p - b; }
        [[nodiscard]] auto neg(Element a) const -> Element { return a == 0 ? 0 : _p - a; }
        [[nodiscard]] auto mul(Element a, Element b) const -> Element
        {
            return static_cast<Element>((std::uint64_t{a} * b) % _p);
        }
        [[nodiscard]] auto inv(Element a) const -> Element;
        [[nodiscard]] auto is_zero(Element a) const -> bool { return a == 0; }
        [[nodiscard]] auto equal(Element a, Element b) const -> bool { return a == b; }

        /// Signed representative in (-p/2, p/2], used for printing.
        [[nodiscard]] auto to_string(Element a) const -> std::string;
        [[nodiscard]] auto parse(const std::string & text) const -> Element;

        /// Element drawn from a raw 64-bit random word.
        [[nodiscard]] auto from_random(std::uint64_t word) const -> Element { return static_cast<Element>(word % _p); }

        /// Distinct elements 0, 1, ..., k-1 exist for k <= p.
        [[nodiscard]] auto size_at_least(std::uint64_t k) const -> bool { return k <= _p; }

        auto operator==(const PrimeField &) const -> bool = default;

    private:
        std::uint32_t _p;
    };

    /// The rationals, with GMP-backed reduced fractions.
    class RationalField
    {
    public:
        using Element = mpq_class;

        [[nodiscard]] auto spec() const -> FieldSpec { return FieldSpec{FieldSpec::Kind::Rational, 0}; }
        [[nodiscard]] auto characteristic() const -> std::uint32_t { return 0; }

        [[nodiscard]] auto zero() const -> Element { return Element{0}; }
        [[nodiscard]] auto one() const -> Element { return Element{1}; }
        [[nodiscard]] auto from_int(std::int64_t v) const -> Element;
        [[nodiscard]] auto from_ratio(std::int64_t num, std::int64_t den) const -> Element;

        [[nodiscard]] auto add(const Element & a, const Element & b) const -> Element { return a + b; }
        [[nodiscard]] auto sub(const Element & a, const Element & b) const -> Element { return a - b; }
        [[nodiscard]] auto neg(const Element & a) const -> Element { return -a; }
        [[nodiscard]] auto mul(const Element & a, const Element & b) const -> Element { return a * b; }
        [[nodiscard]] auto inv(const Element & a) const -> Element;
        [[nodiscard]] auto is_zero(const Element & a) const -> bool { return sgn(a) == 0; }
        [[nodiscard]] auto equal(const Element & a, const Element & b) const -> bool { return a == b; }

        [[nodiscard]] auto to_string(const Element & a) const -> std::string { return a.get_str(); }
        [[nodiscard]] auto parse(const std::string & text) const -> Element;

        /// Small integers keep rational searches from exploding in height.
        [[nodiscard]] auto from_random(std::uint64_t word) const -> Element
        {
            return Element{static_cast<long>(word % 2003) - 1001};
        }

        [[nodiscard]] auto size_at_least(std::uint64_t) const -> bool { return true; }

        auto operator==(const RationalField &) const -> bool { return true; }
    };

    template <typename F>
    concept Field = requires(const F f, const typename F::Element a, const typename F::Element b) {
        { f.zero() } -> std::convertible_to<typename F::Element>;
        { f.one() } -> std::convertible_to<typename F::Element>;
        { f.add(a, b) } -> std::convertible_to<typename F::Element>;
        { f.sub(a, b) } -> std::convertible_to<typename F::Element>;
        { f.mul(a, b) } -> std::convertible_to<typename F::Element>;
        { f.neg(a) } -> std::convertible_to<typename F::Element>;
        { f.inv(a) } -> std::convertible_to<typename F::Element>;
        { f.is_zero(a) } -> std::same_as<bool>;
        { f.from_int(std::int64_t{}) } -> std::convertible_to<typename F::Element>;
        { f.to_string(a) } -> std::convertible_to<std::string>;
        { f.spec() } -> std::same_as<FieldSpec>;
    };

    static_assert(Field<PrimeField>);
    static_assert(Field<RationalField>);
}
