#include <strata/errors.hh>
#include <strata/field.hh>

#include <charconv>
#include <utility>

using std::int64_t;
using std::string;
using std::uint32_t;
using std::uint64_t;

namespace strata
{
    auto FieldSpec::to_string() const -> string
    {
        if (kind == Kind::Rational)
            return "rational";
        return "GF(" + std::to_string(prime) + ")";
    }

    auto is_prime(uint64_t n) -> bool
    {
        if (n < 2)
            return false;
        for (uint64_t d = 2; d * d <= n; ++d)
            if (n % d == 0)
                return false;
        return true;
    }

    auto check_field_spec(const FieldSpec & spec, uint32_t minimum_prime) -> void
    {
        if (spec.kind == FieldSpec::Kind::Rational)
            return;
        if (! is_prime(spec.prime))
            throw InputError(std::to_string(spec.prime) + " is not prime");
        if (spec.prime < minimum_prime)
            throw InputError("prime " + std::to_string(spec.prime) + " is below the configured minimum " + std::to_string(minimum_prime));
        if (spec.prime >= (uint32_t{1} << 31))
            throw InputError("prime " + std::to_string(spec.prime) + " does not fit in 31 bits");
    }

    PrimeField::PrimeField(uint32_t p) :
        _p(p)
    {
        if (p < 2 || p >= (uint32_t{1} << 31) || ! is_prime(p))
            throw InputError("invalid prime field characteristic " + std::to_string(p));
    }

    auto PrimeField::from_int(int64_t v) const -> Element
    {
        auto r = v % static_cast<int64_t>(_p);
        if (r < 0)
            r += _p;
        return static_cast<Element>(r);
    }

    auto PrimeField::from_ratio(int64_t num, int64_t den) const -> Element
    {
        if (den == 0)
            throw InputError("zero denominator");
        auto d = from_int(den);
        if (d == 0)
            throw InputError("denominator vanishes modulo " + std::to_string(_p));
        return mul(from_int(num), inv(d));
    }

    auto PrimeField::inv(Element a) const -> Element
    {
        if (a == 0)
            throw std::domain_error("inverse of zero in GF(p)");
        // extended Euclid on signed 64-bit values
        int64_t t = 0, new_t = 1, r = _p, new_r = a;
        while (new_r != 0) {
            auto q = r / new_r;
            t = std::exchange(new_t, t - q * new_t);
            r = std::exchange(new_r, r - q * new_r);
        }
        if (t < 0)
            t += _p;
        return static_cast<Element>(t);
    }

    auto PrimeField::to_string(Element a) const -> string
    {
        if (a > _p / 2)
            return "-" + std::to_string(_p - a);
        return std::to_string(a);
    }

    auto PrimeField::parse(const string & text) const -> Element
    {
        auto slash = text.find('/');
        auto parse_int = [&](const string & s) -> int64_t {
            int64_t v = 0;
            auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (ec != std::errc{} || ptr != s.data() + s.size())
                throw InputError("bad scalar '" + text + "'");
            return v;
        };
        if (slash == string::npos)
            return from_int(parse_int(text));
        return from_ratio(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
    }

    auto RationalField::from_int(int64_t v) const -> Element
    {
        return Element{mpz_class{std::to_string(v)}};
    }

    auto RationalField::from_ratio(int64_t num, int64_t den) const -> Element
    {
        if (den == 0)
            throw InputError("zero denominator");
        Element r{mpz_class{std::to_string(num)}, mpz_class{std::to_string(den)}};
        r.canonicalize();
        return r;
    }

    auto RationalField::inv(const Element & a) const -> Element
    {
        if (sgn(a) == 0)
            throw std::domain_error("inverse of zero in Q");
        return Element{1} / a;
    }

    auto RationalField::parse(const string & text) const -> Element
    {
        try {
            Element r{text};
            r.canonicalize();
            if (sgn(r.get_den()) == 0)
                throw InputError("zero denominator in '" + text + "'");
            return r;
        }
        catch (const std::invalid_argument &) {
            throw InputError("bad scalar '" + text + "'");
        }
    }
}
