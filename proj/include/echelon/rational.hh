/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef ECHELON_GUARD_RATIONAL_HH
#define ECHELON_GUARD_RATIONAL_HH 1

#include <echelon/errors.hh>

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace echelon
{
    /// Exact arbitrary-precision rational. Distances and limit labels never
    /// touch floating point.
    using Rational = boost::multiprecision::cpp_rational;
    using Integer = boost::multiprecision::cpp_int;

    inline auto make_rational(std::int64_t num, std::int64_t den = 1) -> Rational
    {
        return Rational(Integer(num), Integer(den));
    }

    /// Always "p/q", so that documents have a single rational spelling.
    inline auto to_string(const Rational & q) -> std::string
    {
        return boost::multiprecision::numerator(q).str() + "/" + boost::multiprecision::denominator(q).str();
    }

    /// Accepts "p/q" or a bare integer "p".
    inline auto parse_rational(std::string_view text) -> Rational
    {
        auto parse_integer = [&] (std::string_view s) -> Integer {
            std::string_view digits = s;
            if (! digits.empty() && (digits.front() == '-' || digits.front() == '+'))
                digits.remove_prefix(1);
            if (digits.empty() || digits.find_first_not_of("0123456789") != std::string_view::npos)
                throw EchelonError(ErrorCode::malformed_json, "not a rational: '" + std::string(text) + "'");
            return Integer(std::string(s));
        };

        auto slash = text.find('/');
        if (slash == std::string_view::npos)
            return Rational(parse_integer(text));

        Integer num = parse_integer(text.substr(0, slash));
        Integer den = parse_integer(text.substr(slash + 1));
        if (den == 0)
            throw EchelonError(ErrorCode::malformed_json, "zero denominator in '" + std::string(text) + "'");
        return Rational(num, den);
    }
}

#endif
