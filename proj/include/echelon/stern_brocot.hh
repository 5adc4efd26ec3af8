/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef ECHELON_GUARD_STERN_BROCOT_HH
#define ECHELON_GUARD_STERN_BROCOT_HH 1

#include <echelon/errors.hh>
#include <echelon/rational.hh>

#include <cstdint>
#include <optional>

namespace echelon
{
    /// Stern's diatomic sequence.
    inline constexpr auto fusc(std::uint64_t n) -> std::uint64_t
    {
        std::uint64_t a = 1, b = 0;
        while (n > 0) {
            if (n & 1)
                b += a;
            else
                a += b;
            n >>= 1;
        }
        return b;
    }

    /// The index-th positive rational (index >= 1) in Calkin-Wilf order:
    /// 1, 1/2, 2, 1/3, 3/2, 2/3, 3, 1/4, ...
    inline auto calkin_wilf(std::uint64_t index) -> Rational
    {
        if (index == 0)
            throw EchelonError(ErrorCode::bad_argument, "Calkin-Wilf indices start at 1");
        return Rational(Integer(fusc(index)), Integer(fusc(index + 1)));
    }

    /// Position of q > 0 in the Calkin-Wilf enumeration, when it fits in 64
    /// bits. Walks from q up to the root 1/1 of the Calkin-Wilf tree, where
    /// a/(a+b) is a left child and (a+b)/b a right child.
    inline auto calkin_wilf_index(const Rational & q) -> std::optional<std::uint64_t>
    {
        if (q <= 0)
            return std::nullopt;
        Integer a = boost::multiprecision::numerator(q), b = boost::multiprecision::denominator(q);

        // bits from the leaf upwards
        std::uint64_t bits = 0;
        unsigned depth = 0;
        while (! (a == 1 && b == 1)) {
            if (depth >= 63)
                return std::nullopt;
            if (a < b) {
                b -= a;
            }
            else {
                a -= b;
                bits |= std::uint64_t(1) << depth;
            }
            ++depth;
        }

        std::uint64_t index = 1;
        for (unsigned d = depth ; d-- > 0 ; )
            index = (index << 1) | ((bits >> d) & 1);
        return index;
    }

    inline auto floor_of(const Rational & q) -> Integer
    {
        Integer n = boost::multiprecision::numerator(q), d = boost::multiprecision::denominator(q);
        Integer f = n / d;
        if (n < 0 && f * d != n)
            --f;
        return f;
    }

    /// The simplest rational strictly between low and high (0 <= low < high):
    /// the first node of the Stern-Brocot tree that falls inside, which is
    /// also the one with the smallest Calkin-Wilf index.
    inline auto simplest_between(const Rational & low, const Rational & high) -> Rational
    {
        if (low < 0 || ! (low < high))
            throw EchelonError(ErrorCode::bad_argument, "simplest_between needs 0 <= low < high");

        Integer next_integer = floor_of(low) + 1;
        if (Rational(next_integer) < high)
            return Rational(next_integer);

        // low and high share the integer part; recurse on the reciprocals of
        // the fractional parts
        Integer whole = floor_of(low);
        Rational a = low - Rational(whole), b = high - Rational(whole);
        if (a == 0) {
            Integer k = floor_of(1 / b) + 1;
            return Rational(whole) + Rational(Integer(1), k);
        }
        return Rational(whole) + 1 / simplest_between(1 / b, 1 / a);
    }
}

#endif
