/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef ECHELON_GUARD_RANDOM_HH
#define ECHELON_GUARD_RANDOM_HH 1

#include <cmath>
#include <cstdint>
#include <limits>

namespace echelon
{
    /// Version tag of the edge-colour sampler. Bump it if splitmix_mix,
    /// edge_stream or geometric_index ever change, since stored seeds would
    /// then produce different graphs.
    inline constexpr const char * sampler_version = "splitmix64-geometric/1";

    inline constexpr auto splitmix_mix(std::uint64_t z) -> std::uint64_t
    {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// SplitMix64. Small, splittable through derive(), and bit-identical on
    /// every platform.
    class SplitMix64
    {
        private:
            std::uint64_t _state;

        public:
            using result_type = std::uint64_t;

            explicit constexpr SplitMix64(std::uint64_t seed) :
                _state(seed)
            {
            }

            static constexpr auto min() -> result_type { return 0; }
            static constexpr auto max() -> result_type { return std::numeric_limits<result_type>::max(); }

            constexpr auto operator() () -> result_type
            {
                _state += 0x9e3779b97f4a7c15ULL;
                std::uint64_t z = _state;
                z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
                z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
                return z ^ (z >> 31);
            }

            /// Uniform double in (0, 1].
            auto next_unit() -> double
            {
                return (static_cast<double>((*this)() >> 11) + 1.0) * 0x1.0p-53;
            }
    };

    /// Independent stream for the unordered pair {i, j}; the result does not
    /// depend on the order of i and j or on how many other edges were drawn.
    inline constexpr auto edge_stream(std::uint64_t seed, std::uint64_t i, std::uint64_t j) -> SplitMix64
    {
        if (i > j) {
            auto t = i;
            i = j;
            j = t;
        }
        std::uint64_t h = splitmix_mix(seed);
        h = splitmix_mix(h ^ i);
        h = splitmix_mix(h ^ (j * 0xd1b54a32d192ed03ULL));
        return SplitMix64(h);
    }

    /// Inverse-CDF draw of an index i >= 1 with P[i] = (1 - p)^(i - 1) p.
    inline auto geometric_index(double p, double unit) -> std::uint64_t
    {
        if (p >= 1.0)
            return 1;
        double k = std::floor(std::log(unit) / std::log1p(-p));
        if (! (k < 9.0e18))
            return std::numeric_limits<std::uint64_t>::max();
        return static_cast<std::uint64_t>(k) + 1;
    }
}

#endif
