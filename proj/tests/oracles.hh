/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef ECHELON_GUARD_TESTS_ORACLES_HH
#define ECHELON_GUARD_TESTS_ORACLES_HH 1

// Deliberately naive reference implementations. None of these call into the
// library's algorithms beyond reading a space's rank table, so agreement with
// the library is evidence rather than tautology.

#include <echelon/space.hh>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <vector>

namespace oracle
{
    using echelon::EchelonedSpace;
    using echelon::PointId;
    using echelon::PointMap;
    using echelon::Rank;

    using Table = std::vector<Rank>;

    inline auto pairs_of(std::size_t m) -> std::vector<std::pair<PointId, PointId>>
    {
        std::vector<std::pair<PointId, PointId>> result;
        for (PointId i = 1 ; i < m ; ++i)
            for (PointId j = 0 ; j < i ; ++j)
                result.emplace_back(i, j);
        return result;
    }

    /// Ordered set partitions of an n-set: a(n) = sum_k C(n,k) a(n-k).
    inline auto fubini(std::size_t n) -> std::uint64_t
    {
        std::vector<std::uint64_t> a(n + 1, 0);
        a[0] = 1;
        for (std::size_t i = 1 ; i <= n ; ++i) {
            std::uint64_t binom = 1;
            for (std::size_t k = 1 ; k <= i ; ++k) {
                binom = binom * (i - k + 1) / k;
                a[i] += binom * a[i - k];
            }
        }
        return a[n];
    }

    /// All tables on the pairs of m points with values in 1..p whose value
    /// set is exactly 1..max: a direct filter over p^p candidates.
    inline auto labelled_tables(std::size_t m) -> std::set<Table>
    {
        const std::size_t p = m * (m - 1) / 2;
        std::set<Table> result;
        if (p == 0) {
            result.insert(Table{});
            return result;
        }
        Table t(p, 1);
        while (true) {
            Rank top = *std::max_element(t.begin(), t.end());
            std::vector<bool> seen(top + 1, false);
            for (auto v : t)
                seen[v] = true;
            if (std::all_of(seen.begin() + 1, seen.end(), [] (bool b) { return b; }))
                result.insert(t);

            std::size_t k = 0;
            while (k < p && t[k] == p)
                t[k++] = 1;
            if (k == p)
                break;
            ++t[k];
        }
        return result;
    }

    inline auto rank_of(const Table & t, PointId i, PointId j) -> Rank
    {
        if (i == j)
            return 0;
        if (i < j)
            std::swap(i, j);
        return t[i * (i - 1) / 2 + j];
    }

    /// The table of the space transported along the bijection perm.
    inline auto permuted(const Table & t, std::size_t m, const PointMap & perm) -> Table
    {
        Table result(t.size());
        for (auto [i, j] : pairs_of(m)) {
            PointId a = perm[i], b = perm[j];
            if (a < b)
                std::swap(a, b);
            result[a * (a - 1) / 2 + b] = rank_of(t, i, j);
        }
        return result;
    }

    /// Lexicographically least table over all relabellings.
    inline auto orbit_minimum(const Table & t, std::size_t m) -> Table
    {
        PointMap perm(m);
        std::iota(perm.begin(), perm.end(), 0);
        Table best = t;
        do
            best = std::min(best, permuted(t, m, perm));
        while (std::next_permutation(perm.begin(), perm.end()));
        return best;
    }

    inline auto isomorphism_types(std::size_t m) -> std::size_t
    {
        std::set<Table> types;
        for (auto & t : labelled_tables(m))
            types.insert(orbit_minimum(t, m));
        return types.size();
    }

    inline auto brute_isomorphism(const EchelonedSpace & x, const EchelonedSpace & y) -> std::optional<PointMap>
    {
        if (x.size() != y.size())
            return std::nullopt;
        PointMap perm(x.size());
        std::iota(perm.begin(), perm.end(), 0);
        do {
            bool ok = true;
            for (auto [i, j] : pairs_of(x.size()))
                if (x.rank(i, j) != y.rank(perm[i], perm[j])) {
                    ok = false;
                    break;
                }
            if (ok)
                return perm;
        } while (std::next_permutation(perm.begin(), perm.end()));
        return std::nullopt;
    }

    /// Definition of homomorphism read literally on the 4-ary relation:
    /// {a,b} <= {c,d} implies {h a, h b} <= {h c, h d}, over all point quadruples
    /// (diagonal pairs included).
    inline auto brute_homomorphism(const EchelonedSpace & x, const EchelonedSpace & y, const PointMap & h) -> bool
    {
        const std::size_t m = x.size();
        for (PointId a = 0 ; a < m ; ++a)
            for (PointId b = 0 ; b < m ; ++b)
                for (PointId c = 0 ; c < m ; ++c)
                    for (PointId d = 0 ; d < m ; ++d)
                        if (x.rank(a, b) <= x.rank(c, d) && ! (y.rank(h[a], h[b]) <= y.rank(h[c], h[d])))
                            return false;
        return true;
    }

    /// Injective and reflecting the relation as well as preserving it.
    inline auto brute_embedding(const EchelonedSpace & x, const EchelonedSpace & y, const PointMap & h) -> bool
    {
        const std::size_t m = x.size();
        if (std::set<PointId>(h.begin(), h.end()).size() != m)
            return false;
        for (PointId a = 0 ; a < m ; ++a)
            for (PointId b = 0 ; b < m ; ++b)
                for (PointId c = 0 ; c < m ; ++c)
                    for (PointId d = 0 ; d < m ; ++d)
                        if ((x.rank(a, b) <= x.rank(c, d)) != (y.rank(h[a], h[b]) <= y.rank(h[c], h[d])))
                            return false;
        return true;
    }

    /// Every map from an m-set into an n-set, as a list.
    inline auto all_maps(std::size_t m, std::size_t n) -> std::vector<PointMap>
    {
        std::vector<PointMap> result;
        PointMap h(m, 0);
        while (true) {
            result.push_back(h);
            std::size_t k = 0;
            while (k < m && h[k] == n - 1)
                h[k++] = 0;
            if (k == m)
                break;
            ++h[k];
        }
        return result;
    }

    /// A random space on m points: random values, then densified by hand.
    template <typename Rng_>
    auto random_space(Rng_ & rng, std::size_t m, std::size_t spread = 0) -> EchelonedSpace
    {
        const std::size_t p = m * (m - 1) / 2;
        if (spread == 0)
            spread = std::max<std::size_t>(p, 1);
        std::uniform_int_distribution<std::size_t> value(1, spread);
        std::vector<std::size_t> raw(p);
        for (auto & v : raw)
            v = value(rng);
        std::vector<std::size_t> distinct = raw;
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        Table t(p);
        for (std::size_t k = 0 ; k < p ; ++k)
            t[k] = static_cast<Rank>(std::lower_bound(distinct.begin(), distinct.end(), raw[k]) - distinct.begin() + 1);
        return EchelonedSpace::from_ranks(m, static_cast<Rank>(distinct.size()), t);
    }

    template <typename Rng_>
    auto random_permutation(Rng_ & rng, std::size_t m) -> PointMap
    {
        PointMap perm(m);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        return perm;
    }

    inline auto transported(const EchelonedSpace & x, const PointMap & perm) -> EchelonedSpace
    {
        return EchelonedSpace::from_ranks(x.size(), x.rank_count(), permuted(x.lower_triangle(), x.size(), perm));
    }
}

#endif
