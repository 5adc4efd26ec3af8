/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef ECHELON_GUARD_SPACE_HH
#define ECHELON_GUARD_SPACE_HH 1

#include <echelon/errors.hh>

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace echelon
{
    using PointId = std::uint32_t;

    /// Position of a pair's class in the echeloning. 0 is the diagonal class,
    /// 1..n the nonbottom classes in increasing order.
    using Rank = std::uint32_t;

    /// Image of every source point, indexed by source point.
    using PointMap = std::vector<PointId>;

    /// Map between echelonings, indexed by source rank; entry 0 is always 0.
    using RankMap = std::vector<Rank>;

    /// Index of the unordered pair {i, j}, i != j, in a strict lower triangle
    /// stored row by row: (1,0), (2,0), (2,1), (3,0), ...
    inline constexpr auto pair_index(std::size_t i, std::size_t j) -> std::size_t
    {
        if (i < j)
            std::swap(i, j);
        return i * (i - 1) / 2 + j;
    }

    inline constexpr auto pair_count(std::size_t points) -> std::size_t
    {
        return points * (points - 1) / 2;
    }

    struct Diagnostic
    {
        ErrorCode code;
        std::string message;
    };

    /// Checks a strict-lower-triangle rank table: right shape, no zero off
    /// the diagonal, ranks within 1..n, and every rank 1..n attained.
    inline auto diagnose_ranks(std::size_t points, Rank ranks, std::span<const Rank> lower) -> std::optional<Diagnostic>
    {
        if (points < 1)
            return Diagnostic{ ErrorCode::bad_point_count, "an echeloned space needs at least one point" };
        if (lower.size() != pair_count(points))
            return Diagnostic{ ErrorCode::bad_shape, "expected " + std::to_string(pair_count(points)) + " pair ranks, got "
                + std::to_string(lower.size()) };
        if (points == 1 && ranks != 0)
            return Diagnostic{ ErrorCode::rank_gap, "a one-point space has no nonbottom ranks" };

        std::vector<bool> seen(ranks + 1, false);
        for (std::size_t i = 1 ; i < points ; ++i)
            for (std::size_t j = 0 ; j < i ; ++j) {
                Rank r = lower[pair_index(i, j)];
                if (r == 0)
                    return Diagnostic{ ErrorCode::zero_off_diagonal, "pair (" + std::to_string(i) + "," + std::to_string(j)
                        + ") has the diagonal rank 0" };
                if (r > ranks)
                    return Diagnostic{ ErrorCode::rank_out_of_range, "pair (" + std::to_string(i) + "," + std::to_string(j)
                        + ") has rank " + std::to_string(r) + " > " + std::to_string(ranks) };
                seen[r] = true;
            }

        for (Rank r = 1 ; r <= ranks ; ++r)
            if (! seen[r])
                return Diagnostic{ ErrorCode::rank_gap, "rank " + std::to_string(r) + " is not attained by any pair" };

        return std::nullopt;
    }

    /**
     * A finite echeloned space, stored as its echeloning map: a symmetric,
     * surjective rank table on unordered pairs with rank 0 exactly on the
     * diagonal. Immutable once constructed.
     */
    class EchelonedSpace
    {
        private:
            std::size_t _points = 1;
            Rank _ranks = 0;
            std::vector<Rank> _eta;

            EchelonedSpace(std::size_t points, Rank ranks, std::vector<Rank> && eta) :
                _points(points),
                _ranks(ranks),
                _eta(std::move(eta))
            {
            }

        public:
            EchelonedSpace() = default;

            /// Validating constructor; throws EchelonError with the
            /// diagnostic code on a malformed table.
            static auto from_ranks(std::size_t points, Rank ranks, std::vector<Rank> lower) -> EchelonedSpace
            {
                if (auto d = diagnose_ranks(points, ranks, lower))
                    throw EchelonError(d->code, d->message);
                return EchelonedSpace(points, ranks, std::move(lower));
            }

            /// As from_ranks, with n taken as the largest rank present.
            static auto from_ranks(std::size_t points, std::vector<Rank> lower) -> EchelonedSpace
            {
                Rank n = lower.empty() ? 0 : *std::max_element(lower.begin(), lower.end());
                return from_ranks(points, n, std::move(lower));
            }

            static auto single_point() -> EchelonedSpace
            {
                return EchelonedSpace{};
            }

            auto size() const -> std::size_t { return _points; }
            auto rank_count() const -> Rank { return _ranks; }

            auto rank(PointId x, PointId y) const -> Rank
            {
                return x == y ? 0 : _eta[pair_index(x, y)];
            }

            auto lower_triangle() const -> const std::vector<Rank> & { return _eta; }

            auto operator== (const EchelonedSpace &) const -> bool = default;
    };

    /// Dense re-labelling of arbitrary comparable weights on the pairs of an
    /// m-point set. Weights come as a strict lower triangle, in pair_index
    /// order. Equal weights share a rank; larger weights get larger ranks.
    template <std::totally_ordered Weight>
    auto from_weights(std::size_t points, std::span<const Weight> lower) -> EchelonedSpace
    {
        if (points < 1)
            throw EchelonError(ErrorCode::bad_point_count, "an echeloned space needs at least one point");
        if (lower.size() != pair_count(points))
            throw EchelonError(ErrorCode::bad_shape, "expected " + std::to_string(pair_count(points)) + " pair weights, got "
                    + std::to_string(lower.size()));

        // NaN and friends: a weight that does not equal itself cannot be ranked
        for (std::size_t k = 0 ; k < lower.size() ; ++k)
            if (! (lower[k] == lower[k]))
                throw EchelonError(ErrorCode::incomparable_weight, "weight of pair #" + std::to_string(k) + " is not comparable");

        std::vector<std::size_t> by_weight(lower.size());
        std::iota(by_weight.begin(), by_weight.end(), 0);
        std::stable_sort(by_weight.begin(), by_weight.end(), [&] (std::size_t a, std::size_t b) {
                return lower[a] < lower[b];
                });

        std::vector<Rank> ranks(lower.size(), 0);
        Rank current = 0;
        for (std::size_t k = 0 ; k < by_weight.size() ; ++k) {
            if (k == 0 || lower[by_weight[k - 1]] < lower[by_weight[k]])
                ++current;
            ranks[by_weight[k]] = current;
        }

        return EchelonedSpace::from_ranks(points, current, std::move(ranks));
    }

    template <std::totally_ordered Weight>
    auto from_weights(std::size_t points, const std::vector<Weight> & lower) -> EchelonedSpace
    {
        return from_weights(points, std::span<const Weight>(lower));
    }

    /// Weight given as a callable on point pairs (i > j).
    template <typename F>
        requires std::invocable<F, PointId, PointId>
    auto from_weight_function(std::size_t points, F && weight) -> EchelonedSpace
    {
        using Weight = std::decay_t<std::invoke_result_t<F, PointId, PointId>>;
        std::vector<Weight> lower;
        lower.reserve(points >= 1 ? pair_count(points) : 0);
        for (PointId i = 1 ; i < points ; ++i)
            for (PointId j = 0 ; j < i ; ++j)
                lower.push_back(weight(i, j));
        return from_weights(points, std::span<const Weight>(lower));
    }

    struct Subspace
    {
        EchelonedSpace space;
        PointMap inclusion;     // subspace point -> original point
        RankMap ranks;          // subspace rank -> original rank
    };

    /// The space induced on the listed points, numbered in the listed order,
    /// with ranks re-compressed.
    inline auto induced_subspace(const EchelonedSpace & x, std::span<const PointId> subset) -> Subspace
    {
        if (subset.empty())
            throw EchelonError(ErrorCode::empty_subset, "induced subspace of an empty subset");

        std::vector<bool> used(x.size(), false);
        for (auto p : subset) {
            if (p >= x.size())
                throw EchelonError(ErrorCode::bad_map, "point " + std::to_string(p) + " is not in the space");
            if (used[p])
                throw EchelonError(ErrorCode::bad_map, "point " + std::to_string(p) + " listed twice");
            used[p] = true;
        }

        auto space = from_weight_function(subset.size(), [&] (PointId i, PointId j) { return x.rank(subset[i], subset[j]); });

        RankMap ranks(space.rank_count() + 1, 0);
        for (PointId i = 1 ; i < subset.size() ; ++i)
            for (PointId j = 0 ; j < i ; ++j)
                ranks[space.rank(i, j)] = x.rank(subset[i], subset[j]);

        return Subspace{ std::move(space), PointMap(subset.begin(), subset.end()), std::move(ranks) };
    }

    inline auto induced_subspace(const EchelonedSpace & x, const std::vector<PointId> & subset) -> Subspace
    {
        return induced_subspace(x, std::span<const PointId>(subset));
    }

    namespace detail
    {
        inline auto check_total(const EchelonedSpace & x, const EchelonedSpace & y, std::span<const PointId> h) -> bool
        {
            if (h.size() != x.size())
                return false;
            return std::all_of(h.begin(), h.end(), [&] (PointId p) { return p < y.size(); });
        }

        /// The rank map induced by h, if h respects rank equality.
        inline auto induced_rank_map(const EchelonedSpace & x, const EchelonedSpace & y, std::span<const PointId> h)
            -> std::optional<std::vector<std::int64_t>>
        {
            std::vector<std::int64_t> hat(x.rank_count() + 1, -1);
            hat[0] = 0;
            for (PointId i = 1 ; i < x.size() ; ++i)
                for (PointId j = 0 ; j < i ; ++j) {
                    auto r = x.rank(i, j);
                    std::int64_t s = y.rank(h[i], h[j]);
                    if (hat[r] == -1)
                        hat[r] = s;
                    else if (hat[r] != s)
                        return std::nullopt;
                }
            return hat;
        }
    }

    /// Some monotone rank map witnessing that h preserves the echelon, if
    /// one exists. Maps need not be injective; constant maps qualify.
    inline auto homomorphism_witness(const EchelonedSpace & x, const EchelonedSpace & y, std::span<const PointId> h)
        -> std::optional<RankMap>
    {
        if (! detail::check_total(x, y, h))
            return std::nullopt;
        auto hat = detail::induced_rank_map(x, y, h);
        if (! hat)
            return std::nullopt;
        for (std::size_t r = 1 ; r < hat->size() ; ++r)
            if ((*hat)[r] < (*hat)[r - 1])
                return std::nullopt;
        return RankMap(hat->begin(), hat->end());
    }

    inline auto is_homomorphism(const EchelonedSpace & x, const EchelonedSpace & y, std::span<const PointId> h) -> bool
    {
        return homomorphism_witness(x, y, h).has_value();
    }

    /// The injective order embedding of echelonings witnessing that h is an
    /// embedding, if h is one.
    inline auto embedding_witness(const EchelonedSpace & x, const EchelonedSpace & y, std::span<const PointId> h)
        -> std::optional<RankMap>
    {
        if (! detail::check_total(x, y, h))
            return std::nullopt;

        std::vector<bool> hit(y.size(), false);
        for (auto p : h) {
            if (hit[p])
                return std::nullopt;
            hit[p] = true;
        }

        auto hat = detail::induced_rank_map(x, y, h);
        if (! hat)
            return std::nullopt;
        for (std::size_t r = 1 ; r < hat->size() ; ++r)
            if ((*hat)[r] <= (*hat)[r - 1])
                return std::nullopt;
        return RankMap(hat->begin(), hat->end());
    }

    inline auto is_embedding(const EchelonedSpace & x, const EchelonedSpace & y, std::span<const PointId> h) -> bool
    {
        return embedding_witness(x, y, h).has_value();
    }

    struct Embedding
    {
        PointMap points;
        RankMap ranks;

        auto operator== (const Embedding &) const -> bool = default;
    };

    /// Every embedding of x into y, in lexicographic order of point maps.
    inline auto enumerate_embeddings(const EchelonedSpace & x, const EchelonedSpace & y) -> std::vector<Embedding>
    {
        std::vector<Embedding> result;
        if (x.size() > y.size())
            return result;

        PointMap h(x.size(), 0);
        std::vector<bool> used(y.size(), false);
        // partial rank map, -1 where still undetermined
        std::vector<std::int64_t> hat(x.rank_count() + 1, -1);
        hat[0] = 0;

        auto consistent = [&] (Rank r, std::int64_t s) -> bool {
            if (hat[r] != -1)
                return hat[r] == s;
            for (Rank q = 0 ; q < r ; ++q)
                if (hat[q] != -1 && hat[q] >= s)
                    return false;
            for (Rank q = r + 1 ; q < hat.size() ; ++q)
                if (hat[q] != -1 && hat[q] <= s)
                    return false;
            return true;
        };

        auto search = [&] (auto & self, PointId depth) -> void {
            if (depth == x.size()) {
                result.push_back(Embedding{ h, RankMap(hat.begin(), hat.end()) });
                return;
            }

            for (PointId t = 0 ; t < y.size() ; ++t) {
                if (used[t])
                    continue;

                std::vector<Rank> newly_set;
                bool ok = true;
                for (PointId i = 0 ; i < depth && ok ; ++i) {
                    Rank r = x.rank(depth, i);
                    std::int64_t s = y.rank(t, h[i]);
                    if (! consistent(r, s))
                        ok = false;
                    else if (hat[r] == -1) {
                        hat[r] = s;
                        newly_set.push_back(r);
                    }
                }

                if (ok) {
                    used[t] = true;
                    h[depth] = t;
                    self(self, depth + 1);
                    used[t] = false;
                }

                for (auto r : newly_set)
                    hat[r] = -1;
            }
        };

        search(search, 0);
        return result;
    }

    inline auto compose(std::span<const PointId> second, std::span<const PointId> first) -> PointMap
    {
        PointMap result(first.size());
        for (std::size_t i = 0 ; i < first.size() ; ++i)
            result[i] = second[first[i]];
        return result;
    }

    inline auto identity_map(std::size_t points) -> PointMap
    {
        PointMap result(points);
        std::iota(result.begin(), result.end(), 0);
        return result;
    }

    inline auto invert(std::span<const PointId> bijection) -> PointMap
    {
        PointMap result(bijection.size());
        for (std::size_t i = 0 ; i < bijection.size() ; ++i)
            result[bijection[i]] = i;
        return result;
    }
}

#endif
