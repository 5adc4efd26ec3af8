/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef ECHELON_GUARD_KATETOV_HH
#define ECHELON_GUARD_KATETOV_HH 1

#include <echelon/errors.hh>
#include <echelon/space.hh>

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace echelon
{
    /// An element of the chain C_X.
    struct ChainLabel
    {
        enum class Kind
        {
            bottom,     // the diagonal class
            b,          // the class of pairs of distinct function points
            c,          // c_i, the nonbottom classes of X, i = 1..n
            gap         // (k, j), k = 1..|X|, slotted just above c_j (j = 0 means above b)
        };

        Kind kind = Kind::bottom;
        unsigned k = 0;
        unsigned j = 0;

        auto operator== (const ChainLabel &) const -> bool = default;
    };

    /**
     * The chain C_X for an m-point space with n nonbottom ranks, as the
     * ordinal sum
     *
     *     {bottom} + {b} + (N x {0}) + {c_1} + (N x {1}) + ... + {c_n} + (N x {n})
     *
     * with N = {1..m} in its natural order. Elements are addressed by their
     * position in this order, so position 0 is bottom and position 1 is b.
     */
    class KatetovChain
    {
        private:
            std::size_t _points = 1;
            Rank _ranks = 0;

        public:
            KatetovChain() = default;

            KatetovChain(std::size_t points, Rank ranks) :
                _points(points),
                _ranks(ranks)
            {
            }

            auto points() const -> std::size_t { return _points; }
            auto ranks() const -> Rank { return _ranks; }

            auto size() const -> std::size_t
            {
                return _ranks + 2 + (_ranks + 1) * _points;
            }

            auto index_of(const ChainLabel & label) const -> Rank
            {
                switch (label.kind) {
                    case ChainLabel::Kind::bottom: return 0;
                    case ChainLabel::Kind::b: return 1;
                    case ChainLabel::Kind::c: return 1 + label.j * (_points + 1);
                    case ChainLabel::Kind::gap: return 2 + label.j * (_points + 1) + (label.k - 1);
                }
                return 0;
            }

            auto label_at(Rank index) const -> ChainLabel
            {
                if (index == 0)
                    return { ChainLabel::Kind::bottom, 0, 0 };
                if (index == 1)
                    return { ChainLabel::Kind::b, 0, 0 };
                unsigned offset = index - 2;
                unsigned block = offset / (_points + 1), within = offset % (_points + 1);
                if (within == _points)
                    return { ChainLabel::Kind::c, 0, block + 1 };
                return { ChainLabel::Kind::gap, within + 1, block };
            }

            auto labels() const -> std::vector<ChainLabel>
            {
                std::vector<ChainLabel> result;
                for (Rank i = 0 ; i < size() ; ++i)
                    result.push_back(label_at(i));
                return result;
            }
    };

    inline auto katetov_chain(const EchelonedSpace & x) -> KatetovChain
    {
        return KatetovChain(x.size(), x.rank_count());
    }

    struct KatetovOptions
    {
        /// Largest |X| accepted; |K(X)| = |X| + (|C_X| - 1)^|X|.
        std::size_t max_points = 3;
    };

    /**
     * K(X): the points of X (numbered as in X) followed by every function
     * h: X -> C_X \ {bottom}, ordered lexicographically by value tuple with
     * values compared in chain order. Since every element of C_X is realised
     * by some pair, the rank of a pair is exactly its chain position.
     */
    class KatetovSpace
    {
        private:
            KatetovChain _chain;
            EchelonedSpace _space;
            std::size_t _base;

        public:
            KatetovSpace(KatetovChain chain, EchelonedSpace space) :
                _chain(chain),
                _space(std::move(space)),
                _base(chain.points())
            {
            }

            auto chain() const -> const KatetovChain & { return _chain; }
            auto space() const -> const EchelonedSpace & { return _space; }

            /// λ_X, the identical embedding of X.
            auto lambda() const -> PointMap { return identity_map(_base); }

            auto is_function_point(PointId p) const -> bool { return p >= _base; }

            /// Values h(x) as chain positions (all >= 1).
            auto function_values(PointId p) const -> std::vector<Rank>
            {
                std::vector<Rank> values(_base);
                std::uint64_t code = p - _base;
                const std::uint64_t radix = _chain.size() - 1;
                for (std::size_t x = _base ; x-- > 0 ; ) {
                    values[x] = static_cast<Rank>(code % radix) + 1;
                    code /= radix;
                }
                return values;
            }

            auto function_point(std::span<const Rank> values) const -> PointId
            {
                if (values.size() != _base)
                    throw EchelonError(ErrorCode::bad_map, "function point needs one value per point of X");
                const std::uint64_t radix = _chain.size() - 1;
                std::uint64_t code = 0;
                for (auto v : values) {
                    if (v < 1 || v >= _chain.size())
                        throw EchelonError(ErrorCode::bad_map, "function value outside C_X \\ {bottom}");
                    code = code * radix + (v - 1);
                }
                return static_cast<PointId>(_base + code);
            }

            /// The extended echeloning map into C_X.
            auto eta_tilde(PointId u, PointId v) const -> ChainLabel
            {
                return _chain.label_at(_space.rank(u, v));
            }
    };

    inline auto katetov_space_size(std::size_t points, Rank ranks) -> std::uint64_t
    {
        KatetovChain chain(points, ranks);
        std::uint64_t functions = 1;
        for (std::size_t i = 0 ; i < points ; ++i) {
            if (functions > std::numeric_limits<std::uint32_t>::max())
                return std::numeric_limits<std::uint64_t>::max();
            functions *= chain.size() - 1;
        }
        return points + functions;
    }

    inline auto katetov_space(const EchelonedSpace & x, KatetovOptions options = {}) -> KatetovSpace
    {
        if (x.size() > options.max_points)
            throw EchelonError(ErrorCode::cap_exceeded, "K(X) for |X| = " + std::to_string(x.size()) + " exceeds the cap of "
                    + std::to_string(options.max_points) + " points");

        auto chain = katetov_chain(x);
        const std::size_t m = x.size();
        const std::uint64_t total = katetov_space_size(m, x.rank_count());
        if (total > std::numeric_limits<PointId>::max() / 2)
            throw EchelonError(ErrorCode::cap_exceeded, "K(X) is too large to materialise");
        const std::size_t points = total;
        const Rank b = chain.index_of({ ChainLabel::Kind::b, 0, 0 });

        // the rank of X's own nonbottom classes c_i inside C_X
        std::vector<Rank> c_index(x.rank_count() + 1, 0);
        for (Rank i = 1 ; i <= x.rank_count() ; ++i)
            c_index[i] = chain.index_of({ ChainLabel::Kind::c, 0, i });

        std::vector<Rank> lower(pair_count(points), b);
        for (PointId i = 1 ; i < m ; ++i)
            for (PointId j = 0 ; j < i ; ++j)
                lower[pair_index(i, j)] = c_index[x.rank(i, j)];

        // mixed pairs: (function point h, x) gets h(x); function pairs keep b
        const std::uint64_t radix = chain.size() - 1;
        std::vector<Rank> values(m, 1);
        for (PointId h = m ; h < points ; ++h) {
            for (PointId p = 0 ; p < m ; ++p)
                lower[pair_index(h, p)] = values[p];
            for (std::size_t p = m ; p-- > 0 ; ) {
                if (values[p] < radix) {
                    ++values[p];
                    break;
                }
                values[p] = 1;
            }
        }

        return KatetovSpace(chain, EchelonedSpace::from_ranks(points, chain.size() - 1, std::move(lower)));
    }

    struct KatetovMap
    {
        PointMap points;    // K(X) -> K(Y)
        RankMap chain;      // ψ̃: C_X -> C_Y, by chain position
    };

    /**
     * K(φ) for an embedding φ: X -> Y. On chain labels bottom, b and (k, 0)
     * are kept, c_i goes to φ̂(c_i) and (k, i) to (k, j) where φ̂(c_i) = d_j.
     * A function point h goes to the function that is ψ̃(h(x)) at φ(x) and b
     * elsewhere.
     */
    inline auto katetov_map(const EchelonedSpace & x, const EchelonedSpace & y, std::span<const PointId> phi,
            KatetovOptions options = {}) -> KatetovMap
    {
        auto hat = embedding_witness(x, y, phi);
        if (! hat)
            throw EchelonError(ErrorCode::not_an_embedding, "φ is not an embedding of X into Y");
        if (x.size() > options.max_points || y.size() > options.max_points)
            throw EchelonError(ErrorCode::cap_exceeded, "K(φ) needs both spaces within the cap of "
                    + std::to_string(options.max_points) + " points");

        auto cx = katetov_chain(x), cy = katetov_chain(y);
        KatetovMap result;
        result.chain.resize(cx.size());
        for (Rank i = 0 ; i < cx.size() ; ++i) {
            auto label = cx.label_at(i);
            switch (label.kind) {
                case ChainLabel::Kind::bottom:
                case ChainLabel::Kind::b:
                    break;
                case ChainLabel::Kind::c:
                    label.j = (*hat)[label.j];
                    break;
                case ChainLabel::Kind::gap:
                    if (label.j != 0)
                        label.j = (*hat)[label.j];
                    break;
            }
            result.chain[i] = cy.index_of(label);
        }

        const auto kx_points = katetov_space_size(x.size(), x.rank_count());
        const std::uint64_t radix_x = cx.size() - 1, radix_y = cy.size() - 1;
        const Rank b_y = cy.index_of({ ChainLabel::Kind::b, 0, 0 });

        result.points.resize(kx_points);
        for (PointId p = 0 ; p < x.size() ; ++p)
            result.points[p] = phi[p];

        std::vector<Rank> image(y.size());
        for (std::uint64_t h = x.size() ; h < kx_points ; ++h) {
            std::fill(image.begin(), image.end(), b_y);
            std::uint64_t code = h - x.size();
            for (std::size_t p = x.size() ; p-- > 0 ; ) {
                image[phi[p]] = result.chain[static_cast<Rank>(code % radix_x) + 1];
                code /= radix_x;
            }
            std::uint64_t target = 0;
            for (auto v : image)
                target = target * radix_y + (v - 1);
            result.points[h] = static_cast<PointId>(y.size() + target);
        }

        return result;
    }

    /**
     * Embeds a one-point extension Y of X into K(X) over λ_X. `e` is the
     * inclusion of X into Y; the new point y of Y goes to the function h
     * with h(x) = c_j when η_Y(y, e(x)) is the image of c_j, and h(x) = (k, j)
     * when η_Y(y, e(x)) is the k-th new class between the images of c_j and
     * c_{j+1}. Returns g: Y -> K(X) as a point map indexed by points of Y.
     */
    inline auto realize_extension(const EchelonedSpace & x, const EchelonedSpace & y, std::span<const PointId> e,
            KatetovOptions options = {}) -> PointMap
    {
        if (y.size() != x.size() + 1)
            throw EchelonError(ErrorCode::not_a_one_point_extension, "Y must have exactly one point more than X");
        auto e_hat = embedding_witness(x, y, e);
        if (! e_hat)
            throw EchelonError(ErrorCode::not_a_one_point_extension, "e is not an embedding of X into Y");
        if (x.size() > options.max_points)
            throw EchelonError(ErrorCode::cap_exceeded, "|X| exceeds the K(X) cap");

        std::vector<bool> in_image(y.size(), false);
        for (auto p : e)
            in_image[p] = true;
        PointId fresh = 0;
        while (in_image[fresh])
            ++fresh;

        // for each rank of Y: either the image of c_j, or the k-th new class in gap j
        std::vector<std::int64_t> preimage(y.rank_count() + 1, -1);
        for (Rank i = 0 ; i <= x.rank_count() ; ++i)
            preimage[(*e_hat)[i]] = i;

        auto chain = katetov_chain(x);
        std::vector<Rank> gamma(y.rank_count() + 1, 0);
        unsigned gap = 0, k = 0;
        for (Rank r = 1 ; r <= y.rank_count() ; ++r) {
            if (preimage[r] != -1) {
                gap = preimage[r];
                k = 0;
                gamma[r] = chain.index_of({ ChainLabel::Kind::c, 0, gap });
            }
            else {
                ++k;
                gamma[r] = chain.index_of({ ChainLabel::Kind::gap, k, gap });
            }
        }

        std::vector<Rank> values(x.size());
        for (PointId p = 0 ; p < x.size() ; ++p)
            values[p] = gamma[y.rank(fresh, e[p])];

        // encode h directly; the function point index does not need K(X) built
        const std::uint64_t radix = chain.size() - 1;
        std::uint64_t code = 0;
        for (auto v : values)
            code = code * radix + (v - 1);

        PointMap g(y.size());
        for (PointId p = 0 ; p < x.size() ; ++p)
            g[e[p]] = p;
        g[fresh] = static_cast<PointId>(x.size() + code);
        return g;
    }
}

#endif
