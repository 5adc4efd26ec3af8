/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef ECHELON_GUARD_RAMSEY_HH
#define ECHELON_GUARD_RAMSEY_HH 1

#include <echelon/colgraph.hh>
#include <echelon/enumerate.hh>
#include <echelon/errors.hh>
#include <echelon/space.hh>

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace echelon
{
    /// Checks that `order` lists each of 0 .. points-1 exactly once.
    inline void check_order(std::size_t points, const PointMap & order)
    {
        if (order.size() != points)
            throw EchelonError(ErrorCode::bad_order, "order lists " + std::to_string(order.size()) + " points, expected "
                    + std::to_string(points));
        std::vector<bool> seen(points, false);
        for (auto p : order) {
            if (p >= points || seen[p])
                throw EchelonError(ErrorCode::bad_order, "order is not a permutation of the points");
            seen[p] = true;
        }
    }

    /// An echeloned space with a linear order on its points; order[k] is the
    /// k-th smallest point.
    class OrderedEchelonedSpace
    {
        private:
            EchelonedSpace _space;
            PointMap _order;

        public:
            OrderedEchelonedSpace(EchelonedSpace space, PointMap order) :
                _space(std::move(space)),
                _order(std::move(order))
            {
                check_order(_space.size(), _order);
            }

            /// Ordered by point index.
            explicit OrderedEchelonedSpace(EchelonedSpace space) :
                _space(std::move(space)),
                _order(identity_map(_space.size()))
            {
            }

            auto space() const -> const EchelonedSpace & { return _space; }
            auto order() const -> const PointMap & { return _order; }
            auto size() const -> std::size_t { return _space.size(); }

            auto operator== (const OrderedEchelonedSpace &) const -> bool = default;
    };

    /**
     * The copies of A in C: point sets of C (listed in C's order) on which
     * the order-preserving bijection from A is an embedding. Order makes
     * copies rigid, so a copy and its embedding determine each other.
     */
    inline auto ordered_copies(const OrderedEchelonedSpace & c, const OrderedEchelonedSpace & a) -> std::vector<PointMap>
    {
        std::vector<PointMap> result;
        const std::size_t n = c.size(), m = a.size();
        if (m > n)
            return result;

        // choose positions 0 <= i_0 < ... < i_{m-1} < n in C's order
        std::vector<std::size_t> positions(m);
        std::iota(positions.begin(), positions.end(), 0);
        PointMap h(m), copy(m);
        while (true) {
            for (std::size_t k = 0 ; k < m ; ++k) {
                copy[k] = c.order()[positions[k]];
                h[a.order()[k]] = copy[k];
            }
            if (is_embedding(a.space(), c.space(), h))
                result.push_back(copy);

            // next combination
            std::size_t k = m;
            while (k > 0 && positions[k - 1] == n - m + k - 1)
                --k;
            if (k == 0)
                break;
            ++positions[k - 1];
            for (std::size_t j = k ; j < m ; ++j)
                positions[j] = positions[j - 1] + 1;
        }
        return result;
    }

    struct ArrowOptions
    {
        /// Instances with more than this many colourings are refused.
        std::uint64_t budget = std::uint64_t(1) << 20;
    };

    /// The copies of A in C and, for each copy of B in C, the indices of the
    /// A-copies inside it.
    struct ArrowInstance
    {
        std::vector<PointMap> a_copies;
        std::vector<PointMap> b_copies;
        std::vector<std::vector<std::size_t>> inside;
    };

    inline auto arrow_instance(const OrderedEchelonedSpace & c, const OrderedEchelonedSpace & a, const OrderedEchelonedSpace & b)
        -> ArrowInstance
    {
        if (a.size() > b.size() || b.size() > c.size())
            throw EchelonError(ErrorCode::bad_argument, "arrow needs |A| <= |B| <= |C|");

        ArrowInstance result;
        result.a_copies = ordered_copies(c, a);
        result.b_copies = ordered_copies(c, b);

        // copies of A in B, as positions in B's order
        auto a_in_b = ordered_copies(b, a);
        std::map<PointMap, std::size_t> a_index;
        for (std::size_t i = 0 ; i < result.a_copies.size() ; ++i)
            a_index.emplace(result.a_copies[i], i);
        std::vector<std::size_t> position_in_b(b.size());
        for (std::size_t k = 0 ; k < b.size() ; ++k)
            position_in_b[b.order()[k]] = k;

        for (auto & bc : result.b_copies) {
            std::vector<std::size_t> indices;
            for (auto & ac : a_in_b) {
                PointMap image(ac.size());
                for (std::size_t k = 0 ; k < ac.size() ; ++k)
                    image[k] = bc[position_in_b[ac[k]]];
                // both lists follow C's order, so the image is a listed copy
                indices.push_back(a_index.at(image));
            }
            std::sort(indices.begin(), indices.end());
            result.inside.push_back(std::move(indices));
        }
        return result;
    }

    namespace detail
    {
        inline auto colouring_count(std::size_t copies, unsigned k, std::uint64_t budget) -> std::optional<std::uint64_t>
        {
            std::uint64_t count = 1;
            for (std::size_t i = 0 ; i < copies ; ++i) {
                if (count > budget / k)
                    return std::nullopt;
                count *= k;
            }
            return count <= budget ? std::optional(count) : std::nullopt;
        }
    }

    /**
     * A k-colouring of the A-copies in C under which no copy of B has all its
     * A-copies in one colour, or nothing if C -> (B)^A_k. Backtracking over
     * colourings in lexicographic order (colour names up to permutation),
     * pruning as soon as some B-copy is completed monochromatically.
     */
    inline auto find_bad_colouring(const OrderedEchelonedSpace & c, const OrderedEchelonedSpace & a,
            const OrderedEchelonedSpace & b, unsigned k, ArrowOptions options = {}) -> std::optional<std::vector<unsigned>>
    {
        if (k < 1)
            throw EchelonError(ErrorCode::bad_argument, "arrow needs k >= 1");
        auto instance = arrow_instance(c, a, b);
        const std::size_t copies = instance.a_copies.size();
        if (! detail::colouring_count(copies, k, options.budget))
            throw EchelonError(ErrorCode::budget_exceeded, std::to_string(copies) + " copies of A give more than "
                    + std::to_string(options.budget) + " colourings");

        // a B-copy with no A-copies is vacuously monochromatic
        for (auto & inside : instance.inside)
            if (inside.empty())
                return std::nullopt;

        // B-copies to check once a given A-copy gets its colour
        std::vector<std::vector<std::size_t>> completed_at(copies);
        for (std::size_t i = 0 ; i < instance.inside.size() ; ++i)
            completed_at[instance.inside[i].back()].push_back(i);

        std::vector<unsigned> colour(copies, 0);
        auto monochromatic = [&] (std::size_t bi) {
            auto & inside = instance.inside[bi];
            return std::all_of(inside.begin(), inside.end(), [&] (std::size_t ai) { return colour[ai] == colour[inside.front()]; });
        };

        // iterative backtracking; `next` is the colour to try at position i
        std::vector<unsigned> next(copies + 1, 0), highest(copies + 1, 0);
        std::size_t i = 0;
        while (true) {
            if (i == copies)
                return colour;

            // colours beyond one more than the highest used so far are symmetric
            unsigned limit = i == 0 ? 1 : std::min<unsigned>(k, highest[i] + 2);
            bool placed = false;
            while (next[i] < limit) {
                colour[i] = next[i]++;
                if (std::none_of(completed_at[i].begin(), completed_at[i].end(), monochromatic)) {
                    placed = true;
                    break;
                }
            }

            if (placed) {
                highest[i + 1] = i == 0 ? colour[i] : std::max(highest[i], colour[i]);
                next[i + 1] = 0;
                ++i;
            }
            else {
                if (i == 0)
                    return std::nullopt;
                --i;
            }
        }
    }

    /// Whether C -> (B)^A_k.
    inline auto arrow_check(const OrderedEchelonedSpace & c, const OrderedEchelonedSpace & a, const OrderedEchelonedSpace & b,
            unsigned k, ArrowOptions options = {}) -> bool
    {
        return ! find_bad_colouring(c, a, b, k, options);
    }

    struct WitnessSearchOptions
    {
        /// Largest |C| tried.
        std::size_t size_cap = 4;
        /// Sizes up to this are searched exhaustively; larger ones are sampled.
        std::size_t exhaustive_cap = 4;
        std::size_t samples = 256;
        std::uint64_t seed = 0;
        ArrowOptions arrow;
    };

    /**
     * Some C with C -> (B)^A_k, ordered by point index, smallest size first.
     * Small sizes go through every labelled space (so every ordered space up
     * to isomorphism); larger ones through seeded random rank tables. Returns
     * nothing when the cap is reached, which proves nothing about existence.
     * Instances over the colouring budget are skipped.
     */
    inline auto witness_search(const OrderedEchelonedSpace & a, const OrderedEchelonedSpace & b, unsigned k,
            WitnessSearchOptions options = {}) -> std::optional<OrderedEchelonedSpace>
    {
        auto try_candidate = [&] (const EchelonedSpace & space) -> std::optional<OrderedEchelonedSpace> {
            OrderedEchelonedSpace c(space);
            try {
                if (arrow_check(c, a, b, k, options.arrow))
                    return c;
            }
            catch (const EchelonError & e) {
                if (e.code() != ErrorCode::budget_exceeded)
                    throw;
            }
            return std::nullopt;
        };

        std::mt19937_64 rng(options.seed);
        for (std::size_t m = std::max<std::size_t>(b.size(), 1) ; m <= options.size_cap ; ++m) {
            if (m <= options.exhaustive_cap) {
                SpaceEnumerator spaces(m, EnumerateOptions{ false, options.exhaustive_cap });
                while (auto space = spaces.next())
                    if (auto c = try_candidate(*space))
                        return c;
            }
            else {
                std::uniform_int_distribution<std::size_t> weight(0, pair_count(m) - 1);
                for (std::size_t s = 0 ; s < options.samples ; ++s) {
                    std::vector<std::size_t> weights(pair_count(m));
                    for (auto & w : weights)
                        w = weight(rng);
                    if (auto c = try_candidate(from_weights(m, std::span<const std::size_t>(weights))))
                        return c;
                }
            }
        }
        return std::nullopt;
    }

    /// Ordered complete C-coloured graph.
    struct OrderedColouredGraph
    {
        ColouredGraph graph;
        PointMap order;
    };

    /// Simple graph whose edges carry colours; non-edges have no colour.
    struct EdgeColouredGraph
    {
        std::size_t vertices = 1;
        std::vector<Colour> palette;
        std::vector<std::optional<Colour>> edges;

        auto colour(Vertex u, Vertex v) const -> std::optional<Colour>
        {
            return u == v ? std::nullopt : edges[pair_index(u, v)];
        }

        auto operator== (const EdgeColouredGraph &) const -> bool = default;
    };

    struct OrderedEdgeColouredGraph
    {
        EdgeColouredGraph graph;
        PointMap order;
    };

    /// Erases colour c: its edges become non-edges, every other edge keeps
    /// its colour, and c leaves the palette.
    inline auto phi_translate(const OrderedColouredGraph & g, Colour c) -> OrderedEdgeColouredGraph
    {
        if (! g.graph.has_colour(c))
            throw EchelonError(ErrorCode::bad_colour, "colour " + std::to_string(c) + " is not in the palette");
        check_order(g.graph.size(), g.order);

        EdgeColouredGraph result;
        result.vertices = g.graph.size();
        for (auto d : g.graph.palette())
            if (d != c)
                result.palette.push_back(d);
        for (auto d : g.graph.edges())
            result.edges.push_back(d == c ? std::nullopt : std::optional(d));
        return OrderedEdgeColouredGraph{ std::move(result), g.order };
    }

    /// Inverse of phi_translate: non-edges get colour c, which is placed in
    /// the palette at `position`.
    inline auto phi_restore(const OrderedEdgeColouredGraph & h, Colour c, std::size_t position) -> OrderedColouredGraph
    {
        if (std::find(h.graph.palette.begin(), h.graph.palette.end(), c) != h.graph.palette.end())
            throw EchelonError(ErrorCode::bad_colour, "colour " + std::to_string(c) + " is already an edge colour");
        if (position > h.graph.palette.size())
            throw EchelonError(ErrorCode::bad_argument, "palette position out of range");
        check_order(h.graph.vertices, h.order);

        auto palette = h.graph.palette;
        palette.insert(palette.begin() + position, c);
        std::vector<Colour> chi;
        for (auto & e : h.graph.edges)
            chi.push_back(e ? *e : c);
        return OrderedColouredGraph{ ColouredGraph(h.graph.vertices, std::move(palette), std::move(chi)), h.order };
    }

    namespace detail
    {
        /// Strictly order-preserving maps from a size-m order into a size-n
        /// order, as vertex maps, filtered by `keep`.
        template <typename Keep_>
        auto ordered_maps(const PointMap & from_order, const PointMap & to_order, Keep_ && keep) -> std::vector<PointMap>
        {
            std::vector<PointMap> result;
            const std::size_t m = from_order.size(), n = to_order.size();
            if (m > n)
                return result;
            std::vector<std::size_t> positions(m);
            std::iota(positions.begin(), positions.end(), 0);
            PointMap h(m);
            while (true) {
                for (std::size_t k = 0 ; k < m ; ++k)
                    h[from_order[k]] = to_order[positions[k]];
                if (keep(h))
                    result.push_back(h);
                std::size_t k = m;
                while (k > 0 && positions[k - 1] == n - m + k - 1)
                    --k;
                if (k == 0)
                    break;
                ++positions[k - 1];
                for (std::size_t j = k ; j < m ; ++j)
                    positions[j] = positions[j - 1] + 1;
            }
            return result;
        }
    }

    /// Order-preserving maps under which every edge colour is preserved.
    inline auto ordered_embeddings(const OrderedColouredGraph & a, const OrderedColouredGraph & b) -> std::vector<PointMap>
    {
        return detail::ordered_maps(a.order, b.order, [&] (const PointMap & h) {
            for (Vertex u = 1 ; u < a.graph.size() ; ++u)
                for (Vertex v = 0 ; v < u ; ++v)
                    if (a.graph.colour(u, v) != b.graph.colour(h[u], h[v]))
                        return false;
            return true;
        });
    }

    /// Order-preserving maps sending edges to edges of the same colour and
    /// non-edges to non-edges.
    inline auto ordered_embeddings(const OrderedEdgeColouredGraph & a, const OrderedEdgeColouredGraph & b) -> std::vector<PointMap>
    {
        return detail::ordered_maps(a.order, b.order, [&] (const PointMap & h) {
            for (Vertex u = 1 ; u < a.graph.vertices ; ++u)
                for (Vertex v = 0 ; v < u ; ++v)
                    if (a.graph.colour(u, v) != b.graph.colour(h[u], h[v]))
                        return false;
            return true;
        });
    }
}

#endif
