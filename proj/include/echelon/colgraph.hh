/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef ECHELON_GUARD_COLGRAPH_HH
#define ECHELON_GUARD_COLGRAPH_HH 1

#include <echelon/errors.hh>
#include <echelon/random.hh>
#include <echelon/space.hh>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace echelon
{
    using Colour = std::uint32_t;
    using Vertex = std::uint32_t;

    /**
     * A complete graph with every edge coloured. The palette lists the
     * colour set in increasing order; it is the total order on colours, so
     * colour ids themselves carry no order.
     */
    class ColouredGraph
    {
        private:
            std::size_t _vertices = 1;
            std::vector<Colour> _palette;
            std::vector<Colour> _chi;
            std::map<Colour, std::size_t> _position;

        public:
            ColouredGraph() = default;

            ColouredGraph(std::size_t vertices, std::vector<Colour> palette, std::vector<Colour> chi) :
                _vertices(vertices),
                _palette(std::move(palette)),
                _chi(std::move(chi))
            {
                if (_vertices < 1)
                    throw EchelonError(ErrorCode::bad_point_count, "a coloured graph needs at least one vertex");
                if (_chi.size() != pair_count(_vertices))
                    throw EchelonError(ErrorCode::bad_shape, "expected " + std::to_string(pair_count(_vertices)) + " edge colours");
                for (std::size_t i = 0 ; i < _palette.size() ; ++i)
                    if (! _position.emplace(_palette[i], i).second)
                        throw EchelonError(ErrorCode::unordered_colours, "colour " + std::to_string(_palette[i])
                                + " appears twice in the colour order");
                for (auto c : _chi)
                    if (! _position.contains(c))
                        throw EchelonError(ErrorCode::bad_colour, "edge colour " + std::to_string(c) + " is not in the colour order");
            }

            auto size() const -> std::size_t { return _vertices; }
            auto palette() const -> const std::vector<Colour> & { return _palette; }
            auto edges() const -> const std::vector<Colour> & { return _chi; }

            auto colour(Vertex u, Vertex v) const -> Colour
            {
                return _chi[pair_index(u, v)];
            }

            auto has_colour(Colour c) const -> bool
            {
                return _position.contains(c);
            }

            /// Position of c in the colour order.
            auto position(Colour c) const -> std::size_t
            {
                return _position.at(c);
            }

            auto operator== (const ColouredGraph & other) const -> bool
            {
                return _vertices == other._vertices && _palette == other._palette && _chi == other._chi;
            }
    };

    /// Edge colour = nonbottom rank; colours 1..n in their natural order.
    inline auto to_coloured_graph(const EchelonedSpace & x) -> ColouredGraph
    {
        std::vector<Colour> palette(x.rank_count());
        std::iota(palette.begin(), palette.end(), 1);
        return ColouredGraph(x.size(), std::move(palette), std::vector<Colour>(x.lower_triangle().begin(), x.lower_triangle().end()));
    }

    /// Ranks by position in the graph's colour order, compressed over the
    /// colours actually used.
    inline auto from_coloured_graph(const ColouredGraph & g) -> EchelonedSpace
    {
        std::vector<std::size_t> positions;
        positions.reserve(g.edges().size());
        for (auto c : g.edges())
            positions.push_back(g.position(c));
        return from_weights(g.size(), std::span<const std::size_t>(positions));
    }

    /// As above, with an explicit colour order replacing the graph's own.
    inline auto from_coloured_graph(const ColouredGraph & g, const std::vector<Colour> & order) -> EchelonedSpace
    {
        return from_coloured_graph(ColouredGraph(g.size(), order, g.edges()));
    }

    /// The demand of the (*_k) property: a vertex outside all the sets that
    /// sees each set U_i entirely in colour c_i.
    struct StarDemand
    {
        std::vector<std::vector<Vertex>> sets;
        std::vector<Colour> colours;
    };

    inline void validate_star(std::size_t vertices, const StarDemand & d)
    {
        if (d.sets.size() != d.colours.size())
            throw EchelonError(ErrorCode::bad_demand, "star demand needs one colour per set");
        std::vector<bool> used(vertices, false);
        for (auto & s : d.sets)
            for (auto u : s) {
                if (u >= vertices)
                    throw EchelonError(ErrorCode::bad_demand, "vertex " + std::to_string(u) + " is not in the graph");
                if (used[u])
                    throw EchelonError(ErrorCode::overlapping_sets, "vertex " + std::to_string(u) + " is in more than one set");
                used[u] = true;
            }
    }

    /// Smallest vertex meeting the demand, if any.
    inline auto check_star(const ColouredGraph & g, const StarDemand & d) -> std::optional<Vertex>
    {
        validate_star(g.size(), d);

        std::vector<bool> in_sets(g.size(), false);
        for (auto & s : d.sets)
            for (auto u : s)
                in_sets[u] = true;

        for (Vertex z = 0 ; z < g.size() ; ++z) {
            if (in_sets[z])
                continue;
            bool ok = true;
            for (std::size_t i = 0 ; i < d.sets.size() && ok ; ++i)
                for (auto u : d.sets[i])
                    if (g.colour(z, u) != d.colours[i]) {
                        ok = false;
                        break;
                    }
            if (ok)
                return z;
        }
        return std::nullopt;
    }

    struct GeometricColouring
    {
        double p = 0.5;
        std::uint64_t seed = 0;
    };

    inline void validate_colouring(const GeometricColouring & g)
    {
        if (! (g.p > 0.0 && g.p < 1.0))
            throw EchelonError(ErrorCode::bad_argument, "geometric colouring needs 0 < p < 1");
    }

    /// Colour index of edge {u, v}: P[i] = (1 - p)^(i - 1) p, drawn from the
    /// edge's own stream so that it depends only on (seed, u, v).
    inline auto geometric_edge_colour(const GeometricColouring & g, std::uint64_t u, std::uint64_t v) -> std::uint64_t
    {
        auto stream = edge_stream(g.seed, u, v);
        return geometric_index(g.p, stream.next_unit());
    }

    inline auto random_coloured_graph(std::size_t vertices, const GeometricColouring & g) -> ColouredGraph
    {
        validate_colouring(g);
        if (vertices < 1)
            throw EchelonError(ErrorCode::bad_point_count, "a coloured graph needs at least one vertex");

        std::vector<Colour> chi(pair_count(vertices));
        Colour largest = 0;
        for (Vertex i = 1 ; i < vertices ; ++i)
            for (Vertex j = 0 ; j < i ; ++j) {
                auto c = geometric_edge_colour(g, i, j);
                if (c > std::numeric_limits<Colour>::max())
                    throw EchelonError(ErrorCode::bad_colour, "sampled colour index does not fit");
                chi[pair_index(i, j)] = static_cast<Colour>(c);
                largest = std::max(largest, static_cast<Colour>(c));
            }

        std::vector<Colour> palette(largest);
        std::iota(palette.begin(), palette.end(), 1);
        return ColouredGraph(vertices, std::move(palette), std::move(chi));
    }

    /// Probability that none of `candidates` independent fresh vertices
    /// meets a star demand with colour indices i_l on sets of size |U_l|.
    /// A single vertex succeeds with probability
    /// (1 - p)^(sum (i_l - 1)|U_l|) * p^(sum |U_l|).
    inline auto witness_failure_probability(double p, std::span<const std::uint64_t> indices,
            std::span<const std::size_t> sizes, std::size_t candidates) -> double
    {
        if (! (p > 0.0 && p < 1.0))
            throw EchelonError(ErrorCode::bad_argument, "witness_failure_probability needs 0 < p < 1");
        if (indices.size() != sizes.size())
            throw EchelonError(ErrorCode::bad_argument, "one colour index per set is needed");

        double miss_exponent = 0.0, hit_exponent = 0.0;
        for (std::size_t l = 0 ; l < indices.size() ; ++l) {
            if (indices[l] < 1)
                throw EchelonError(ErrorCode::bad_argument, "colour indices start at 1");
            miss_exponent += static_cast<double>(indices[l] - 1) * static_cast<double>(sizes[l]);
            hit_exponent += static_cast<double>(sizes[l]);
        }

        double success = std::exp(miss_exponent * std::log1p(-p) + hit_exponent * std::log(p));
        if (success >= 1.0)
            return candidates == 0 ? 1.0 : 0.0;
        return std::exp(static_cast<double>(candidates) * std::log1p(-success));
    }

    /// Simple undirected graph on a strict lower triangle of edge flags.
    class SimpleGraph
    {
        private:
            std::size_t _vertices;
            std::vector<bool> _adjacent;

        public:
            SimpleGraph(std::size_t vertices, std::vector<bool> adjacent) :
                _vertices(vertices),
                _adjacent(std::move(adjacent))
            {
                if (_adjacent.size() != pair_count(_vertices))
                    throw EchelonError(ErrorCode::bad_shape, "adjacency has the wrong size");
            }

            auto size() const -> std::size_t { return _vertices; }

            auto adjacent(Vertex u, Vertex v) const -> bool
            {
                return u != v && _adjacent[pair_index(u, v)];
            }

            auto edge_count() const -> std::size_t
            {
                return std::count(_adjacent.begin(), _adjacent.end(), true);
            }
    };

    /// The graph of edges coloured c.
    inline auto rado_slice(const ColouredGraph & g, Colour c) -> SimpleGraph
    {
        std::vector<bool> adjacent(g.edges().size());
        for (std::size_t k = 0 ; k < adjacent.size() ; ++k)
            adjacent[k] = g.edges()[k] == c;
        return SimpleGraph(g.size(), std::move(adjacent));
    }

    /// Rado extension: some vertex outside both sets, adjacent to all of
    /// `with` and to none of `without`.
    inline auto rado_witness(const SimpleGraph & g, std::span<const Vertex> with, std::span<const Vertex> without)
        -> std::optional<Vertex>
    {
        std::vector<bool> used(g.size(), false);
        for (auto sets : { with, without })
            for (auto u : sets) {
                if (u >= g.size())
                    throw EchelonError(ErrorCode::bad_demand, "vertex " + std::to_string(u) + " is not in the graph");
                if (used[u])
                    throw EchelonError(ErrorCode::overlapping_sets, "vertex " + std::to_string(u) + " is in both sets");
                used[u] = true;
            }

        for (Vertex z = 0 ; z < g.size() ; ++z) {
            if (used[z])
                continue;
            if (std::all_of(with.begin(), with.end(), [&] (Vertex u) { return g.adjacent(z, u); })
                    && std::none_of(without.begin(), without.end(), [&] (Vertex u) { return g.adjacent(z, u); }))
                return z;
        }
        return std::nullopt;
    }
}

#endif
