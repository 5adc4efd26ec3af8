/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef ECHELON_GUARD_CANONICAL_HH
#define ECHELON_GUARD_CANONICAL_HH 1

#include <echelon/space.hh>

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

namespace echelon
{
    struct CanonicalForm
    {
        EchelonedSpace space;
        PointMap relabelling;   // original point -> canonical point
    };

    namespace detail
    {
        using Colouring = std::vector<unsigned>;

        /// Iterated colour refinement on the rank-labelled complete graph.
        /// New colours are positions of sorted signatures, so they do not
        /// depend on point names, and the relative order of existing cells
        /// is preserved.
        inline auto refine(const EchelonedSpace & x, Colouring colours) -> Colouring
        {
            const auto m = x.size();
            unsigned cells = 0;
            {
                auto c = colours;
                std::sort(c.begin(), c.end());
                cells = std::unique(c.begin(), c.end()) - c.begin();
            }

            using Signature = std::pair<unsigned, std::vector<std::pair<Rank, unsigned>>>;
            while (true) {
                std::vector<Signature> signatures(m);
                for (PointId v = 0 ; v < m ; ++v) {
                    signatures[v].first = colours[v];
                    auto & around = signatures[v].second;
                    around.reserve(m - 1);
                    for (PointId u = 0 ; u < m ; ++u)
                        if (u != v)
                            around.emplace_back(x.rank(u, v), colours[u]);
                    std::sort(around.begin(), around.end());
                }

                std::vector<const Signature *> distinct;
                distinct.reserve(m);
                for (auto & s : signatures)
                    distinct.push_back(&s);
                std::sort(distinct.begin(), distinct.end(), [] (auto a, auto b) { return *a < *b; });
                distinct.erase(std::unique(distinct.begin(), distinct.end(), [] (auto a, auto b) { return *a == *b; }),
                        distinct.end());

                Colouring next(m);
                for (PointId v = 0 ; v < m ; ++v)
                    next[v] = std::lower_bound(distinct.begin(), distinct.end(), &signatures[v],
                            [] (auto a, auto b) { return *a < *b; }) - distinct.begin();

                colours = std::move(next);
                if (distinct.size() == cells)
                    return colours;
                cells = distinct.size();
            }
        }

        inline auto individualise(const Colouring & colours, PointId v) -> Colouring
        {
            Colouring result(colours.size());
            for (PointId u = 0 ; u < colours.size() ; ++u)
                result[u] = 2 * colours[u] + (u == v ? 0 : 1);
            return result;
        }

        inline auto relabelled_table(const EchelonedSpace & x, const PointMap & labelling) -> std::vector<Rank>
        {
            auto inverse = invert(labelling);
            std::vector<Rank> table(pair_count(x.size()));
            for (PointId i = 1 ; i < x.size() ; ++i)
                for (PointId j = 0 ; j < i ; ++j)
                    table[pair_index(i, j)] = x.rank(inverse[i], inverse[j]);
            return table;
        }

        class CanonicalSearch
        {
            private:
                const EchelonedSpace & _x;
                std::optional<std::vector<Rank>> _best_table;
                PointMap _best_labelling;
                std::vector<PointMap> _automorphisms;
                std::vector<PointId> _path;

                auto stabiliser_orbits() const -> std::vector<PointId>
                {
                    std::vector<PointId> parent(_x.size());
                    std::iota(parent.begin(), parent.end(), 0);
                    auto find = [&] (PointId v) {
                        while (parent[v] != v)
                            v = parent[v] = parent[parent[v]];
                        return v;
                    };

                    for (auto & gamma : _automorphisms) {
                        if (! std::all_of(_path.begin(), _path.end(), [&] (PointId p) { return gamma[p] == p; }))
                            continue;
                        for (PointId v = 0 ; v < _x.size() ; ++v) {
                            auto a = find(v), b = find(gamma[v]);
                            if (a != b)
                                parent[std::max(a, b)] = std::min(a, b);
                        }
                    }

                    for (PointId v = 0 ; v < _x.size() ; ++v)
                        parent[v] = find(v);
                    return parent;
                }

                void leaf(const Colouring & colours)
                {
                    PointMap labelling(colours.begin(), colours.end());
                    auto table = relabelled_table(_x, labelling);
                    if (! _best_table || table < *_best_table) {
                        _best_table = std::move(table);
                        _best_labelling = std::move(labelling);
                    }
                    else if (table == *_best_table) {
                        // both labellings give the same table: their quotient is an automorphism
                        auto inverse_best = invert(_best_labelling);
                        PointMap gamma(_x.size());
                        for (PointId v = 0 ; v < _x.size() ; ++v)
                            gamma[v] = inverse_best[labelling[v]];
                        _automorphisms.push_back(std::move(gamma));
                    }
                }

                void search(const Colouring & colours)
                {
                    // first smallest non-singleton cell
                    std::vector<unsigned> cell_size(_x.size(), 0);
                    for (auto c : colours)
                        ++cell_size[c];
                    std::optional<unsigned> target;
                    for (unsigned c = 0 ; c < cell_size.size() ; ++c)
                        if (cell_size[c] > 1 && (! target || cell_size[c] < cell_size[*target]))
                            target = c;

                    if (! target) {
                        leaf(colours);
                        return;
                    }

                    std::vector<PointId> explored;
                    for (PointId v = 0 ; v < _x.size() ; ++v) {
                        if (colours[v] != *target)
                            continue;

                        if (! explored.empty()) {
                            auto orbits = stabiliser_orbits();
                            if (std::any_of(explored.begin(), explored.end(), [&] (PointId w) { return orbits[w] == orbits[v]; }))
                                continue;
                        }

                        _path.push_back(v);
                        search(refine(_x, individualise(colours, v)));
                        _path.pop_back();
                        explored.push_back(v);
                    }
                }

            public:
                explicit CanonicalSearch(const EchelonedSpace & x) :
                    _x(x)
                {
                }

                auto run() -> CanonicalForm
                {
                    search(refine(_x, Colouring(_x.size(), 0)));
                    return CanonicalForm{ EchelonedSpace::from_ranks(_x.size(), _x.rank_count(), std::move(*_best_table)),
                        std::move(_best_labelling) };
                }
        };
    }

    /**
     * Canonical relabelling by individualisation and refinement: colour
     * refinement on the rank-labelled complete graph, branching on the
     * smallest non-singleton cell, keeping the lexicographically least
     * relabelled table. Automorphisms found at equal leaves prune sibling
     * branches in the same orbit.
     */
    inline auto canonical_form(const EchelonedSpace & x) -> CanonicalForm
    {
        return detail::CanonicalSearch(x).run();
    }

    /// An isomorphism from x onto y, if the spaces are isomorphic.
    inline auto are_isomorphic(const EchelonedSpace & x, const EchelonedSpace & y) -> std::optional<PointMap>
    {
        if (x.size() != y.size() || x.rank_count() != y.rank_count())
            return std::nullopt;

        auto cx = canonical_form(x);
        auto cy = canonical_form(y);
        if (cx.space != cy.space)
            return std::nullopt;

        return compose(invert(cy.relabelling), cx.relabelling);
    }
}

#endif
