/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <echelon/ramsey.hh>

#include "oracles.hh"

#include <catch_amalgamated.hpp>

#include <random>
#include <set>

using namespace echelon;

namespace
{
    auto code_of(auto && f) -> std::optional<ErrorCode>
    {
        try {
            f();
        }
        catch (const EchelonError & e) {
            return e.code();
        }
        return std::nullopt;
    }

    auto ordered(const EchelonedSpace & x) -> OrderedEchelonedSpace { return OrderedEchelonedSpace(x); }

    const auto point = OrderedEchelonedSpace(EchelonedSpace::single_point());
    const auto pair = OrderedEchelonedSpace(EchelonedSpace::from_ranks(2, 1, { 1 }));
    const auto triangle = OrderedEchelonedSpace(EchelonedSpace::from_ranks(3, 1, { 1, 1, 1 }));

    /// The space induced on `points`, listed in the given order, compressed
    /// to ranks 1..n.
    auto induced_in_order(const EchelonedSpace & x, const std::vector<PointId> & points) -> EchelonedSpace
    {
        return from_weight_function(points.size(), [&] (PointId i, PointId j) { return x.rank(points[i], points[j]); });
    }

    /// Copies of A in C as point subsets: a subset is a copy when, read in
    /// C's order, it induces the same table as A read in A's order.
    auto copies_by_subsets(const OrderedEchelonedSpace & c, const OrderedEchelonedSpace & a) -> std::set<std::set<PointId>>
    {
        std::set<std::set<PointId>> result;
        const std::size_t n = c.size(), m = a.size();
        auto target = induced_in_order(a.space(), a.order());
        for (std::uint32_t mask = 0 ; mask < (1u << n) ; ++mask) {
            if (std::popcount(mask) != static_cast<int>(m))
                continue;
            std::vector<PointId> in_order;
            for (auto p : c.order())
                if (mask & (1u << p))
                    in_order.push_back(p);
            if (induced_in_order(c.space(), in_order) == target)
                result.emplace(in_order.begin(), in_order.end());
        }
        return result;
    }

    /// Every k-colouring of the A-copies, checked one by one.
    auto arrow_by_colourings(const OrderedEchelonedSpace & c, const OrderedEchelonedSpace & a, const OrderedEchelonedSpace & b,
            unsigned k) -> bool
    {
        auto a_copies = copies_by_subsets(c, a);
        auto b_copies = copies_by_subsets(c, b);
        std::vector<std::set<PointId>> as(a_copies.begin(), a_copies.end());

        std::uint64_t total = 1;
        for (std::size_t i = 0 ; i < as.size() ; ++i)
            total *= k;

        for (std::uint64_t code = 0 ; code < total ; ++code) {
            std::vector<unsigned> colour;
            for (std::uint64_t rest = code ; colour.size() < as.size() ; rest /= k)
                colour.push_back(rest % k);

            bool some_monochromatic = false;
            for (auto & bc : b_copies) {
                std::set<unsigned> seen;
                for (std::size_t i = 0 ; i < as.size() ; ++i)
                    if (std::includes(bc.begin(), bc.end(), as[i].begin(), as[i].end()))
                        seen.insert(colour[i]);
                if (seen.size() <= 1) {
                    some_monochromatic = true;
                    break;
                }
            }
            if (! some_monochromatic)
                return false;
        }
        return true;
    }

    template <typename Rng_>
    auto random_ordered(Rng_ & rng, std::size_t points) -> OrderedEchelonedSpace
    {
        return OrderedEchelonedSpace(oracle::random_space(rng, points), oracle::random_permutation(rng, points));
    }

    template <typename Rng_>
    auto random_graph(Rng_ & rng, std::size_t vertices, const std::vector<Colour> & palette) -> OrderedColouredGraph
    {
        std::vector<Colour> chi(pair_count(vertices));
        for (auto & c : chi)
            c = palette[rng() % palette.size()];
        return OrderedColouredGraph{ ColouredGraph(vertices, palette, std::move(chi)), oracle::random_permutation(rng, vertices) };
    }

    /// Injective maps that preserve the order and every pair's colour,
    /// found among all maps.
    template <typename Graph_, typename Colour_>
    auto embeddings_by_maps(const Graph_ & a, const Graph_ & b, std::size_t m, std::size_t n, Colour_ && colour)
        -> std::set<PointMap>
    {
        std::set<PointMap> result;
        std::vector<std::size_t> pa(m), pb(n);
        for (std::size_t k = 0 ; k < m ; ++k)
            pa[a.order[k]] = k;
        for (std::size_t k = 0 ; k < n ; ++k)
            pb[b.order[k]] = k;
        for (auto & h : oracle::all_maps(m, n)) {
            bool ok = true;
            for (PointId u = 0 ; u < m && ok ; ++u)
                for (PointId v = 0 ; v < m && ok ; ++v) {
                    if (u == v)
                        continue;
                    if (h[u] == h[v] || (pa[u] < pa[v]) != (pb[h[u]] < pb[h[v]]) || colour(a, u, v) != colour(b, h[u], h[v]))
                        ok = false;
                }
            if (ok)
                result.insert(h);
        }
        return result;
    }
}

TEST_CASE("orders must be permutations")
{
    auto x = EchelonedSpace::from_ranks(3, 1, { 1, 1, 1 });
    CHECK(code_of([&] { OrderedEchelonedSpace(x, PointMap{ 0, 1 }); }) == ErrorCode::bad_order);
    CHECK(code_of([&] { OrderedEchelonedSpace(x, PointMap{ 0, 1, 1 }); }) == ErrorCode::bad_order);
    CHECK(code_of([&] { OrderedEchelonedSpace(x, PointMap{ 0, 1, 3 }); }) == ErrorCode::bad_order);
    CHECK(OrderedEchelonedSpace(x).order() == PointMap{ 0, 1, 2 });
}

TEST_CASE("copies of small structures")
{
    CHECK(ordered_copies(triangle, point).size() == 3);
    CHECK(ordered_copies(triangle, pair).size() == 3);
    CHECK(ordered_copies(triangle, triangle).size() == 1);
    CHECK(ordered_copies(pair, triangle).empty());

    // a path 0 - 1 - 2 with the long pair {0, 2}; in order 0 < 1 < 2 the
    // pattern (1, 1, 2) appears only once
    auto path = ordered(EchelonedSpace::from_ranks(3, 2, { 1, 2, 1 }));
    CHECK(ordered_copies(path, path) == std::vector<PointMap>{ { 0, 1, 2 } });
}

TEST_CASE("copies agree with a subset oracle")
{
    std::mt19937_64 rng(17);
    for (int trial = 0 ; trial < 400 ; ++trial) {
        auto c = random_ordered(rng, 1 + rng() % 6);
        auto a = random_ordered(rng, 1 + rng() % std::min<std::size_t>(c.size(), 3));
        std::set<std::set<PointId>> got;
        for (auto & copy : ordered_copies(c, a)) {
            // listed in C's order
            std::vector<std::size_t> positions;
            for (auto p : copy)
                positions.push_back(std::find(c.order().begin(), c.order().end(), p) - c.order().begin());
            CHECK(std::is_sorted(positions.begin(), positions.end()));
            got.emplace(copy.begin(), copy.end());
        }
        CHECK(got == copies_by_subsets(c, a));
    }
}

TEST_CASE("arrow examples")
{
    // pigeonhole: two of three points share a colour
    CHECK(arrow_check(triangle, point, pair, 2));
    // colour the two points differently
    CHECK_FALSE(arrow_check(pair, point, pair, 2));
    CHECK(find_bad_colouring(pair, point, pair, 2) == std::vector<unsigned>{ 0, 1 });
    // one copy of B = A is always monochromatic
    CHECK(arrow_check(triangle, pair, pair, 2));
    CHECK(arrow_check(triangle, pair, pair, 5));
    // three colours on three points
    CHECK_FALSE(arrow_check(triangle, point, pair, 3));
    CHECK(arrow_check(ordered(EchelonedSpace::from_ranks(4, 1, std::vector<Rank>(6, 1))), point, pair, 3));
    // one colour: true exactly when B occurs in C
    auto path = ordered(EchelonedSpace::from_ranks(3, 2, { 1, 2, 1 }));
    CHECK(arrow_check(path, point, path, 1));
    CHECK_FALSE(arrow_check(triangle, point, path, 1));
}

TEST_CASE("arrow agrees with checking every colouring")
{
    std::mt19937_64 rng(23);
    int positive = 0, negative = 0, compared = 0;
    for (int trial = 0 ; trial < 600 ; ++trial) {
        auto c = random_ordered(rng, 2 + rng() % 4);
        auto b = random_ordered(rng, 1 + rng() % c.size());
        auto a = random_ordered(rng, 1 + rng() % b.size());
        // copies of B, read in B's order, induce B; A is usually taken from
        // inside B so that copies of A exist
        if (rng() % 4) {
            std::vector<PointId> chosen(b.order().begin(), b.order().end());
            std::shuffle(chosen.begin(), chosen.end(), rng);
            chosen.resize(a.size());
            std::sort(chosen.begin(), chosen.end(), [&] (PointId x, PointId y) {
                return std::find(b.order().begin(), b.order().end(), x) < std::find(b.order().begin(), b.order().end(), y);
            });
            a = ordered(induced_in_order(b.space(), chosen));
        }
        unsigned k = 1 + rng() % 3;
        auto copies = copies_by_subsets(c, a).size();
        std::uint64_t colourings = 1;
        for (std::size_t i = 0 ; i < copies ; ++i)
            colourings *= k;
        if (colourings > 16)
            continue;

        bool expected = arrow_by_colourings(c, a, b, k);
        CHECK(arrow_check(c, a, b, k) == expected);
        (expected ? positive : negative)++;
        ++compared;
    }
    CHECK(compared > 200);
    CHECK(positive > 20);
    CHECK(negative > 20);
}

TEST_CASE("bad colourings really are bad")
{
    std::mt19937_64 rng(29);
    for (int trial = 0 ; trial < 200 ; ++trial) {
        auto c = random_ordered(rng, 3 + rng() % 3);
        auto b = random_ordered(rng, 2);
        unsigned k = 2 + rng() % 2;
        auto bad = find_bad_colouring(c, point, b, k);
        if (! bad)
            continue;
        auto instance = arrow_instance(c, point, b);
        REQUIRE(bad->size() == instance.a_copies.size());
        for (auto colour : *bad)
            CHECK(colour < k);
        for (auto & inside : instance.inside) {
            std::set<unsigned> seen;
            for (auto i : inside)
                seen.insert((*bad)[i]);
            CHECK(seen.size() > 1);
        }
    }
}

TEST_CASE("arrow preconditions and budget")
{
    CHECK(code_of([] { arrow_check(triangle, pair, point, 2); }) == ErrorCode::bad_argument);
    CHECK(code_of([] { arrow_check(pair, point, triangle, 2); }) == ErrorCode::bad_argument);
    CHECK(code_of([] { arrow_check(triangle, point, pair, 0); }) == ErrorCode::bad_argument);

    // 6 copies of a point and 2 colours: 64 colourings
    auto six = ordered(EchelonedSpace::from_ranks(6, 1, std::vector<Rank>(15, 1)));
    CHECK(code_of([&] { arrow_check(six, point, pair, 2, ArrowOptions{ 32 }); }) == ErrorCode::budget_exceeded);
    CHECK(arrow_check(six, point, pair, 2, ArrowOptions{ 64 }));

    // the default budget of 2^20 colourings: 21 copies are too many
    auto seven = ordered(EchelonedSpace::from_ranks(7, 1, std::vector<Rank>(21, 1)));
    CHECK(code_of([&] { arrow_check(seven, pair, triangle, 2); }) == ErrorCode::budget_exceeded);
}

TEST_CASE("witness search on tiny instances")
{
    auto c = witness_search(point, pair, 2);
    REQUIRE(c);
    CHECK(c->size() == 3);
    CHECK(arrow_check(*c, point, pair, 2));

    // with three colours a fourth point is needed
    auto d = witness_search(point, pair, 3);
    REQUIRE(d);
    CHECK(d->size() == 4);

    auto e = witness_search(point, point, 4);
    REQUIRE(e);
    CHECK(*e == point);

    auto f = witness_search(pair, pair, 2);
    REQUIRE(f);
    CHECK(*f == pair);

    // five colours on a point need five points, beyond a cap of 4
    CHECK_FALSE(witness_search(point, pair, 5));
}

TEST_CASE("sampled witness search is seeded")
{
    WitnessSearchOptions options;
    options.size_cap = 5;
    options.exhaustive_cap = 3;
    options.samples = 16;
    options.seed = 3;
    auto a = witness_search(point, pair, 4, options), b = witness_search(point, pair, 4, options);
    REQUIRE(a);
    CHECK(a == b);
    CHECK(a->size() == 5);
    CHECK(arrow_check(*a, point, pair, 4));
}

TEST_CASE("erasing a colour")
{
    auto mono = OrderedColouredGraph{ ColouredGraph(4, { 7, 9 }, std::vector<Colour>(6, 7)), { 3, 1, 0, 2 } };
    auto h = phi_translate(mono, 7);
    CHECK(h.graph.vertices == 4);
    CHECK(h.graph.palette == std::vector<Colour>{ 9 });
    for (auto & e : h.graph.edges)
        CHECK_FALSE(e);
    CHECK(h.order == mono.order);

    CHECK(code_of([&] { phi_translate(mono, 8); }) == ErrorCode::bad_colour);
    CHECK(code_of([&] { phi_restore(h, 9, 0); }) == ErrorCode::bad_colour);
    CHECK(code_of([&] { phi_restore(h, 7, 2); }) == ErrorCode::bad_argument);

    std::mt19937_64 rng(37);
    const std::vector<Colour> palette{ 4, 1, 3 };
    for (int trial = 0 ; trial < 200 ; ++trial) {
        auto g = random_graph(rng, 1 + rng() % 6, palette);
        auto position = rng() % palette.size();
        auto c = palette[position];
        auto back = phi_restore(phi_translate(g, c), c, position);
        CHECK(back.graph == g.graph);
        CHECK(back.order == g.order);
    }
}

TEST_CASE("erasing a colour keeps the embeddings")
{
    std::mt19937_64 rng(41);
    const std::vector<Colour> palette{ 1, 2, 3 };
    auto coloured = [] (const OrderedColouredGraph & g, PointId u, PointId v) { return g.graph.colour(u, v); };
    auto partial = [] (const OrderedEdgeColouredGraph & g, PointId u, PointId v) { return g.graph.colour(u, v); };

    for (int trial = 0 ; trial < 300 ; ++trial) {
        // small palettes make embeddings common
        std::vector<Colour> used(palette.begin(), palette.begin() + 1 + rng() % 2);
        auto a = random_graph(rng, 1 + rng() % 3, used), b = random_graph(rng, 4, used);
        auto c = used[rng() % used.size()];
        auto ha = phi_translate(a, c), hb = phi_translate(b, c);

        auto before = ordered_embeddings(a, b), after = ordered_embeddings(ha, hb);
        std::set<PointMap> got_before(before.begin(), before.end()), got_after(after.begin(), after.end());
        auto expected = embeddings_by_maps(a, b, a.graph.size(), 4, coloured);
        CHECK(got_before == expected);
        CHECK(got_after == embeddings_by_maps(ha, hb, a.graph.size(), 4, partial));
        CHECK(got_before == got_after);
    }
}
