/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <echelon/json_io.hh>
#include <echelon/metric.hh>
#include <echelon/ramsey.hh>

#include "oracles.hh"

#include <catch_amalgamated.hpp>

#include <random>

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

    auto q(std::int64_t p, std::int64_t d = 1) -> Rational { return make_rational(p, d); }
}

TEST_CASE("rationals are always written as p/q")
{
    CHECK(to_string(q(3)) == "3/1");
    CHECK(to_string(q(4, 6)) == "2/3");
    CHECK(to_string(q(-1, 2)) == "-1/2");
    CHECK(parse_rational("6/4") == q(3, 2));
    CHECK(parse_rational("7") == q(7));
    CHECK(parse_rational("-2/3") == q(-2, 3));
    CHECK(code_of([] { parse_rational("1/0"); }) == ErrorCode::malformed_json);
    CHECK(code_of([] { parse_rational("1.5"); }) == ErrorCode::malformed_json);
    CHECK(code_of([] { parse_rational("/2"); }) == ErrorCode::malformed_json);
}

TEST_CASE("a space document")
{
    auto x = EchelonedSpace::from_ranks(3, 2, { 1, 2, 2 });
    auto j = to_json(x);
    CHECK(j.dump() == R"({"eta":[[1],[2,2]],"format":"echelon/1","points":3,"ranks":2,"type":"space"})");
    CHECK(space_from_json(j) == x);
    CHECK(document_type(j) == "space");

    // a flat lower triangle, and no rank count
    auto flat = parse_document(R"({"format":"echelon/1","points":3,"eta":[1,2,2]})");
    CHECK(space_from_json(flat) == x);
}

TEST_CASE("documents roundtrip")
{
    std::mt19937_64 rng(3);
    for (int trial = 0 ; trial < 200 ; ++trial) {
        auto x = oracle::random_space(rng, 1 + rng() % 7);
        CHECK(space_from_json(parse_document(to_json(x).dump())) == x);

        auto d = metrize_dull(x);
        CHECK(metric_from_json(parse_document(to_json(d).dump())) == d);

        auto o = OrderedEchelonedSpace(x, oracle::random_permutation(rng, x.size()));
        CHECK(ordered_space_from_json(parse_document(to_json(o).dump())) == o);

        auto g = to_coloured_graph(x);
        CHECK(graph_from_json(parse_document(to_json(g).dump())) == g);

        auto h = oracle::random_permutation(rng, x.size());
        CHECK(map_from_json(parse_document(map_to_json(h).dump())) == h);
    }

    CHECK(ordered_space_from_json(to_json(EchelonedSpace::single_point())) == OrderedEchelonedSpace(EchelonedSpace::single_point()));
    CHECK(map_from_json(parse_document("[2, 0, 1]")) == PointMap{ 2, 0, 1 });
}

TEST_CASE("metric and weight documents")
{
    auto d = metric_from_json(parse_document(R"({"format":"echelon/1","type":"metric","points":3,"d":[["2"],["4","4/1"]]})"));
    CHECK(d.distance(0, 1) == 2);
    CHECK(d.distance(2, 1) == 4);
    CHECK(to_json(d)["d"][1][0] == "4/1");

    auto [points, w] = weights_from_json(parse_document(R"({"format":"echelon/1","type":"weights","points":3,"w":[[1],["1/2",3]]})"));
    CHECK(points == 3);
    CHECK(w == std::vector<Rational>{ q(1), q(1, 2), q(3) });
}

TEST_CASE("document errors")
{
    auto doc = [] (const char * text) { return parse_document(text); };

    CHECK(code_of([&] { doc("{\"format\": "); }) == ErrorCode::malformed_json);
    CHECK(code_of([&] { space_from_json(doc(R"({"points":2,"eta":[[1]]})")); }) == ErrorCode::missing_field);
    CHECK(code_of([&] { space_from_json(doc(R"({"format":"echelon/1","eta":[[1]]})")); }) == ErrorCode::missing_field);
    CHECK(code_of([&] { space_from_json(doc(R"({"format":"echelon/2","points":2,"eta":[[1]]})")); }) == ErrorCode::bad_version);
    CHECK(code_of([&] { space_from_json(doc(R"({"format":"echelon/1","type":"metric","points":2,"eta":[[1]]})")); })
            == ErrorCode::malformed_json);
    CHECK(code_of([&] { space_from_json(doc(R"({"format":"echelon/1","points":"two","eta":[[1]]})")); }) == ErrorCode::malformed_json);
    CHECK(code_of([&] { space_from_json(doc(R"({"format":"echelon/1","points":2,"eta":[["1"]]})")); }) == ErrorCode::malformed_json);
    CHECK(code_of([&] { space_from_json(doc("[1, 2]")); }) == ErrorCode::malformed_json);
    CHECK(code_of([&] { metric_from_json(doc(R"({"format":"echelon/1","points":2,"d":[[1.5]]})")); }) == ErrorCode::malformed_json);
    CHECK(code_of([&] { document_type(doc(R"({"format":"echelon/1"})")); }) == ErrorCode::missing_field);
}

TEST_CASE("structural errors pass through from the validators")
{
    auto doc = [] (const char * text) { return parse_document(text); };

    CHECK(code_of([&] { space_from_json(doc(R"({"format":"echelon/1","points":3,"eta":[[1],[2]]})")); }) == ErrorCode::bad_shape);
    CHECK(code_of([&] { space_from_json(doc(R"({"format":"echelon/1","points":3,"eta":[1,2]})")); }) == ErrorCode::bad_shape);
    CHECK(code_of([&] { space_from_json(doc(R"({"format":"echelon/1","points":0,"eta":[]})")); }) == ErrorCode::bad_point_count);
    CHECK(code_of([&] { space_from_json(doc(R"({"format":"echelon/1","points":2,"eta":[[0]]})")); }) == ErrorCode::zero_off_diagonal);
    CHECK(code_of([&] { space_from_json(doc(R"({"format":"echelon/1","points":3,"eta":[[1],[3,3]]})")); }) == ErrorCode::rank_gap);
    CHECK(code_of([&] { space_from_json(doc(R"({"format":"echelon/1","points":2,"eta":[[-1]]})")); }) == ErrorCode::rank_out_of_range);
    CHECK(code_of([&] { metric_from_json(doc(R"({"format":"echelon/1","points":3,"d":[["1"],["3","1"]]})")); })
            == ErrorCode::triangle_inequality);
    CHECK(code_of([&] { graph_from_json(doc(R"({"format":"echelon/1","v":2,"colours":[1],"chi":[[2]]})")); }) == ErrorCode::bad_colour);
    CHECK(code_of([&] { ordered_space_from_json(doc(R"({"format":"echelon/1","points":2,"eta":[[1]],"order":[0,0]})")); })
            == ErrorCode::bad_order);
}
