/* vim: set sw=4 sts=4 et foldmethod=syntax : */

// A short tour: build a space from weights, realize it by a dull metric,
// amalgamate two extensions, and look at the first points of a limit model.

#include <echelon/echelon.hh>

#include <iostream>

using namespace echelon;

auto main() -> int
{
    // pairs are listed as (1,0), (2,0), (2,1); equal weights share a rank
    auto x = from_weights(3, std::vector<double>{ 0.5, 2.0, 2.0 });
    std::cout << "ranks:";
    for (auto r : x.lower_triangle())
        std::cout << ' ' << r;
    std::cout << '\n';

    auto d = metrize_dull(x);
    std::cout << "dull metric:";
    for (auto & v : d.lower_triangle())
        std::cout << ' ' << to_string(v);
    std::cout << (is_dull(d) ? " (dull)" : "") << '\n';

    // two copies of an edge glued along one endpoint
    auto point = EchelonedSpace::single_point();
    auto edge = EchelonedSpace::from_ranks(2, 1, { 1 });
    auto glued = amalgamate(point, edge, edge, PointMap{ 0 }, PointMap{ 0 });
    std::cout << "amalgam has " << glued.space.size() << " points and " << glued.space.rank_count() << " ranks\n";

    auto model = LimitModel::deterministic(7);
    auto prefix = model.sample_prefix(6);
    std::cout << "labels of the first 6 points:";
    for (auto & label : model.labels(6))
        std::cout << ' ' << to_string(label);
    std::cout << "\nprefix isomorphic to itself: " << (are_isomorphic(prefix, prefix) ? "yes" : "no") << '\n';
}
