/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef ECHELON_GUARD_METRIC_HH
#define ECHELON_GUARD_METRIC_HH 1

#include <echelon/errors.hh>
#include <echelon/rational.hh>
#include <echelon/space.hh>

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace echelon
{
    /// Finite metric with exact rational distances, stored as a strict lower
    /// triangle. Always satisfies the metric axioms once constructed.
    class Metric
    {
        private:
            std::size_t _points = 1;
            std::vector<Rational> _d;

            Metric(std::size_t points, std::vector<Rational> && d) :
                _points(points),
                _d(std::move(d))
            {
            }

        public:
            Metric() = default;

            static auto from_lower(std::size_t points, std::vector<Rational> lower) -> Metric;
            static auto from_matrix(const std::vector<std::vector<Rational>> & matrix) -> Metric;

            auto size() const -> std::size_t { return _points; }

            auto distance(PointId x, PointId y) const -> const Rational &
            {
                static const Rational zero{ 0 };
                return x == y ? zero : _d[pair_index(x, y)];
            }

            auto lower_triangle() const -> const std::vector<Rational> & { return _d; }

            auto operator== (const Metric &) const -> bool = default;
    };

    /// The first failing metric axiom of a lower-triangle distance table.
    inline auto diagnose_metric(std::size_t points, std::span<const Rational> lower) -> std::optional<Diagnostic>
    {
        if (points < 1)
            return Diagnostic{ ErrorCode::bad_point_count, "a metric space needs at least one point" };
        if (lower.size() != pair_count(points))
            return Diagnostic{ ErrorCode::bad_shape, "expected " + std::to_string(pair_count(points)) + " distances" };

        auto d = [&] (std::size_t x, std::size_t y) -> const Rational & { return lower[pair_index(x, y)]; };
        for (std::size_t i = 1 ; i < points ; ++i)
            for (std::size_t j = 0 ; j < i ; ++j)
                if (d(i, j) <= 0)
                    return Diagnostic{ ErrorCode::nonpositive_distance, "d(" + std::to_string(i) + "," + std::to_string(j)
                        + ") = " + to_string(d(i, j)) + " is not positive" };

        for (std::size_t x = 0 ; x < points ; ++x)
            for (std::size_t y = 0 ; y < points ; ++y)
                for (std::size_t z = 0 ; z < points ; ++z) {
                    if (x == y || y == z || x == z)
                        continue;
                    if (d(x, z) > d(x, y) + d(y, z))
                        return Diagnostic{ ErrorCode::triangle_inequality, "d(" + std::to_string(x) + "," + std::to_string(z)
                            + ") > d(" + std::to_string(x) + "," + std::to_string(y) + ") + d(" + std::to_string(y) + ","
                            + std::to_string(z) + ")" };
                }

        return std::nullopt;
    }

    inline auto Metric::from_lower(std::size_t points, std::vector<Rational> lower) -> Metric
    {
        if (auto diagnostic = diagnose_metric(points, lower))
            throw EchelonError(diagnostic->code, diagnostic->message);
        return Metric(points, std::move(lower));
    }

    /// Full square matrix; also checks symmetry and the zero diagonal.
    inline auto Metric::from_matrix(const std::vector<std::vector<Rational>> & matrix) -> Metric
    {
        const auto m = matrix.size();
        for (auto & row : matrix)
            if (row.size() != m)
                throw EchelonError(ErrorCode::bad_shape, "distance matrix is not square");
        for (std::size_t i = 0 ; i < m ; ++i) {
            if (matrix[i][i] != 0)
                throw EchelonError(ErrorCode::nonzero_diagonal, "d(" + std::to_string(i) + "," + std::to_string(i) + ") is not 0");
            for (std::size_t j = 0 ; j < i ; ++j)
                if (matrix[i][j] != matrix[j][i])
                    throw EchelonError(ErrorCode::not_symmetric, "d(" + std::to_string(i) + "," + std::to_string(j) + ") != d("
                            + std::to_string(j) + "," + std::to_string(i) + ")");
        }

        std::vector<Rational> lower;
        lower.reserve(m >= 1 ? pair_count(m) : 0);
        for (std::size_t i = 1 ; i < m ; ++i)
            for (std::size_t j = 0 ; j < i ; ++j)
                lower.push_back(matrix[i][j]);
        return from_lower(m, std::move(lower));
    }

    /// The echeloned space induced by comparing distances.
    inline auto from_metric(const Metric & d) -> EchelonedSpace
    {
        return from_weights(d.size(), std::span<const Rational>(d.lower_triangle()));
    }

    /// Realises x by a dull metric: rank i goes to 1 + i / (n + 1), so every
    /// nonzero distance lies strictly inside (1, 2).
    inline auto metrize_dull(const EchelonedSpace & x) -> Metric
    {
        const Rational denominator = Rational(x.rank_count() + 1);
        std::vector<Rational> lower;
        lower.reserve(x.lower_triangle().size());
        for (auto r : x.lower_triangle())
            lower.push_back(1 + Rational(r) / denominator);
        return Metric::from_lower(x.size(), std::move(lower));
    }

    /// Any nonzero distance is at most the sum of any two nonzero distances;
    /// for a finite metric that is max <= 2 min over the nonzero values.
    inline auto is_dull(const Metric & d) -> bool
    {
        const auto & values = d.lower_triangle();
        if (values.empty())
            return true;
        auto [smallest, largest] = std::minmax_element(values.begin(), values.end());
        return *largest <= 2 * *smallest;
    }

    inline auto is_one_lipschitz(const Metric & source, const Metric & target, std::span<const PointId> h) -> bool
    {
        if (h.size() != source.size())
            throw EchelonError(ErrorCode::bad_map, "map is not total on the source");
        for (auto p : h)
            if (p >= target.size())
                throw EchelonError(ErrorCode::bad_map, "map leaves the target");

        for (PointId x = 1 ; x < source.size() ; ++x)
            for (PointId y = 0 ; y < x ; ++y)
                if (target.distance(h[x], h[y]) > source.distance(x, y))
                    return false;
        return true;
    }
}

#endif
