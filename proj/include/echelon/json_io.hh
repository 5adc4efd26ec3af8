/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef ECHELON_GUARD_JSON_IO_HH
#define ECHELON_GUARD_JSON_IO_HH 1

#include <echelon/colgraph.hh>
#include <echelon/errors.hh>
#include <echelon/metric.hh>
#include <echelon/ramsey.hh>
#include <echelon/rational.hh>
#include <echelon/space.hh>

#include <json.hpp>

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace echelon
{
    using Json = nlohmann::json;

    inline constexpr std::string_view format_version = "echelon/1";

    /*
     * Every document is an object carrying "format": "echelon/1" and a
     * "type". Triangular tables are lists of rows: row i (for i = 1 .. m-1)
     * holds the entries for j = 0 .. i-1. A flat list in the same order is
     * accepted on input too.
     */

    inline auto parse_document(std::string_view text) -> Json
    {
        try {
            return Json::parse(text);
        }
        catch (const Json::parse_error & e) {
            throw EchelonError(ErrorCode::malformed_json, e.what());
        }
    }

    inline auto make_document(std::string_view type) -> Json
    {
        Json j = Json::object();
        j["format"] = format_version;
        j["type"] = type;
        return j;
    }

    namespace detail
    {
        inline auto field(const Json & j, const char * name) -> const Json &
        {
            if (! j.is_object())
                throw EchelonError(ErrorCode::malformed_json, "expected a JSON object");
            auto it = j.find(name);
            if (it == j.end())
                throw EchelonError(ErrorCode::missing_field, std::string("missing field \"") + name + "\"");
            return *it;
        }

        template <typename T_>
        auto as(const Json & j, const char * what) -> T_
        {
            try {
                return j.get<T_>();
            }
            catch (const Json::exception &) {
                throw EchelonError(ErrorCode::malformed_json, std::string("field \"") + what + "\" has the wrong type");
            }
        }

        inline auto count(const Json & j, const char * name) -> std::size_t
        {
            auto & v = field(j, name);
            if (! v.is_number_integer() || v.get<std::int64_t>() < 0)
                throw EchelonError(ErrorCode::malformed_json, std::string("field \"") + name + "\" must be a non-negative integer");
            return v.get<std::size_t>();
        }

        /// Flattens a row-wise or flat lower triangle.
        inline auto triangle(const Json & j, const char * name, std::size_t points) -> std::vector<Json>
        {
            auto & v = field(j, name);
            if (! v.is_array())
                throw EchelonError(ErrorCode::malformed_json, std::string("field \"") + name + "\" must be an array");

            std::vector<Json> result;
            bool rows = ! v.empty() && std::all_of(v.begin(), v.end(), [] (const Json & e) { return e.is_array(); });
            if (! rows) {
                for (auto & e : v)
                    result.push_back(e);
            }
            else {
                if (v.size() + 1 != points)
                    throw EchelonError(ErrorCode::bad_shape, std::string("\"") + name + "\" has " + std::to_string(v.size())
                            + " rows, expected " + std::to_string(points >= 1 ? points - 1 : 0));
                for (std::size_t i = 0 ; i < v.size() ; ++i) {
                    if (v[i].size() != i + 1)
                        throw EchelonError(ErrorCode::bad_shape, std::string("row ") + std::to_string(i + 1) + " of \"" + name
                                + "\" has " + std::to_string(v[i].size()) + " entries, expected " + std::to_string(i + 1));
                    for (auto & e : v[i])
                        result.push_back(e);
                }
            }
            if (points >= 1 && result.size() != pair_count(points))
                throw EchelonError(ErrorCode::bad_shape, std::string("\"") + name + "\" has " + std::to_string(result.size())
                        + " entries, expected " + std::to_string(pair_count(points)));
            return result;
        }

        template <typename T_>
        auto rows(std::size_t points, std::span<const T_> lower, auto && convert) -> Json
        {
            Json result = Json::array();
            for (std::size_t i = 1 ; i < points ; ++i) {
                Json row = Json::array();
                for (std::size_t j = 0 ; j < i ; ++j)
                    row.push_back(convert(lower[pair_index(i, j)]));
                result.push_back(std::move(row));
            }
            return result;
        }

        inline auto rational(const Json & j, const char * what) -> Rational
        {
            if (j.is_string())
                return parse_rational(j.get<std::string>());
            if (j.is_number_integer())
                return Rational(j.get<std::int64_t>());
            throw EchelonError(ErrorCode::malformed_json, std::string("entries of \"") + what + "\" must be \"p/q\" strings or integers");
        }
    }

    /// Checks the format tag and, when present, the document type.
    inline void check_document(const Json & j, std::string_view type)
    {
        auto & format = detail::field(j, "format");
        if (! format.is_string() || format.get<std::string>() != format_version)
            throw EchelonError(ErrorCode::bad_version, "unsupported format " + format.dump() + ", expected \"" + std::string(format_version) + "\"");
        if (auto it = j.find("type") ; it != j.end() && (! it->is_string() || it->get<std::string>() != type))
            throw EchelonError(ErrorCode::malformed_json, "expected a \"" + std::string(type) + "\" document, found " + it->dump());
    }

    inline auto to_json(const EchelonedSpace & x) -> Json
    {
        auto j = make_document("space");
        j["points"] = x.size();
        j["ranks"] = x.rank_count();
        j["eta"] = detail::rows<Rank>(x.size(), x.lower_triangle(), [] (Rank r) { return r; });
        return j;
    }

    inline auto space_from_json(const Json & j) -> EchelonedSpace
    {
        check_document(j, "space");
        auto points = detail::count(j, "points");
        if (points < 1)
            throw EchelonError(ErrorCode::bad_point_count, "a space needs at least one point");
        std::vector<Rank> lower;
        for (auto & e : detail::triangle(j, "eta", points)) {
            if (! e.is_number_integer())
                throw EchelonError(ErrorCode::malformed_json, "ranks must be integers");
            auto r = e.get<std::int64_t>();
            if (r < 0)
                throw EchelonError(ErrorCode::rank_out_of_range, "negative rank " + std::to_string(r));
            lower.push_back(static_cast<Rank>(r));
        }
        if (j.contains("ranks"))
            return EchelonedSpace::from_ranks(points, static_cast<Rank>(detail::count(j, "ranks")), std::move(lower));
        return EchelonedSpace::from_ranks(points, std::move(lower));
    }

    inline auto to_json(const OrderedEchelonedSpace & x) -> Json
    {
        auto j = to_json(x.space());
        j["type"] = "ordered_space";
        j["order"] = x.order();
        return j;
    }

    /// Accepts an ordered space, or a plain space ordered by point index.
    inline auto ordered_space_from_json(const Json & j) -> OrderedEchelonedSpace
    {
        Json plain = j;
        std::optional<PointMap> order;
        if (j.is_object() && j.contains("order")) {
            order = detail::as<PointMap>(j["order"], "order");
            plain.erase("order");
        }
        if (plain.is_object() && plain.value("type", "") == "ordered_space")
            plain["type"] = "space";
        auto space = space_from_json(plain);
        if (order)
            return OrderedEchelonedSpace(std::move(space), std::move(*order));
        return OrderedEchelonedSpace(std::move(space));
    }

    inline auto to_json(const Metric & d) -> Json
    {
        auto j = make_document("metric");
        j["points"] = d.size();
        j["d"] = detail::rows<Rational>(d.size(), d.lower_triangle(), [] (const Rational & q) { return to_string(q); });
        return j;
    }

    inline auto metric_from_json(const Json & j) -> Metric
    {
        check_document(j, "metric");
        auto points = detail::count(j, "points");
        if (points < 1)
            throw EchelonError(ErrorCode::bad_point_count, "a metric space needs at least one point");
        std::vector<Rational> lower;
        for (auto & e : detail::triangle(j, "d", points))
            lower.push_back(detail::rational(e, "d"));
        return Metric::from_lower(points, std::move(lower));
    }

    /// Comparable weights on pairs, compressed into a space by `echelon`.
    inline auto weights_from_json(const Json & j) -> std::pair<std::size_t, std::vector<Rational>>
    {
        check_document(j, "weights");
        auto points = detail::count(j, "points");
        if (points < 1)
            throw EchelonError(ErrorCode::bad_point_count, "needs at least one point");
        std::vector<Rational> lower;
        for (auto & e : detail::triangle(j, "w", points))
            lower.push_back(detail::rational(e, "w"));
        return { points, std::move(lower) };
    }

    inline auto to_json(const ColouredGraph & g) -> Json
    {
        auto j = make_document("graph");
        j["v"] = g.size();
        j["colours"] = g.palette();
        j["chi"] = detail::rows<Colour>(g.size(), g.edges(), [] (Colour c) { return c; });
        return j;
    }

    inline auto graph_from_json(const Json & j) -> ColouredGraph
    {
        check_document(j, "graph");
        auto vertices = detail::count(j, "v");
        if (vertices < 1)
            throw EchelonError(ErrorCode::bad_point_count, "a graph needs at least one vertex");
        auto palette = detail::as<std::vector<Colour>>(detail::field(j, "colours"), "colours");
        std::vector<Colour> chi;
        for (auto & e : detail::triangle(j, "chi", vertices))
            chi.push_back(detail::as<Colour>(e, "chi"));
        return ColouredGraph(vertices, std::move(palette), std::move(chi));
    }

    inline auto map_to_json(std::span<const PointId> h) -> Json
    {
        auto j = make_document("map");
        j["map"] = std::vector<PointId>(h.begin(), h.end());
        return j;
    }

    /// A map document, or a bare array of point ids.
    inline auto map_from_json(const Json & j) -> PointMap
    {
        if (j.is_array())
            return detail::as<PointMap>(j, "map");
        check_document(j, "map");
        return detail::as<PointMap>(detail::field(j, "map"), "map");
    }

    /// An embedding certificate: the point map and its induced rank map.
    inline auto certificate(std::span<const PointId> points, std::span<const Rank> ranks) -> Json
    {
        Json j = Json::object();
        j["map"] = std::vector<PointId>(points.begin(), points.end());
        j["ranks"] = std::vector<Rank>(ranks.begin(), ranks.end());
        return j;
    }

    inline auto rationals_to_json(std::span<const Rational> values) -> Json
    {
        Json result = Json::array();
        for (auto & q : values)
            result.push_back(to_string(q));
        return result;
    }

    /// Identifies the document type, for `validate`.
    inline auto document_type(const Json & j) -> std::string
    {
        auto & format = detail::field(j, "format");
        if (! format.is_string() || format.get<std::string>() != format_version)
            throw EchelonError(ErrorCode::bad_version, "unsupported format " + format.dump());
        return detail::as<std::string>(detail::field(j, "type"), "type");
    }
}

#endif
