/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef ECHELON_GUARD_ERRORS_HH
#define ECHELON_GUARD_ERRORS_HH 1

#include <stdexcept>
#include <string>
#include <string_view>

namespace echelon
{
    /// Machine-readable failure categories. Codes in the "validation" family
    /// describe a structurally invalid input object; the rest describe bad
    /// documents, exhausted budgets or misuse of an operation.
    enum class ErrorCode
    {
        // structure validation
        bad_point_count,
        bad_shape,
        zero_off_diagonal,
        rank_out_of_range,
        rank_gap,
        not_symmetric,
        nonzero_diagonal,
        nonpositive_distance,
        triangle_inequality,
        incomparable_weight,
        not_an_embedding,
        not_a_one_point_extension,
        overlapping_sets,
        bad_colour,
        unordered_colours,
        bad_order,
        bad_map,
        empty_subset,
        bad_demand,
        // documents
        malformed_json,
        missing_field,
        bad_version,
        // budgets and misuse
        cap_exceeded,
        budget_exceeded,
        unmaterialized_point,
        witness_not_found,
        bad_argument
    };

    inline auto to_string(ErrorCode code) -> std::string_view
    {
        switch (code) {
            case ErrorCode::bad_point_count: return "bad_point_count";
            case ErrorCode::bad_shape: return "bad_shape";
            case ErrorCode::zero_off_diagonal: return "zero_off_diagonal";
            case ErrorCode::rank_out_of_range: return "rank_out_of_range";
            case ErrorCode::rank_gap: return "rank_gap";
            case ErrorCode::not_symmetric: return "not_symmetric";
            case ErrorCode::nonzero_diagonal: return "nonzero_diagonal";
            case ErrorCode::nonpositive_distance: return "nonpositive_distance";
            case ErrorCode::triangle_inequality: return "triangle_inequality";
            case ErrorCode::incomparable_weight: return "incomparable_weight";
            case ErrorCode::not_an_embedding: return "not_an_embedding";
            case ErrorCode::not_a_one_point_extension: return "not_a_one_point_extension";
            case ErrorCode::overlapping_sets: return "overlapping_sets";
            case ErrorCode::bad_colour: return "bad_colour";
            case ErrorCode::unordered_colours: return "unordered_colours";
            case ErrorCode::bad_order: return "bad_order";
            case ErrorCode::bad_map: return "bad_map";
            case ErrorCode::empty_subset: return "empty_subset";
            case ErrorCode::bad_demand: return "bad_demand";
            case ErrorCode::malformed_json: return "malformed_json";
            case ErrorCode::missing_field: return "missing_field";
            case ErrorCode::bad_version: return "bad_version";
            case ErrorCode::cap_exceeded: return "cap_exceeded";
            case ErrorCode::budget_exceeded: return "budget_exceeded";
            case ErrorCode::unmaterialized_point: return "unmaterialized_point";
            case ErrorCode::witness_not_found: return "witness_not_found";
            case ErrorCode::bad_argument: return "bad_argument";
        }
        return "unknown";
    }

    inline auto is_validation_error(ErrorCode code) -> bool
    {
        return code <= ErrorCode::bad_demand;
    }

    inline auto is_document_error(ErrorCode code) -> bool
    {
        return code == ErrorCode::malformed_json || code == ErrorCode::missing_field || code == ErrorCode::bad_version;
    }

    class EchelonError : public std::runtime_error
    {
        private:
            ErrorCode _code;

        public:
            EchelonError(ErrorCode code, const std::string & message) :
                std::runtime_error(std::string(to_string(code)) + ": " + message),
                _code(code)
            {
            }

            auto code() const -> ErrorCode
            {
                return _code;
            }
    };
}

#endif
