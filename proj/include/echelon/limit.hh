/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef ECHELON_GUARD_LIMIT_HH
#define ECHELON_GUARD_LIMIT_HH 1

#include <echelon/colgraph.hh>
#include <echelon/errors.hh>
#include <echelon/rational.hh>
#include <echelon/space.hh>
#include <echelon/stern_brocot.hh>

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace echelon
{
    enum class LimitMode
    {
        random,
        deterministic
    };

    inline auto to_string(LimitMode mode) -> std::string
    {
        return mode == LimitMode::random ? "random" : "deterministic";
    }

    /// Rank labels of the limit are positive rationals, with 0 on the diagonal.
    using RankLabel = Rational;

    struct ExactLabel
    {
        RankLabel value;
    };

    /**
     * A label strictly between low and high (no upper bound when high is
     * empty; low = 0 means "anything above bottom"). Constraints that share
     * the same interval and carry a slot are ordered by it: equal slots ask
     * for equal labels, smaller slots for smaller ones.
     */
    struct OpenInterval
    {
        RankLabel low;
        std::optional<RankLabel> high;
        std::optional<unsigned> slot;
    };

    using LabelConstraint = std::variant<ExactLabel, OpenInterval>;

    /// A one-point extension request: a new point whose labels towards the
    /// listed existing points obey the given constraints.
    struct Demand
    {
        std::vector<std::pair<PointId, LabelConstraint>> base;
    };

    struct LimitOptions
    {
        double p = 0.5;
        /// Random mode grows by this many vertices at a time while searching.
        std::size_t block = 64;
        /// Random mode gives up (witness_not_found) beyond this many vertices.
        std::size_t vertex_cap = std::size_t(1) << 20;
    };

    namespace detail
    {
        inline auto interval_key(const OpenInterval & i) -> std::pair<RankLabel, std::optional<RankLabel>>
        {
            return { i.low, i.high };
        }

        inline auto cantor_second(std::uint64_t t) -> std::uint64_t
        {
            std::uint64_t w = 0;
            while ((w + 1) * (w + 2) / 2 <= t)
                ++w;
            return t - w * (w + 1) / 2;
        }
    }

    /**
     * A growing finite prefix of the countable universal homogeneous
     * echeloned space, with positive rational rank labels.
     *
     * Random mode is the random coloured graph with geometric colour law,
     * colour index i read as the i-th Calkin-Wilf rational; every label is a
     * pure function of (seed, u, v), so the prefix is only a materialisation
     * count. Witnesses are found by scanning, growing in blocks.
     *
     * Deterministic mode stores its labels. New points come either from
     * ensure_witness, realised directly with fresh Stern-Brocot labels, or
     * from limit_points, which first drains explicitly scheduled demands and
     * then synthesises one-point extensions of the whole prefix along a
     * dovetailed schedule.
     *
     * Single writer: mutating calls need exclusive access.
     */
    class LimitModel
    {
        private:
            LimitMode _mode;
            std::uint64_t _seed;
            LimitOptions _options;
            std::size_t _size = 0;

            // deterministic mode state
            std::vector<std::vector<RankLabel>> _rows;
            std::set<RankLabel> _used;
            std::deque<Demand> _pending;
            std::uint64_t _step = 0;

            LimitModel(LimitMode mode, std::uint64_t seed, LimitOptions options) :
                _mode(mode),
                _seed(seed),
                _options(options)
            {
                if (mode == LimitMode::random)
                    validate_colouring(GeometricColouring{ options.p, seed });
                if (options.block < 1)
                    throw EchelonError(ErrorCode::bad_argument, "growth block must be positive");
            }

            auto colouring() const -> GeometricColouring
            {
                return GeometricColouring{ _options.p, _seed };
            }

            void check_point(PointId p) const
            {
                if (p >= _size)
                    throw EchelonError(ErrorCode::unmaterialized_point, "point " + std::to_string(p) + " is not materialised (prefix has "
                            + std::to_string(_size) + " points)");
            }

            void validate(const Demand & d) const
            {
                std::set<PointId> seen;
                for (auto & [p, constraint] : d.base) {
                    check_point(p);
                    if (! seen.insert(p).second)
                        throw EchelonError(ErrorCode::bad_demand, "point " + std::to_string(p) + " constrained twice");
                    if (auto e = std::get_if<ExactLabel>(&constraint)) {
                        if (e->value <= 0)
                            throw EchelonError(ErrorCode::bad_demand, "exact labels must be positive");
                    }
                    else {
                        auto & i = std::get<OpenInterval>(constraint);
                        if (i.low < 0)
                            throw EchelonError(ErrorCode::bad_demand, "interval lower end below 0");
                        if (i.high && ! (i.low < *i.high))
                            throw EchelonError(ErrorCode::bad_demand, "empty interval (" + to_string(i.low) + ", " + to_string(*i.high) + ")");
                    }
                }
            }

            auto max_used() const -> RankLabel
            {
                return _used.empty() ? RankLabel(0) : *_used.rbegin();
            }

            /// A label above every label in use, and above `above`.
            auto fresh_maximum(const RankLabel & above) -> RankLabel
            {
                RankLabel result = RankLabel(floor_of(std::max(max_used(), above)) + 1);
                _used.insert(result);
                return result;
            }

            /// The simplest label in (low, high) not in use; nothing in use
            /// lies between low and the result.
            auto fresh_between(const RankLabel & low, const RankLabel & high) -> RankLabel
            {
                RankLabel upper = high;
                auto above = _used.upper_bound(low);
                if (above != _used.end() && *above < upper)
                    upper = *above;
                RankLabel result = simplest_between(low, upper);
                _used.insert(result);
                return result;
            }

            auto construct(const Demand & d) -> PointId
            {
                const PointId z = _size;
                std::vector<std::optional<RankLabel>> row(_size);

                for (auto & [p, constraint] : d.base)
                    if (auto e = std::get_if<ExactLabel>(&constraint)) {
                        row[p] = e->value;
                        _used.insert(e->value);
                    }

                // interval constraints, grouped by interval, then by slot
                // (unslotted constraints each form their own group, after the
                // slotted ones, in the order given)
                std::map<std::pair<RankLabel, std::optional<RankLabel>>, std::vector<std::pair<std::pair<int, std::size_t>, PointId>>> intervals;
                for (std::size_t k = 0 ; k < d.base.size() ; ++k) {
                    auto & [p, constraint] = d.base[k];
                    if (auto i = std::get_if<OpenInterval>(&constraint)) {
                        auto order = i->slot ? std::pair<int, std::size_t>{ 0, *i->slot } : std::pair<int, std::size_t>{ 1, k };
                        intervals[detail::interval_key(*i)].emplace_back(order, p);
                    }
                }

                for (auto & [key, members] : intervals) {
                    std::sort(members.begin(), members.end());
                    RankLabel previous = key.first;
                    std::optional<std::pair<int, std::size_t>> previous_group;
                    for (auto & [group, p] : members) {
                        if (! previous_group || *previous_group != group) {
                            previous = key.second ? fresh_between(previous, *key.second) : fresh_maximum(previous);
                            previous_group = group;
                        }
                        row[p] = previous;
                    }
                }

                // everything outside the base: fresh labels above all others
                std::vector<RankLabel> labels(_size);
                for (PointId p = 0 ; p < _size ; ++p)
                    labels[p] = row[p] ? *row[p] : fresh_maximum(RankLabel(0));

                _rows.push_back(std::move(labels));
                ++_size;
                return z;
            }

            /// The synthesised demand for the next point: every existing point
            /// gets a position relative to the labels in use, read off the
            /// digits of the dovetailed pattern index.
            auto synthesised_demand() -> Demand
            {
                Demand d;
                if (_size == 0)
                    return d;

                std::vector<RankLabel> labels(_used.begin(), _used.end());
                const std::uint64_t r = labels.size(), radix = 2 * r + 1;
                std::uint64_t pattern = detail::cantor_second(_step);
                const std::size_t rotation = _seed % _size;

                for (std::size_t k = 0 ; k < _size ; ++k) {
                    PointId p = (rotation + k) % _size;
                    std::uint64_t digit = pattern % radix;
                    pattern /= radix;

                    // positions: exact labels ascending, then the gap above the
                    // top, then the lower gaps descending
                    LabelConstraint c;
                    if (digit < r)
                        c = ExactLabel{ labels[digit] };
                    else if (digit == r)
                        c = OpenInterval{ r == 0 ? RankLabel(0) : labels[r - 1], std::nullopt, std::nullopt };
                    else {
                        std::uint64_t g = 2 * r - digit;   // gap below labels[g]
                        c = OpenInterval{ g == 0 ? RankLabel(0) : labels[g - 1], labels[g], std::nullopt };
                    }
                    d.base.emplace_back(p, c);
                }
                return d;
            }

            void grow_one()
            {
                if (_mode == LimitMode::random) {
                    ++_size;
                    return;
                }
                if (! _pending.empty()) {
                    auto d = std::move(_pending.front());
                    _pending.pop_front();
                    construct(d);
                    return;
                }
                auto d = synthesised_demand();
                ++_step;
                construct(d);
            }

        public:
            static auto random(std::uint64_t seed, LimitOptions options = {}) -> LimitModel
            {
                return LimitModel(LimitMode::random, seed, options);
            }

            static auto deterministic(std::uint64_t seed, LimitOptions options = {}) -> LimitModel
            {
                return LimitModel(LimitMode::deterministic, seed, options);
            }

            auto mode() const -> LimitMode { return _mode; }
            auto seed() const -> std::uint64_t { return _seed; }
            auto options() const -> const LimitOptions & { return _options; }
            auto size() const -> std::size_t { return _size; }

            /// Queue a demand for the next limit_points growth (deterministic
            /// mode only).
            void schedule(Demand d)
            {
                if (_mode != LimitMode::deterministic)
                    throw EchelonError(ErrorCode::bad_argument, "only deterministic models keep a demand queue");
                validate(d);
                _pending.push_back(std::move(d));
            }

            auto pending() const -> std::size_t { return _pending.size(); }

            /// The first n points, materialising as needed.
            auto points(std::size_t n) -> std::vector<PointId>
            {
                if (n < 1)
                    throw EchelonError(ErrorCode::bad_argument, "limit_points needs n >= 1");
                while (_size < n)
                    grow_one();
                std::vector<PointId> result(n);
                std::iota(result.begin(), result.end(), 0);
                return result;
            }

            auto rank(PointId u, PointId v) const -> RankLabel
            {
                check_point(u);
                check_point(v);
                if (u == v)
                    return RankLabel(0);
                if (_mode == LimitMode::random)
                    return calkin_wilf(geometric_edge_colour(colouring(), u, v));
                return u > v ? _rows[u][v] : _rows[v][u];
            }

            /// Colour index of an edge in random mode.
            auto colour_index(PointId u, PointId v) const -> std::uint64_t
            {
                if (_mode != LimitMode::random)
                    throw EchelonError(ErrorCode::bad_argument, "colour indices exist only in random mode");
                check_point(u);
                check_point(v);
                return geometric_edge_colour(colouring(), u, v);
            }

            auto satisfies(PointId z, const Demand & d) const -> bool
            {
                std::vector<RankLabel> got;
                got.reserve(d.base.size());
                for (auto & [p, constraint] : d.base) {
                    if (p == z)
                        return false;
                    RankLabel label = rank(z, p);
                    if (auto e = std::get_if<ExactLabel>(&constraint)) {
                        if (label != e->value)
                            return false;
                    }
                    else {
                        auto & i = std::get<OpenInterval>(constraint);
                        if (! (i.low < label) || (i.high && ! (label < *i.high)))
                            return false;
                    }
                    got.push_back(std::move(label));
                }

                for (std::size_t a = 0 ; a < d.base.size() ; ++a)
                    for (std::size_t b = a + 1 ; b < d.base.size() ; ++b) {
                        auto ia = std::get_if<OpenInterval>(&d.base[a].second), ib = std::get_if<OpenInterval>(&d.base[b].second);
                        if (! ia || ! ib || ! ia->slot || ! ib->slot || detail::interval_key(*ia) != detail::interval_key(*ib))
                            continue;
                        if (*ia->slot == *ib->slot && got[a] != got[b])
                            return false;
                        if (*ia->slot < *ib->slot && ! (got[a] < got[b]))
                            return false;
                        if (*ia->slot > *ib->slot && ! (got[b] < got[a]))
                            return false;
                    }
                return true;
            }

            /**
             * A point outside the base meeting the demand. Deterministic mode
             * always builds a new point; random mode scans the materialised
             * prefix and then grows it block by block up to the vertex cap.
             */
            auto ensure_witness(const Demand & d) -> PointId
            {
                validate(d);
                if (_mode == LimitMode::deterministic)
                    return construct(d);

                for (PointId z = 0 ; z < _size ; ++z)
                    if (satisfies(z, d))
                        return z;

                const std::size_t original = _size;
                while (_size < _options.vertex_cap) {
                    std::size_t from = _size;
                    _size = std::min(_size + _options.block, _options.vertex_cap);
                    for (PointId z = from ; z < _size ; ++z)
                        if (satisfies(z, d))
                            return z;
                }
                _size = original;
                throw EchelonError(ErrorCode::witness_not_found, "no witness among " + std::to_string(_options.vertex_cap)
                        + " vertices");
            }

            /**
             * Several witnesses of a demand in random mode, in point order: up
             * to `count` of them, looking no further than four times as far as
             * the first one needed.
             */
            auto witnesses(const Demand & d, std::size_t count) -> std::vector<PointId>
            {
                if (_mode != LimitMode::random)
                    throw EchelonError(ErrorCode::bad_argument, "witness lists need a random model");
                std::vector<PointId> result{ ensure_witness(d) };
                const std::size_t horizon = std::min<std::size_t>(4 * (result.front() + 1) + _options.block, _options.vertex_cap);
                for (PointId z = result.front() + 1 ; z < horizon && result.size() < count ; ++z) {
                    if (z >= _size)
                        _size = std::min(_size + _options.block, _options.vertex_cap);
                    if (satisfies(z, d))
                        result.push_back(z);
                }
                return result;
            }

            /// The first n points as a rank-compressed echeloned space.
            auto sample_prefix(std::size_t n) -> EchelonedSpace
            {
                points(n);
                return from_weight_function(n, [&] (PointId i, PointId j) { return rank(i, j); });
            }

            /// Distinct labels among the first n points, ascending.
            auto labels(std::size_t n) const -> std::vector<RankLabel>
            {
                std::set<RankLabel> result;
                for (PointId i = 1 ; i < std::min(n, _size) ; ++i)
                    for (PointId j = 0 ; j < i ; ++j)
                        result.insert(rank(i, j));
                return { result.begin(), result.end() };
            }
    };

    inline auto limit_new(LimitMode mode, std::uint64_t seed, LimitOptions options = {}) -> LimitModel
    {
        return mode == LimitMode::random ? LimitModel::random(seed, options) : LimitModel::deterministic(seed, options);
    }

    inline auto limit_points(LimitModel & model, std::size_t n) -> std::vector<PointId>
    {
        return model.points(n);
    }

    inline auto limit_rank(const LimitModel & model, PointId u, PointId v) -> RankLabel
    {
        return model.rank(u, v);
    }

    /// Corresponding points: left[k] in the first model, right[k] in the second.
    struct PartialIsomorphism
    {
        std::vector<PointId> left;
        std::vector<PointId> right;
    };

    namespace detail
    {
        struct Side
        {
            LimitModel & model;
            std::vector<PointId> & mapped;
            std::set<PointId> covered;
        };

        /// The demand on the target side that keeps the map a partial
        /// isomorphism once x is added: labels are placed by their position
        /// among the labels already spanned by the mapped points.
        inline auto transfer_demand(const LimitModel & source, const std::vector<PointId> & source_mapped,
                const LimitModel & target, const std::vector<PointId> & target_mapped, PointId x) -> Demand
        {
            std::set<RankLabel> source_labels, target_labels;
            for (std::size_t a = 0 ; a < source_mapped.size() ; ++a)
                for (std::size_t b = 0 ; b < a ; ++b) {
                    source_labels.insert(source.rank(source_mapped[a], source_mapped[b]));
                    target_labels.insert(target.rank(target_mapped[a], target_mapped[b]));
                }
            std::vector<RankLabel> ls(source_labels.begin(), source_labels.end()), lt(target_labels.begin(), target_labels.end());
            if (ls.size() != lt.size())
                throw EchelonError(ErrorCode::not_an_embedding, "mapped points no longer form a partial isomorphism");

            // new labels (not among ls) get slots by their order within each gap
            std::set<RankLabel> fresh;
            for (auto p : source_mapped) {
                auto label = source.rank(x, p);
                if (! source_labels.contains(label))
                    fresh.insert(label);
            }

            Demand d;
            for (std::size_t k = 0 ; k < source_mapped.size() ; ++k) {
                auto label = source.rank(x, source_mapped[k]);
                auto position = std::lower_bound(ls.begin(), ls.end(), label) - ls.begin();
                if (position < static_cast<std::ptrdiff_t>(ls.size()) && ls[position] == label) {
                    d.base.emplace_back(target_mapped[k], ExactLabel{ lt[position] });
                    continue;
                }
                RankLabel low = position == 0 ? RankLabel(0) : lt[position - 1];
                std::optional<RankLabel> high;
                if (position < static_cast<std::ptrdiff_t>(lt.size()))
                    high = lt[position];
                // slot: how many distinct new labels in the same gap lie below
                RankLabel gap_low = position == 0 ? RankLabel(0) : ls[position - 1];
                unsigned slot = std::count_if(fresh.begin(), fresh.end(), [&] (const RankLabel & f) { return gap_low < f && f < label; });
                d.base.emplace_back(target_mapped[k], OpenInterval{ low, high, slot });
            }
            return d;
        }

        inline auto same_labels(const LimitModel & source, const std::vector<PointId> & source_mapped,
                const LimitModel & target, const std::vector<PointId> & target_mapped, PointId x, PointId z) -> bool
        {
            for (std::size_t k = 0 ; k < source_mapped.size() ; ++k)
                if (source.rank(x, source_mapped[k]) != target.rank(z, target_mapped[k]))
                    return false;
            return true;
        }

        inline void cover(Side & from, Side & to, PointId x)
        {
            if (from.covered.contains(x))
                return;

            auto demand = transfer_demand(from.model, from.mapped, to.model, to.mapped, x);

            std::optional<PointId> witness;
            // the same point, when it carries literally the same labels
            if (x < to.model.size() && ! to.covered.contains(x) && to.model.satisfies(x, demand)
                    && same_labels(from.model, from.mapped, to.model, to.mapped, x, x))
                witness = x;

            if (! witness && to.model.mode() == LimitMode::deterministic) {
                for (PointId z = 0 ; z < to.model.size() && ! witness ; ++z)
                    if (! to.covered.contains(z) && to.model.satisfies(z, demand))
                        witness = z;
                if (! witness)
                    witness = to.model.ensure_witness(demand);
            }
            else if (! witness) {
                // Every covered point is in the demand's base, so the scan
                // cannot return one. New labels become exact demands later
                // on, so prefer the witness whose new labels are commonest.
                auto cost = [&] (PointId z) {
                    std::uint64_t total = 0;
                    for (auto & [p, constraint] : demand.base)
                        if (std::holds_alternative<OpenInterval>(constraint))
                            total += to.model.colour_index(z, p);
                    return total;
                };
                auto candidates = to.model.witnesses(demand, 32);
                witness = *std::min_element(candidates.begin(), candidates.end(),
                        [&] (PointId a, PointId b) { return cost(a) < cost(b); });
            }

            from.mapped.push_back(x);
            to.mapped.push_back(*witness);
            from.covered.insert(x);
            to.covered.insert(*witness);
        }
    }

    /// The finite spaces spanned by the two sides of a correspondence, with
    /// points numbered in correspondence order.
    inline auto spanned_spaces(const LimitModel & first, const LimitModel & second, const PartialIsomorphism & iso)
        -> std::pair<EchelonedSpace, EchelonedSpace>
    {
        auto left = from_weight_function(iso.left.size(), [&] (PointId i, PointId j) { return first.rank(iso.left[i], iso.left[j]); });
        auto right = from_weight_function(iso.right.size(), [&] (PointId i, PointId j) { return second.rank(iso.right[i], iso.right[j]); });
        return { std::move(left), std::move(right) };
    }

    inline auto verify_partial_isomorphism(const LimitModel & first, const LimitModel & second, const PartialIsomorphism & iso) -> bool
    {
        if (iso.left.size() != iso.right.size() || iso.left.empty())
            return false;
        auto [left, right] = spanned_spaces(first, second, iso);
        auto id = identity_map(iso.left.size());
        return is_embedding(left, right, id) && is_embedding(right, left, id);
    }

    /**
     * Finite back-and-forth between two models: covers the first `depth`
     * points of each, extending the correspondence one point at a time with
     * a witness in the other model. Points of deterministic models are
     * covered first, while the correspondence is still small; otherwise the
     * two sides alternate.
     */
    inline auto back_and_forth(LimitModel & first, LimitModel & second, std::size_t depth) -> PartialIsomorphism
    {
        if (depth < 1)
            throw EchelonError(ErrorCode::bad_argument, "back-and-forth depth must be at least 1");

        first.points(depth);
        second.points(depth);

        PartialIsomorphism result;
        detail::Side a{ first, result.left, {} }, b{ second, result.right, {} };

        auto next_uncovered = [&] (const detail::Side & s) -> std::optional<PointId> {
            for (PointId p = 0 ; p < depth ; ++p)
                if (! s.covered.contains(p))
                    return p;
            return std::nullopt;
        };

        bool first_turn = true;
        while (true) {
            auto xa = next_uncovered(a), xb = next_uncovered(b);
            if (! xa && ! xb)
                break;

            bool cover_first;
            if (! xa)
                cover_first = false;
            else if (! xb)
                cover_first = true;
            else if (first.mode() != second.mode())
                cover_first = first.mode() == LimitMode::deterministic;
            else
                cover_first = first_turn;

            if (cover_first)
                detail::cover(a, b, *xa);
            else
                detail::cover(b, a, *xb);
            first_turn = ! first_turn;
        }

        return result;
    }
}

#endif
