/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef ECHELON_GUARD_ENUMERATE_HH
#define ECHELON_GUARD_ENUMERATE_HH 1

#include <echelon/canonical.hh>
#include <echelon/space.hh>

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

namespace echelon
{
    struct EnumerateOptions
    {
        bool up_to_isomorphism = false;
        /// Largest point count accepted; m = 5 already has ~10^8 echelons.
        std::size_t cap = 4;
    };

    /**
     * Stream of every echelon on m labelled points. An echelon is an ordered
     * set partition of the pairs, so each one is produced as a restricted
     * growth string over the pairs (the blocks) together with a permutation
     * of the blocks (their order). Strings come in lexicographic order, and
     * for each string the block orders do too.
     */
    class SpaceEnumerator
    {
        private:
            std::size_t _points;
            std::size_t _pairs;
            EnumerateOptions _options;
            std::vector<unsigned> _rgs;
            std::vector<unsigned> _prefix_max;
            std::vector<unsigned> _block_order;
            bool _started = false;
            bool _done = false;
            std::set<std::vector<Rank>> _seen;

            auto blocks() const -> unsigned
            {
                return _pairs == 0 ? 0 : _prefix_max.back() + 1;
            }

            void reset_block_order()
            {
                _block_order.resize(blocks());
                std::iota(_block_order.begin(), _block_order.end(), 0);
            }

            auto next_rgs() -> bool
            {
                for (std::size_t i = _pairs ; i-- > 1 ; ) {
                    if (_rgs[i] <= _prefix_max[i - 1]) {
                        ++_rgs[i];
                        _prefix_max[i] = std::max(_prefix_max[i - 1], _rgs[i]);
                        for (std::size_t j = i + 1 ; j < _pairs ; ++j) {
                            _rgs[j] = 0;
                            _prefix_max[j] = _prefix_max[j - 1];
                        }
                        return true;
                    }
                }
                return false;
            }

            auto advance() -> bool
            {
                if (! _started) {
                    _started = true;
                    return true;
                }
                if (std::next_permutation(_block_order.begin(), _block_order.end()))
                    return true;
                if (! next_rgs())
                    return false;
                reset_block_order();
                return true;
            }

            auto current() const -> EchelonedSpace
            {
                std::vector<Rank> ranks(_pairs);
                for (std::size_t k = 0 ; k < _pairs ; ++k)
                    ranks[k] = _block_order[_rgs[k]] + 1;
                return EchelonedSpace::from_ranks(_points, blocks(), std::move(ranks));
            }

        public:
            explicit SpaceEnumerator(std::size_t points, EnumerateOptions options = {}) :
                _points(points),
                _pairs(points >= 1 ? pair_count(points) : 0),
                _options(options),
                _rgs(_pairs, 0),
                _prefix_max(_pairs, 0)
            {
                if (points < 1)
                    throw EchelonError(ErrorCode::bad_point_count, "cannot enumerate spaces on zero points");
                if (points > options.cap)
                    throw EchelonError(ErrorCode::cap_exceeded, "exhaustive enumeration on " + std::to_string(points)
                            + " points exceeds the cap of " + std::to_string(options.cap));
                reset_block_order();
            }

            auto next() -> std::optional<EchelonedSpace>
            {
                while (! _done) {
                    if (! advance()) {
                        _done = true;
                        break;
                    }
                    auto space = current();
                    if (_options.up_to_isomorphism && ! _seen.insert(canonical_form(space).space.lower_triangle()).second)
                        continue;
                    return space;
                }
                return std::nullopt;
            }
    };

    inline auto enumerate_spaces(std::size_t points, EnumerateOptions options = {}) -> std::vector<EchelonedSpace>
    {
        std::vector<EchelonedSpace> result;
        SpaceEnumerator stream(points, options);
        while (auto s = stream.next())
            result.push_back(std::move(*s));
        return result;
    }
}

#endif
