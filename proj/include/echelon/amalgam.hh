/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef ECHELON_GUARD_AMALGAM_HH
#define ECHELON_GUARD_AMALGAM_HH 1

#include <echelon/errors.hh>
#include <echelon/space.hh>

#include <span>
#include <string>
#include <vector>

namespace echelon
{
    /// Amalgam of three finite chains 0 < 1 < ... given by their sizes. The
    /// legs j1, j2 are indexed by element of the respective B chain.
    struct ChainAmalgam
    {
        Rank size = 0;
        RankMap j1;
        RankMap j2;
        Rank top = 0;
    };

    namespace detail
    {
        inline void check_chain_embedding(std::size_t from, std::size_t to, std::span<const Rank> h, const char * name)
        {
            if (h.size() != from)
                throw EchelonError(ErrorCode::not_an_embedding, std::string(name) + " is not defined on every element");
            if (from > 0 && h[0] != 0)
                throw EchelonError(ErrorCode::not_an_embedding, std::string(name) + " does not fix the minimum");
            for (std::size_t i = 0 ; i < from ; ++i) {
                if (h[i] >= to)
                    throw EchelonError(ErrorCode::not_an_embedding, std::string(name) + " leaves its codomain");
                if (i > 0 && h[i] <= h[i - 1])
                    throw EchelonError(ErrorCode::not_an_embedding, std::string(name) + " is not strictly increasing");
            }
        }
    }

    /**
     * Amalgamates chain embeddings h1: A -> B1 and h2: A -> B2 (all chains
     * with their minimum first). Within each gap between consecutive images
     * of A the new elements of B1 come first, then those of B2, each in
     * their own order. A fresh top element is always appended.
     */
    inline auto chain_amalgam(std::size_t size_a, std::size_t size_b1, std::size_t size_b2,
            std::span<const Rank> h1, std::span<const Rank> h2) -> ChainAmalgam
    {
        if (size_a < 1 || size_b1 < 1 || size_b2 < 1)
            throw EchelonError(ErrorCode::bad_argument, "chains must contain their minimum");
        detail::check_chain_embedding(size_a, size_b1, h1, "h1");
        detail::check_chain_embedding(size_a, size_b2, h2, "h2");

        ChainAmalgam result;
        result.j1.assign(size_b1, 0);
        result.j2.assign(size_b2, 0);

        Rank next = 0;
        for (std::size_t a = 0 ; a < size_a ; ++a) {
            result.j1[h1[a]] = next;
            result.j2[h2[a]] = next;
            ++next;

            Rank end1 = a + 1 < size_a ? h1[a + 1] : size_b1;
            for (Rank b = h1[a] + 1 ; b < end1 ; ++b)
                result.j1[b] = next++;
            Rank end2 = a + 1 < size_a ? h2[a + 1] : size_b2;
            for (Rank b = h2[a] + 1 ; b < end2 ; ++b)
                result.j2[b] = next++;
        }

        result.top = next++;
        result.size = next;
        return result;
    }

    struct AmalgamResult
    {
        EchelonedSpace space;
        PointMap g1;
        PointMap g2;
        ChainAmalgam chain;
        /// Compressed rank of each element of the chain amalgam; elements
        /// that no pair of the amalgam uses map to the rank just above them.
        RankMap chain_to_rank;
        RankMap g1_ranks;
        RankMap g2_ranks;
    };

    /**
     * Strong amalgamation of embeddings f1: A -> B1, f2: A -> B2. The carrier
     * is B1 followed by the points of B2 outside f2[A]; pairs inside B1 or
     * inside the copy of B2 keep their amalgamated chain rank and every
     * cross pair gets the fresh top of the chain.
     */
    inline auto amalgamate(const EchelonedSpace & a, const EchelonedSpace & b1, const EchelonedSpace & b2,
            std::span<const PointId> f1, std::span<const PointId> f2) -> AmalgamResult
    {
        auto hat1 = embedding_witness(a, b1, f1);
        if (! hat1)
            throw EchelonError(ErrorCode::not_an_embedding, "f1 is not an embedding of A into B1");
        auto hat2 = embedding_witness(a, b2, f2);
        if (! hat2)
            throw EchelonError(ErrorCode::not_an_embedding, "f2 is not an embedding of A into B2");

        auto chain = chain_amalgam(a.rank_count() + 1, b1.rank_count() + 1, b2.rank_count() + 1, *hat1, *hat2);

        // carrier: B1, then B2 minus f2[A]
        PointMap g1 = identity_map(b1.size());
        PointMap g2(b2.size(), 0);
        std::vector<bool> in_image(b2.size(), false);
        for (PointId x = 0 ; x < a.size() ; ++x) {
            g2[f2[x]] = f1[x];
            in_image[f2[x]] = true;
        }
        std::size_t carrier = b1.size();
        for (PointId y = 0 ; y < b2.size() ; ++y)
            if (! in_image[y])
                g2[y] = carrier++;

        // preimages in B2 for the points of C
        std::vector<std::int64_t> from_b2(carrier, -1);
        for (PointId y = 0 ; y < b2.size() ; ++y)
            from_b2[g2[y]] = y;

        std::vector<Rank> chain_rank(pair_count(carrier));
        for (PointId i = 1 ; i < carrier ; ++i)
            for (PointId j = 0 ; j < i ; ++j) {
                Rank r;
                if (i < b1.size() && j < b1.size())
                    r = chain.j1[b1.rank(i, j)];
                else if (from_b2[i] != -1 && from_b2[j] != -1)
                    r = chain.j2[b2.rank(from_b2[i], from_b2[j])];
                else
                    r = chain.top;
                chain_rank[pair_index(i, j)] = r;
            }

        auto space = from_weights(carrier, std::span<const Rank>(chain_rank));

        // chain element -> compressed rank
        RankMap chain_to_rank(chain.size, 0);
        {
            std::vector<bool> used(chain.size, false);
            used[0] = true;
            for (auto r : chain_rank)
                used[r] = true;
            Rank dense = 0;
            for (Rank e = 0 ; e < chain.size ; ++e) {
                if (e > 0 && used[e])
                    ++dense;
                chain_to_rank[e] = used[e] ? dense : dense + 1;
            }
        }

        RankMap g1_ranks(b1.rank_count() + 1), g2_ranks(b2.rank_count() + 1);
        for (Rank r = 0 ; r <= b1.rank_count() ; ++r)
            g1_ranks[r] = chain_to_rank[chain.j1[r]];
        for (Rank r = 0 ; r <= b2.rank_count() ; ++r)
            g2_ranks[r] = chain_to_rank[chain.j2[r]];

        return AmalgamResult{ std::move(space), std::move(g1), std::move(g2), std::move(chain), std::move(chain_to_rank),
            std::move(g1_ranks), std::move(g2_ranks) };
    }

    /// Joint embedding: amalgamation over the one-point space sent to point 0
    /// of each side.
    inline auto jep(const EchelonedSpace & b1, const EchelonedSpace & b2) -> AmalgamResult
    {
        const PointMap origin{ 0 };
        return amalgamate(EchelonedSpace::single_point(), b1, b2, origin, origin);
    }
}

#endif
