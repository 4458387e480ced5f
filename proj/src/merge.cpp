#include "cyclecent/merge.hpp"

#include "cyclecent/error.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <unordered_map>

namespace cyclecent {

namespace {

// Dense vector over Z/2 with a fixed length.
class BitVector {
public:
    explicit BitVector(std::size_t n) : words_((n + 63) / 64, 0) {}

    void flip(std::size_t i) { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }
    void add(const BitVector& other) {
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    }
    // Highest set index, or -1 for the zero vector.
    long highest() const {
        for (std::size_t w = words_.size(); w-- > 0;)
            if (words_[w]) return static_cast<long>(w * 64 + 63 - std::countl_zero(words_[w]));
        return -1;
    }

private:
    std::vector<std::uint64_t> words_;
};

}  // namespace

const std::vector<MergeMember>& MergeClusters::members(std::size_t id) const {
    auto it = first_order.find(id);
    if (it == first_order.end()) throw LookupError("unknown class id " + std::to_string(id));
    return it->second;
}

bool k_near(const Chain& a, const Chain& b) {
    if (a.dim != b.dim) throw ArgumentError("k_near: chains of different dimension");
    auto i = a.simplices.begin();
    auto j = b.simplices.begin();
    while (i != a.simplices.end() && j != b.simplices.end()) {
        if (*i == *j) return true;
        if (*i < *j)
            ++i;
        else
            ++j;
    }
    return false;
}

bool merges_with_oracle(const PersistencePair& a, const PersistencePair& b,
                        const FilteredComplex& complex, double epsilon) {
    if (a.dim != b.dim) throw ArgumentError("merge oracle: classes of different dimension");
    if (a.id == b.id && a.birth_simplex == b.birth_simplex)
        throw ArgumentError("merge oracle: the two classes must be distinct");
    const int k = a.dim;
    const std::size_t rows = complex.count_of_dim(k);

    BitVector target(rows);
    for (SimplexId s : (a.representative + b.representative).simplices) target.flip(complex.rank_in_dim(s));

    // Row-echelon basis of the boundaries available at epsilon, keyed by
    // highest row.
    std::unordered_map<long, BitVector> basis;
    auto eliminate = [&](BitVector& v) {
        for (long h = v.highest(); h >= 0; h = v.highest()) {
            auto it = basis.find(h);
            if (it == basis.end()) return h;
            v.add(it->second);
        }
        return -1L;
    };
    std::vector<SimplexId> faces;
    for (SimplexId c : complex.of_dim(k + 1)) {
        if (complex.weight(c) > epsilon) continue;
        BitVector col(rows);
        complex.faces(c, faces);
        for (SimplexId f : faces) col.flip(complex.rank_in_dim(f));
        const long h = eliminate(col);
        if (h >= 0) basis.emplace(h, std::move(col));
    }
    return eliminate(target) < 0;
}

void sort_for_clusters(std::vector<PersistencePair>& pairs) {
    std::sort(pairs.begin(), pairs.end(), [](const PersistencePair& x, const PersistencePair& y) {
        if (x.birth != y.birth) return x.birth < y.birth;
        if (x.death != y.death) return x.death < y.death;
        return x.birth_simplex < y.birth_simplex;
    });
    for (std::size_t i = 0; i < pairs.size(); ++i) pairs[i].id = i;
}

MergeClusters first_order_clusters(std::span<const PersistencePair> pairs) {
    MergeClusters out;
    if (!pairs.empty()) out.dim = pairs.front().dim;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto& p = pairs[i];
        if (p.dim != out.dim) throw ArgumentError("merge clusters: mixed dimensions");
        if (!(p.death > p.birth)) throw ArgumentError("merge clusters: zero-persistence pair in input");
        if (i > 0) {
            const auto& q = pairs[i - 1];
            if (p.birth < q.birth || (p.birth == q.birth && p.death < q.death))
                throw ArgumentError("merge clusters: pairs not sorted by birth then death");
        }
        if (!out.first_order.emplace(p.id, std::vector<MergeMember>{}).second)
            throw ArgumentError("merge clusters: duplicate pair id " + std::to_string(p.id));
        out.ordering.push_back(p.id);
    }

    std::vector<bool> absorbed(pairs.size(), false);
    for (std::size_t i = 1; i < pairs.size(); ++i) {
        const auto& si = pairs[i];
        auto& cluster = out.first_order[si.id];
        for (std::size_t j = 0; j < i; ++j) {
            if (absorbed[j]) continue;
            const auto& sj = pairs[j];
            if (!k_near(si.representative, sj.representative)) continue;
            if (sj.death == si.birth) {
                out.birth_death_ties.emplace_back(si.id, sj.id);
                continue;
            }
            if (!(si.death >= sj.death && sj.death > si.birth)) continue;
            if (sj.death == si.death) {
                out.equal_death_ties.emplace_back(si.id, sj.id);
                continue;
            }
            cluster.push_back({sj.id, sj.death});
            absorbed[j] = true;
        }
    }
    return out;
}

std::vector<std::size_t> nth_order_cluster(const MergeClusters& clusters, std::size_t id, int n,
                                           double epsilon) {
    if (n < 1) throw ArgumentError("cluster order must be >= 1");
    std::vector<std::size_t> level{id};
    clusters.members(id);
    for (int r = 0; r < n && !level.empty(); ++r) {
        std::vector<std::size_t> next;
        for (std::size_t t : level)
            for (const auto& m : clusters.members(t))
                if (m.time <= epsilon) next.push_back(m.id);
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        level = std::move(next);
    }
    return level;
}

std::size_t index_of(std::span<const PersistencePair> pairs, std::size_t id) {
    if (id < pairs.size() && pairs[id].id == id) return id;
    for (std::size_t i = 0; i < pairs.size(); ++i)
        if (pairs[i].id == id) return i;
    throw LookupError("unknown class id " + std::to_string(id));
}

std::size_t earliest_ancestor(const MergeClusters& clusters, std::span<const PersistencePair> pairs,
                              std::size_t id) {
    const double horizon = pairs[index_of(pairs, id)].death;
    std::size_t best = id;
    for (int n = 1;; ++n) {
        const auto level = nth_order_cluster(clusters, id, n, horizon);
        if (level.empty()) break;
        for (std::size_t c : level)
            if (precedes(pairs[index_of(pairs, c)], pairs[index_of(pairs, best)])) best = c;
    }
    return best;
}

}  // namespace cyclecent
