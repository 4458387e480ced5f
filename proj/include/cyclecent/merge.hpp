#pragma once

#include "cyclecent/filtration.hpp"
#include "cyclecent/persistence.hpp"

#include <cstddef>
#include <map>
#include <span>
#include <utility>
#include <vector>

namespace cyclecent {

struct MergeMember {
    std::size_t id = 0;
    double time = 0.0;  // the member's death

    friend bool operator==(const MergeMember&, const MergeMember&) = default;
};

/// First-order merge clusters of one homology dimension.
struct MergeClusters {
    int dim = 0;
    /// Pair ids in the order the clusters were built (birth, then death).
    std::vector<std::size_t> ordering;
    /// Survivor id -> classes merging into it. Every id in `ordering` has an
    /// entry, possibly empty.
    std::map<std::size_t, std::vector<MergeMember>> first_order;
    /// (survivor, candidate) pairs that were k-near and inside the birth
    /// guard but had equal deaths; never merged.
    std::vector<std::pair<std::size_t, std::size_t>> equal_death_ties;
    /// (survivor, candidate) pairs with candidate death exactly equal to the
    /// survivor's birth; rejected by the strict guard.
    std::vector<std::pair<std::size_t, std::size_t>> birth_death_ties;

    /// Throws LookupError for an unknown id.
    const std::vector<MergeMember>& members(std::size_t id) const;
    bool contains(std::size_t id) const { return first_order.contains(id); }
};

/// True when the two chains share a simplex. Throws ArgumentError when the
/// dimensions differ.
bool k_near(const Chain& a, const Chain& b);

/// Whether rep(a) + rep(b) is the boundary of some (k+1)-chain built from
/// simplices of weight <= epsilon. Solved by Gaussian elimination over Z/2.
/// Throws ArgumentError when a and b are the same class or of different
/// dimension.
bool merges_with_oracle(const PersistencePair& a, const PersistencePair& b,
                        const FilteredComplex& complex, double epsilon);

/// Sorts by (birth, death, birth simplex), the order first_order_clusters
/// expects, and renumbers ids 0.. in that order.
void sort_for_clusters(std::vector<PersistencePair>& pairs);

/// Greedy cluster construction. For each class i in order and each earlier
/// class j not already absorbed, j joins M[i] when their representatives
/// are k-near and d(i) > d(j) > b(i). Throws ArgumentError when the input is
/// not sorted by (birth, death), contains zero-persistence pairs, mixes
/// dimensions or repeats an id.
MergeClusters first_order_clusters(std::span<const PersistencePair> pairs);

/// M_n[sigma, epsilon]: members reachable through exactly n merge steps,
/// every step having merged by epsilon. Sorted ids. Throws ArgumentError for
/// n < 1 and LookupError for an unknown id.
std::vector<std::size_t> nth_order_cluster(const MergeClusters& clusters, std::size_t id, int n,
                                           double epsilon);

/// The earliest class (under `precedes`) among sigma and everything merged
/// into it at any order by d(sigma).
std::size_t earliest_ancestor(const MergeClusters& clusters, std::span<const PersistencePair> pairs,
                              std::size_t id);

/// Position of the pair with this id; throws LookupError if absent.
std::size_t index_of(std::span<const PersistencePair> pairs, std::size_t id);

}  // namespace cyclecent
