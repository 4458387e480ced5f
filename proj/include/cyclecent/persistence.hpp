#pragma once

#include "cyclecent/filtration.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace cyclecent {

/// A k-chain with coefficients in Z/2: the simplices carrying coefficient 1.
struct Chain {
    int dim = 0;
    std::vector<SimplexId> simplices;  // sorted, duplicate free

    bool empty() const noexcept { return simplices.empty(); }
    bool contains(SimplexId id) const;
    friend bool operator==(const Chain&, const Chain&) = default;
};

/// Sum over Z/2 (symmetric difference). Throws ArgumentError on mixed dimensions.
Chain operator+(const Chain& a, const Chain& b);

/// Vertex-level chain, used where no complex is at hand.
using FaceChain = std::vector<std::vector<Vertex>>;

/// Codimension-1 faces of one simplex, lexicographically sorted. A vertex
/// has an empty boundary.
FaceChain boundary(std::span<const Vertex> simplex);
/// Boundary of a vertex-level chain; faces hit an even number of times cancel.
FaceChain boundary(const FaceChain& chain);
/// Boundary of a chain of simplices of `complex`.
Chain boundary(const FilteredComplex& complex, const Chain& chain);

/// Boundary matrix of dimension k over Z/2. Columns are the k-simplices in
/// filtration order, rows the (k-1)-simplices in filtration order, and each
/// column holds the sorted row indices of its nonzero entries.
struct BoundaryMatrix {
    int dim = 0;
    std::vector<SimplexId> column_simplices;
    std::vector<SimplexId> row_simplices;
    std::vector<std::vector<std::uint32_t>> columns;

    std::size_t column_count() const noexcept { return columns.size(); }
};

BoundaryMatrix boundary_matrix(const FilteredComplex& complex, int k);

struct ReduceOptions {
    /// Record, per column, the set of original columns summed into it.
    bool track_log = true;
    /// Stop once this many nonzero reduced columns exist. Every remaining
    /// column is then left unreduced and reported as unprocessed.
    std::optional<std::size_t> stop_after_pivots;
    /// Optional shortcut: columns for which this returns true are known to
    /// lie in the span of earlier columns and are set to zero without being
    /// reduced. Pivots are unaffected. Ignored when the log is tracked.
    std::function<bool(std::size_t column)> provably_zero;
};

/// Output of the standard column reduction.
struct Reduction {
    std::vector<std::vector<std::uint32_t>> columns;
    /// log[j]: original columns whose sum is columns[j] (always contains j).
    /// Empty when the log was not tracked.
    std::vector<std::vector<std::uint32_t>> log;
    /// column_of_low[r]: the reduced column whose lowest one is row r.
    std::vector<std::optional<std::uint32_t>> column_of_low;
    std::size_t processed = 0;

    std::optional<std::uint32_t> low(std::size_t j) const {
        if (columns[j].empty()) return std::nullopt;
        return columns[j].back();
    }
};

/// Standard reduction: left to right, while an earlier column shares the
/// lowest one of column j, add it to column j.
Reduction reduce(const BoundaryMatrix& matrix, ReduceOptions options = {});

/// A persistent homology class: the interval [birth, death) and the cycle the
/// reduction produced for it.
struct PersistencePair {
    std::size_t id = 0;
    int dim = 0;
    double birth = 0.0;
    double death = 0.0;
    SimplexId birth_simplex = 0;
    std::optional<SimplexId> death_simplex;
    Chain representative;
    bool essential = false;

    double persistence() const noexcept { return death - birth; }
};

struct PairOptions {
    bool include_zero_persistence = false;
};

/// Persistence pairs of dimension k, ordered by birth simplex (which is the
/// `precedes` order), ids numbered 0.. in that order. Classes never killed
/// are essential and get death = complex.max_scale().
std::vector<PersistencePair> extract_pairs(const FilteredComplex& complex, int k,
                                           PairOptions options = {});

const Chain& representative(const PersistencePair& pair);

/// Birth order with ties broken by filtration position of the birth simplex.
/// Throws ArgumentError when the dimensions differ.
bool precedes(const PersistencePair& a, const PersistencePair& b);

}  // namespace cyclecent
