#pragma once

#include "cyclecent/pointcloud.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace cyclecent {

using Vertex = std::uint32_t;
/// Position of a simplex in the global filtration order.
using SimplexId = std::uint32_t;

struct Simplex {
    std::vector<Vertex> vertices;  // strictly increasing
    double weight = 0.0;           // filtration value, in epsilon units

    int dim() const noexcept { return static_cast<int>(vertices.size()) - 1; }
    friend bool operator==(const Simplex&, const Simplex&) = default;
};

/// Face-closed simplicial complex with simplices sorted by
/// (weight, dimension, lexicographic vertex order). Immutable once built.
class FilteredComplex {
public:
    FilteredComplex() = default;

    /// Builds a complex from an explicit simplex list in any order. Throws
    /// ArgumentError on unsorted/duplicate vertices, negative or non-finite
    /// weights, duplicate simplices, missing faces or a face heavier than its
    /// coface. `max_scale` defaults to the largest weight present.
    static FilteredComplex from_simplices(std::vector<Simplex> simplices,
                                          std::optional<double> max_scale = std::nullopt);

    std::size_t size() const noexcept { return weights_.size(); }
    std::size_t vertex_count() const noexcept { return count_of_dim(0); }
    int max_dim() const noexcept { return max_dim_; }
    double max_scale() const noexcept { return max_scale_; }

    double weight(SimplexId id) const { return weights_[id]; }
    int dim(SimplexId id) const { return dims_[id]; }
    std::span<const Vertex> vertices(SimplexId id) const {
        return {pool_.data() + offsets_[id], static_cast<std::size_t>(dims_[id]) + 1};
    }
    Simplex simplex(SimplexId id) const;

    /// Ids of all simplices of dimension d, in filtration order.
    std::span<const SimplexId> of_dim(int d) const;
    std::size_t count_of_dim(int d) const { return of_dim(d).size(); }
    /// Position of the simplex among simplices of its own dimension.
    std::size_t rank_in_dim(SimplexId id) const { return rank_[id]; }

    std::optional<SimplexId> find(std::span<const Vertex> vertices) const;

    /// Writes the ids of the codimension-1 faces of `id` into `out`.
    void faces(SimplexId id, std::vector<SimplexId>& out) const;

    /// True when every clique of the 1-skeleton up to max_dim (and weight
    /// max_scale) is present with weight equal to its heaviest edge, as in a
    /// Rips filtration.
    bool is_flag() const noexcept { return flag_; }
    /// Id of edge {u, v}, if present.
    std::optional<SimplexId> edge(Vertex u, Vertex v) const;

private:
    friend FilteredComplex rips_filtration(const DistanceMatrix&, int, std::optional<double>);

    struct Staged {
        double weight;
        std::uint32_t offset;
        std::uint8_t dim;
    };
    void finalize(std::vector<Staged> staged, std::vector<Vertex> pool, bool lex_within_dim);

    std::vector<double> weights_;
    std::vector<std::uint8_t> dims_;
    std::vector<std::uint32_t> offsets_;
    std::vector<Vertex> pool_;
    std::vector<std::uint32_t> rank_;
    std::vector<std::vector<SimplexId>> by_dim_;   // filtration order
    std::vector<std::vector<SimplexId>> lex_dim_;  // lexicographic order
    std::vector<SimplexId> edge_table_;            // n*n, dense edge lookup
    std::size_t n_vertices_ = 0;
    bool flag_ = false;
    int max_dim_ = 0;
    double max_scale_ = 0.0;
};

/// Vietoris-Rips filtration. A simplex enters at half its longest edge, so
/// it is present at epsilon exactly when all its pairwise distances are
/// <= 2 * epsilon. Simplices heavier than max_scale or of dimension above
/// max_dim are omitted. max_scale defaults to the smallest epsilon at which
/// some vertex is joined to every other vertex; from there on the complex is
/// a cone and every new simplex is filled at the weight it appears.
FilteredComplex rips_filtration(const DistanceMatrix& dist, int max_dim = 2,
                                std::optional<double> max_scale = std::nullopt);

/// Global filtration position of `simplex`; throws LookupError if absent.
SimplexId filtration_index(const FilteredComplex& complex, const Simplex& simplex);
SimplexId filtration_index(const FilteredComplex& complex, std::span<const Vertex> vertices);

}  // namespace cyclecent
