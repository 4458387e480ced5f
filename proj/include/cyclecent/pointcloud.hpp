#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace cyclecent {

/// A finite set of points in R^dimension, stored row-major.
class PointCloud {
public:
    PointCloud() = default;

    /// Throws ArgumentError unless dimension >= 1, coords.size() is a multiple
    /// of dimension and every coordinate is finite.
    PointCloud(std::size_t dimension, std::vector<double> coords);

    std::size_t size() const noexcept { return dimension_ == 0 ? 0 : coords_.size() / dimension_; }
    std::size_t dimension() const noexcept { return dimension_; }
    bool empty() const noexcept { return size() == 0; }

    std::span<const double> point(std::size_t i) const {
        return {coords_.data() + i * dimension_, dimension_};
    }
    std::span<const double> coords() const noexcept { return coords_; }

    void push_back(std::span<const double> p);

    friend bool operator==(const PointCloud&, const PointCloud&) = default;

private:
    std::size_t dimension_ = 0;
    std::vector<double> coords_;
};

/// Symmetric matrix of pairwise distances with zero diagonal.
class DistanceMatrix {
public:
    DistanceMatrix() = default;

    /// Validates symmetry, zero diagonal and nonnegativity; throws
    /// ArgumentError otherwise.
    DistanceMatrix(std::size_t n, std::vector<double> entries);

    std::size_t size() const noexcept { return n_; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return entries_[i * n_ + j]; }
    std::span<const double> row(std::size_t i) const { return {entries_.data() + i * n_, n_}; }

    /// Largest entry; 0 for n <= 1.
    double max_entry() const noexcept;
    /// min_i max_j d(i, j): past half of this every Rips complex is a cone.
    double enclosing_radius() const noexcept;

private:
    std::size_t n_ = 0;
    std::vector<double> entries_;
};

/// Reads one point per line, comma separated, no header. Blank lines and
/// lines starting with '#' are skipped. A missing file is an ArgumentError. Throws FormatError on ragged or non-numeric rows and
/// EmptyInputError when no point is present.
PointCloud load_points(const std::filesystem::path& path);
PointCloud parse_points(std::string_view text);

/// Writes the cloud in the same CSV layout load_points reads.
void save_points(const PointCloud& cloud, const std::filesystem::path& path);

DistanceMatrix pairwise_distances(const PointCloud& cloud);

/// Shifts every coordinate by an independent uniform draw from [-kappa, kappa].
PointCloud perturb(const PointCloud& cloud, double kappa, std::uint64_t seed);

/// Chaos game on the triangle (0,0), (1,0), (1/2, sqrt(3)/2).
PointCloud sample_sierpinski(std::size_t n, std::uint64_t seed);

/// Classical four-map Barnsley fern.
PointCloud sample_fern(std::size_t n, std::uint64_t seed);

/// floor(fraction * n) points drawn uniformly with replacement.
PointCloud bootstrap_sample(const PointCloud& cloud, double fraction, std::uint64_t seed,
                            std::uint64_t replicate = 0);

/// Two annuli of the given radii touching at the origin (a wedge of two
/// circles thickened by `width`), points drawn uniformly in each annulus.
PointCloud sample_two_annuli(std::size_t n, std::uint64_t seed, double radius = 1.0,
                             double width = 0.2);

}  // namespace cyclecent
