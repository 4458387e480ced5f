#pragma once

#include "cyclecent/centrality.hpp"
#include "cyclecent/filtration.hpp"
#include "cyclecent/merge.hpp"
#include "cyclecent/persistence.hpp"
#include "cyclecent/pointcloud.hpp"

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cyclecent {

inline constexpr double infinity_p = std::numeric_limits<double>::infinity();

/// Integration cutoff of a class: min(d(sigma), G), where G is the largest
/// shortest-path distance between two vertices of the class's largest
/// cycle. Paths use edges lighter than d(sigma), edge length = weight. The
/// cycle is the biggest (by simplex count) of sigma's representative and
/// those of its first-order members. With `geodesic` false this is d(sigma).
double d_star(std::size_t id, const FilteredComplex& complex, const MergeClusters& clusters,
              std::span<const PersistencePair> pairs, bool geodesic = true);
/// d_star for every pair, sharing one graph.
std::vector<double> d_stars(const FilteredComplex& complex, const MergeClusters& clusters,
                            std::span<const PersistencePair> pairs, bool geodesic = true);

/// Integral of J^p over [0, cutoff], exact on each linear piece.
double p_integral(const CentralityCurve& curve, double p, double cutoff);
/// (integral of J^p over [0, cutoff])^(1/p), or J(cutoff) for p = infinity.
/// Throws ArgumentError for p < 1 or a negative cutoff.
double p_norm(const CentralityCurve& curve, double p, double cutoff);

struct CentralityCollection {
    double p = 1.0;
    std::vector<CentralityCurve> curves;
    std::vector<double> d_star;
    std::vector<double> norms;   // ||J||_p on [0, d_star]
    std::vector<double> deltas;  // ||J||_p^p (for finite p)
};

CentralityCollection make_collection(std::vector<CentralityCurve> curves, std::vector<double> d_star,
                                     double p);

/// One edge of an optimal matching; a missing side means the diagonal.
struct MatchEdge {
    std::optional<std::size_t> a;
    std::optional<std::size_t> b;
    double cost = 0.0;
};

struct DistanceResult {
    double p = 1.0;
    double value = 0.0;
    std::vector<MatchEdge> matching;
};

/// Bottleneck optimum over bijections of (A + diagonal) onto (B + diagonal):
/// matched cost |delta_a - delta_b|, a point sent to the diagonal costs half
/// its delta. Exact: binary search over candidate costs with a perfect
/// matching test at each.
DistanceResult centrality_distance(const CentralityCollection& a, const CentralityCollection& b);
DistanceResult centrality_distance(std::span<const double> deltas_a, std::span<const double> deltas_b);

/// Landscape-style distance: both collections sorted by max value, the
/// shorter padded with zero curves, then the sum over ranks of the
/// inner_p norm of the difference (sup norm by default).
double centrality_distance_inf(std::span<const CentralityCurve> a, std::span<const CentralityCurve> b,
                               double inner_p = infinity_p);

struct Constants {
    double K = 0.0;
    std::size_t q = 0;
    std::size_t q_prime = 0;
    /// No class has a nonempty merge cluster, so q' = 0.
    bool no_merges = false;
};

/// K: largest persistence in either list; q: larger list size; q': largest
/// total size of all merge clusters of one class. Throws UndefinedError
/// when both lists are empty.
Constants constants(std::span<const PersistencePair> a, std::span<const PersistencePair> b,
                    const MergeClusters& ca, const MergeClusters& cb);

double bound_R(double p, double K, double q);
double bound_Rprime(double p, double K, double q_prime);

struct Diagram {
    std::vector<double> birth;
    std::vector<double> death;

    std::size_t size() const noexcept { return birth.size(); }
};

Diagram to_diagram(std::span<const PersistencePair> pairs);

/// Bottleneck distance with L-infinity ground metric; a point (b, d) is
/// (d - b)/2 away from the diagonal.
DistanceResult bottleneck_distance(const Diagram& a, const Diagram& b);

/// max |w - w'| over the simplices of two Rips filtrations on the same
/// vertex set, i.e. half the largest change of a pairwise distance. Throws
/// ArgumentError on different sizes.
double weight_discrepancy(const DistanceMatrix& a, const DistanceMatrix& b);

struct BoundLine {
    std::string inequality;
    double lhs = 0.0;
    double rhs = 0.0;
    bool pass = false;
};

struct BoundReport {
    double p = 1.0;
    double distance = 0.0;
    double bottleneck = 0.0;
    double weight_gap = 0.0;
    Constants constants;
    std::vector<BoundLine> lines;

    bool all_pass() const;
};

/// Checks every stability inequality that applies to the pair of
/// collections. `distance` is C_p between them (finite p: the bottleneck
/// form; p = infinity: the landscape form).
BoundReport verify_bounds(double p, double distance, const Diagram& da, const Diagram& db,
                          double weight_gap, const Constants& k);

}  // namespace cyclecent
