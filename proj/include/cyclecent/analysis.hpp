#pragma once

#include "cyclecent/centrality.hpp"
#include "cyclecent/filtration.hpp"
#include "cyclecent/merge.hpp"
#include "cyclecent/metric.hpp"
#include "cyclecent/persistence.hpp"
#include "cyclecent/pointcloud.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cyclecent {

struct AnalysisConfig {
    int k = 1;
    int max_dim = 2;
    std::optional<double> max_scale;
    int order = 3;
    ScalingKind scaling = ScalingKind::unit;
    bool geodesic = true;
};

/// Everything computed from one point cloud. Pairs are in cluster order and
/// their ids are positions in `pairs`.
struct Analysis {
    DistanceMatrix distances;
    FilteredComplex complex;
    std::vector<PersistencePair> pairs;
    MergeClusters clusters;
    std::vector<CentralityCurve> curves;
    std::vector<double> d_star;
};

Analysis analyze(const PointCloud& cloud, const AnalysisConfig& config);

/// Name used on the command line for an (order, scaling) choice: J1, J2,
/// J3, or J4/J5/J6 for order 3 with unit/late/early scaling.
std::string centrality_name(int order, ScalingKind scaling);

struct StabilityConfig {
    AnalysisConfig analysis;
    std::vector<double> kappas{0.005, 0.01, 0.02, 0.05};
    std::size_t reps = 30;
    double p = 1.0;
    std::uint64_t seed = 0;
};

struct StabilityRow {
    double kappa = 0.0;
    std::size_t rep = 0;
    BoundReport report;
};

/// For every kappa and replicate: perturb the cloud, recompute the
/// centrality collection and compare it with the original.
std::vector<StabilityRow> stability_experiment(const PointCloud& cloud, const StabilityConfig& config);

/// Seed handed to perturb() for one (kappa index, replicate) cell.
std::uint64_t perturbation_seed(std::uint64_t seed, std::size_t kappa_index, std::size_t rep);

struct ThresholdTable {
    std::vector<double> grid;
    std::vector<std::size_t> persistence;
    std::vector<std::size_t> centrality;
};

/// Threshold counts for the class persistences and for the maximum values
/// of the given curves, over the same grid.
ThresholdTable threshold_table(const Analysis& a, std::vector<double> grid);

}  // namespace cyclecent
