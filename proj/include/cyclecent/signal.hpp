#pragma once

#include "cyclecent/persistence.hpp"
#include "cyclecent/pointcloud.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace cyclecent {

inline constexpr double euler_gamma = 0.57721566490153286;

/// death / birth. Throws DegenerateError when birth is not positive.
double mult_pers(const PersistencePair& pair);
double mult_pers(double birth, double death);

struct LValues {
    std::vector<std::size_t> kept;  // indices into the input that entered
    std::vector<double> loglog;     // log log pi, aligned with kept
    std::vector<double> l;          // aligned with kept
    std::size_t dropped_nonpositive_birth = 0;
    std::size_t dropped_small_ratio = 0;  // pi <= 1
    double mean_loglog = 0.0;
};

/// l(p) = A log log pi(p) - gamma - L, where L is the mean of log log pi
/// over the kept points. Points with birth <= 0 or pi <= 1 are dropped and
/// counted.
LValues l_values(std::span<const PersistencePair> dgm, double A = 1.0);
/// Same, starting from multiplicative persistences.
LValues l_values_from_ratios(std::span<const double> pi, double A = 1.0);

struct SignalPoint {
    std::size_t index = 0;  // position in the input diagram
    double pi = 0.0;
    double loglog = 0.0;
    double l = 0.0;
    double p_value = 0.0;
    bool signal = false;
};

struct SignalReport {
    double alpha = 0.05;
    double A = 1.0;
    std::size_t tested = 0;  // |dgm| after drops
    double threshold = 0.0;  // alpha / tested
    std::size_t dropped_nonpositive_birth = 0;
    std::size_t dropped_small_ratio = 0;
    std::vector<SignalPoint> points;
    std::vector<std::size_t> signal_indices;
};

/// Flags points with exp(-exp(l)) < alpha / |dgm|. Throws ArgumentError for
/// alpha outside (0, 1).
SignalReport extract_signal(std::span<const PersistencePair> dgm, double alpha, double A = 1.0);
SignalReport extract_signal_from_ratios(std::span<const double> pi, double alpha, double A = 1.0);

struct BootstrapStats {
    std::vector<std::size_t> counts;
    double mean = 0.0;
    double se = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    bool se_undefined = false;  // a single replicate
    std::size_t sample_size = 0;
};

struct BootstrapConfig {
    std::size_t reps = 100;
    double fraction = 0.8;
    double alpha = 0.05;
    double A = 1.0;
    int k = 1;
    int max_dim = 2;
    std::optional<double> max_scale;
    std::uint64_t seed = 0;
};

/// Per replicate: resample, build the Rips filtration, count signal points
/// of dimension k. Throws ArgumentError for reps < 1.
BootstrapStats bootstrap_hole_stats(const PointCloud& cloud, const BootstrapConfig& config);
/// Mean, standard error and normal 95% interval of the given counts.
BootstrapStats summarize_counts(std::vector<std::size_t> counts);

/// Pearson correlation of average ranks. Throws ArgumentError on length
/// mismatch or fewer than two values and UndefinedError when either input is
/// constant.
double spearman(std::span<const double> x, std::span<const double> y);

/// 0.25, 0.30, ..., 1.00.
std::vector<double> default_threshold_grid();
/// Count of values >= i * max(values) for each i. Throws ArgumentError on
/// empty values.
std::vector<std::size_t> threshold_counts(std::span<const double> values, std::span<const double> grid);

}  // namespace cyclecent
