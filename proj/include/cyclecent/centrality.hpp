#pragma once

#include "cyclecent/merge.hpp"
#include "cyclecent/persistence.hpp"

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace cyclecent {

enum class ScalingKind { unit, early, late };

std::string_view to_string(ScalingKind s);
/// "unit", "early" or "late"; throws ArgumentError otherwise.
ScalingKind parse_scaling(std::string_view name);

/// f_sigma(member): 1, d(member)/d(root) or 1 - d(member)/d(root). Throws
/// DegenerateError for a ratio scaling when d(root) = 0.
double scaling_factor(ScalingKind s, double member_death, double root_death);

/// max(0, min(epsilon, death) - birth).
double persistence_at(double birth, double death, double epsilon);
double persistence_at(const PersistencePair& pair, double epsilon);

/// The value right after x and the slope until the next knot.
struct Knot {
    double x = 0.0;
    double value = 0.0;
    double slope = 0.0;

    friend bool operator==(const Knot&, const Knot&) = default;
};

/// Piecewise-linear, right-continuous, nondecreasing curve; zero before the
/// first knot and constant after the last.
struct CentralityCurve {
    std::size_t class_id = 0;
    double birth = 0.0;
    double death = 0.0;
    int order = 1;  // 1, 2 or 3 for J1, J2, J3
    ScalingKind scaling = ScalingKind::unit;
    std::vector<Knot> knots;
};

/// J1: own persistence plus the full persistence of each first-order member
/// from the moment it merges.
CentralityCurve j1_curve(std::size_t id, const MergeClusters& clusters,
                         std::span<const PersistencePair> pairs);
/// J2: as J1 with each member term scaled.
CentralityCurve j2_curve(std::size_t id, const MergeClusters& clusters,
                         std::span<const PersistencePair> pairs, ScalingKind scaling);
/// J3: sums over members of every order. A member counts from the time the
/// whole chain of merges linking it to the root has happened.
CentralityCurve j3_curve(std::size_t id, const MergeClusters& clusters,
                         std::span<const PersistencePair> pairs, ScalingKind scaling);
/// Dispatch on order (1, 2 or 3); J1 ignores the scaling.
CentralityCurve centrality_curve(int order, std::size_t id, const MergeClusters& clusters,
                                 std::span<const PersistencePair> pairs, ScalingKind scaling);

double evaluate(const CentralityCurve& curve, double epsilon);
double max_value(const CentralityCurve& curve);

/// Points for drawing the curve on [0, x_end]: jumps appear as two points
/// with the same x.
std::vector<std::pair<double, double>> polyline(const CentralityCurve& curve, double x_end);

}  // namespace cyclecent
