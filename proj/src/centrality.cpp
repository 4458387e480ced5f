#include "cyclecent/centrality.hpp"

#include "cyclecent/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace cyclecent {

namespace {

struct Step {
    double time;
    double height;
};

CentralityCurve build(std::size_t id, const PersistencePair& root, std::vector<Step> steps) {
    CentralityCurve c;
    c.class_id = id;
    c.birth = root.birth;
    c.death = root.death;

    std::vector<double> xs{root.birth, root.death};
    for (const auto& s : steps) xs.push_back(s.time);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    for (double x : xs) {
        double v = persistence_at(root.birth, root.death, x);
        for (const auto& s : steps)
            if (s.time <= x) v += s.height;
        const double slope = (x >= root.birth && x < root.death) ? 1.0 : 0.0;
        c.knots.push_back({x, v, slope});
    }
    return c;
}

void check_scaling(ScalingKind s, const PersistencePair& root) {
    if (s != ScalingKind::unit && root.death == 0.0)
        throw DegenerateError("ratio scaling needs a class with positive death");
}

}  // namespace

std::string_view to_string(ScalingKind s) {
    switch (s) {
        case ScalingKind::unit: return "unit";
        case ScalingKind::early: return "early";
        case ScalingKind::late: return "late";
    }
    return "unit";
}

ScalingKind parse_scaling(std::string_view name) {
    if (name == "unit") return ScalingKind::unit;
    if (name == "early") return ScalingKind::early;
    if (name == "late") return ScalingKind::late;
    throw ArgumentError("unknown scaling '" + std::string(name) + "' (expected unit, early or late)");
}

double scaling_factor(ScalingKind s, double member_death, double root_death) {
    if (s == ScalingKind::unit) return 1.0;
    if (root_death == 0.0) throw DegenerateError("ratio scaling needs a class with positive death");
    const double r = member_death / root_death;
    return s == ScalingKind::early ? r : 1.0 - r;
}

double persistence_at(double birth, double death, double epsilon) {
    return std::max(0.0, std::min(epsilon, death) - birth);
}

double persistence_at(const PersistencePair& pair, double epsilon) {
    return persistence_at(pair.birth, pair.death, epsilon);
}

CentralityCurve j1_curve(std::size_t id, const MergeClusters& clusters,
                         std::span<const PersistencePair> pairs) {
    auto c = j2_curve(id, clusters, pairs, ScalingKind::unit);
    c.order = 1;
    return c;
}

CentralityCurve j2_curve(std::size_t id, const MergeClusters& clusters,
                         std::span<const PersistencePair> pairs, ScalingKind scaling) {
    const auto& root = pairs[index_of(pairs, id)];
    check_scaling(scaling, root);
    std::vector<Step> steps;
    for (const auto& m : clusters.members(id)) {
        const auto& p = pairs[index_of(pairs, m.id)];
        steps.push_back({m.time, scaling_factor(scaling, p.death, root.death) * p.persistence()});
    }
    auto c = build(id, root, std::move(steps));
    c.order = 2;
    c.scaling = scaling;
    return c;
}

CentralityCurve j3_curve(std::size_t id, const MergeClusters& clusters,
                         std::span<const PersistencePair> pairs, ScalingKind scaling) {
    const auto& root = pairs[index_of(pairs, id)];
    check_scaling(scaling, root);
    std::vector<Step> steps;
    // Depth-first over the merge forest; `since` is the latest merge time on
    // the path from the root.
    struct Frame {
        std::size_t id;
        double since;
    };
    std::vector<Frame> stack{{id, -std::numeric_limits<double>::infinity()}};
    while (!stack.empty()) {
        const Frame f = stack.back();
        stack.pop_back();
        for (const auto& m : clusters.members(f.id)) {
            const auto& p = pairs[index_of(pairs, m.id)];
            const double since = std::max(f.since, m.time);
            steps.push_back({since, scaling_factor(scaling, p.death, root.death) * p.persistence()});
            stack.push_back({m.id, since});
        }
    }
    auto c = build(id, root, std::move(steps));
    c.order = 3;
    c.scaling = scaling;
    return c;
}

CentralityCurve centrality_curve(int order, std::size_t id, const MergeClusters& clusters,
                                 std::span<const PersistencePair> pairs, ScalingKind scaling) {
    switch (order) {
        case 1: return j1_curve(id, clusters, pairs);
        case 2: return j2_curve(id, clusters, pairs, scaling);
        case 3: return j3_curve(id, clusters, pairs, scaling);
        default: throw ArgumentError("centrality order must be 1, 2 or 3");
    }
}

double evaluate(const CentralityCurve& curve, double epsilon) {
    auto it = std::upper_bound(curve.knots.begin(), curve.knots.end(), epsilon,
                               [](double e, const Knot& k) { return e < k.x; });
    if (it == curve.knots.begin()) return 0.0;
    --it;
    return it->value + it->slope * (epsilon - it->x);
}

double max_value(const CentralityCurve& curve) {
    return curve.knots.empty() ? 0.0 : curve.knots.back().value;
}

std::vector<std::pair<double, double>> polyline(const CentralityCurve& curve, double x_end) {
    std::vector<std::pair<double, double>> pts;
    double prev_x = 0.0;
    double prev_v = 0.0;
    double prev_slope = 0.0;
    pts.emplace_back(0.0, evaluate(curve, 0.0));
    for (const auto& k : curve.knots) {
        if (k.x > x_end) break;
        if (k.x <= 0.0) {
            prev_x = 0.0;
            prev_v = evaluate(curve, 0.0);
            prev_slope = k.slope;
            pts.back().second = prev_v;
            continue;
        }
        const double left = prev_v + prev_slope * (k.x - prev_x);
        pts.emplace_back(k.x, left);
        if (k.value != left) pts.emplace_back(k.x, k.value);
        prev_x = k.x;
        prev_v = k.value;
        prev_slope = k.slope;
    }
    if (x_end > prev_x) pts.emplace_back(x_end, prev_v + prev_slope * (x_end - prev_x));
    return pts;
}

}  // namespace cyclecent
