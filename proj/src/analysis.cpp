#include "cyclecent/analysis.hpp"

#include "cyclecent/error.hpp"
#include "cyclecent/rng.hpp"
#include "cyclecent/signal.hpp"

#include <cmath>

namespace cyclecent {

Analysis analyze(const PointCloud& cloud, const AnalysisConfig& config) {
    Analysis a;
    a.distances = pairwise_distances(cloud);
    a.complex = rips_filtration(a.distances, config.max_dim, config.max_scale);
    a.pairs = extract_pairs(a.complex, config.k);
    sort_for_clusters(a.pairs);
    a.clusters = first_order_clusters(a.pairs);
    a.clusters.dim = config.k;
    for (const auto& p : a.pairs)
        a.curves.push_back(centrality_curve(config.order, p.id, a.clusters, a.pairs, config.scaling));
    a.d_star = d_stars(a.complex, a.clusters, a.pairs, config.geodesic);
    return a;
}

std::string centrality_name(int order, ScalingKind scaling) {
    if (order == 3) {
        switch (scaling) {
            case ScalingKind::unit: return "J4";
            case ScalingKind::late: return "J5";
            case ScalingKind::early: return "J6";
        }
    }
    return "J" + std::to_string(order);
}

std::uint64_t perturbation_seed(std::uint64_t seed, std::size_t kappa_index, std::size_t rep) {
    auto gen = derived_stream(seed, "stability", (static_cast<std::uint64_t>(kappa_index) << 32) | rep);
    return gen();
}

std::vector<StabilityRow> stability_experiment(const PointCloud& cloud, const StabilityConfig& config) {
    const Analysis base = analyze(cloud, config.analysis);
    const bool inf = std::isinf(config.p);
    std::optional<CentralityCollection> base_coll;
    if (!inf) base_coll = make_collection(base.curves, base.d_star, config.p);

    std::vector<StabilityRow> rows;
    for (std::size_t ki = 0; ki < config.kappas.size(); ++ki) {
        for (std::size_t r = 0; r < config.reps; ++r) {
            const PointCloud moved = perturb(cloud, config.kappas[ki], perturbation_seed(config.seed, ki, r));
            const Analysis other = analyze(moved, config.analysis);
            double distance = 0.0;
            if (inf) {
                distance = centrality_distance_inf(base.curves, other.curves);
            } else {
                distance = centrality_distance(*base_coll, make_collection(other.curves, other.d_star, config.p)).value;
            }
            const Constants k = constants(base.pairs, other.pairs, base.clusters, other.clusters);
            StabilityRow row;
            row.kappa = config.kappas[ki];
            row.rep = r;
            row.report = verify_bounds(config.p, distance, to_diagram(base.pairs), to_diagram(other.pairs),
                                       weight_discrepancy(base.distances, other.distances), k);
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

ThresholdTable threshold_table(const Analysis& a, std::vector<double> grid) {
    ThresholdTable t;
    std::vector<double> pers;
    std::vector<double> cent;
    for (std::size_t i = 0; i < a.pairs.size(); ++i) {
        pers.push_back(a.pairs[i].persistence());
        cent.push_back(max_value(a.curves[i]));
    }
    t.persistence = threshold_counts(pers, grid);
    t.centrality = threshold_counts(cent, grid);
    t.grid = std::move(grid);
    return t;
}

}  // namespace cyclecent
