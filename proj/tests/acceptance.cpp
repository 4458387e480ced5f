// Acceptance checks. Run with a criterion number (1-12) to check one, or with
// no argument to check all. Prints one PASS/FAIL line per criterion and
// exits nonzero when any of them fails.

#include "helpers.hpp"
#include "oracle/brute_homology.hpp"
#include "oracle/quadrature.hpp"

#include "cyclecent/analysis.hpp"
#include "cyclecent/error.hpp"
#include "cyclecent/signal.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <string>

using namespace cyclecent;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

PointCloud cloud_for_seed(std::uint64_t s, std::size_t n) {
    switch (s % 3) {
        case 0: return testing::random_cloud(s, n, 2);
        case 1: return testing::random_cloud(s, n, 3);
        default: return perturb(sample_two_annuli(n, s, 1.0, 0.0), 0.15, s);
    }
}

Outcome oracle_homology() {
    const auto start = Clock::now();
    std::size_t clouds = 0, checks = 0, mismatches = 0;
    for (std::uint64_t s = 0; s < 100; ++s) {
        const std::size_t n = 3 + s % 8;
        const auto cloud = cloud_for_seed(1000 + s, n);
        std::vector<std::vector<double>> pts;
        for (std::size_t i = 0; i < n; ++i) pts.emplace_back(cloud.point(i).begin(), cloud.point(i).end());
        const auto od = oracle::distances(pts);
        const auto dist = pairwise_distances(cloud);
        const auto c = rips_filtration(dist, 2, dist.max_entry() / 2);
        const std::vector<std::vector<PersistencePair>> pairs{extract_pairs(c, 0), extract_pairs(c, 1)};
        std::set<double> weights;
        for (SimplexId id = 0; id < c.size(); ++id) weights.insert(c.weight(id));
        for (double eps : weights) {
            const auto betti = oracle::rips_betti(od, eps, 2);
            for (int k : {0, 1}) {
                int alive = 0;
                for (const auto& p : pairs[k]) alive += (p.birth <= eps && (p.essential || eps < p.death)) ? 1 : 0;
                ++checks;
                mismatches += alive == betti[k] ? 0 : 1;
            }
        }
        ++clouds;
    }
    const double t = seconds_since(start);
    return {mismatches == 0 && t < 60,
            fmt("%zu clouds, %zu Betti checks, %zu mismatches, %.1fs", clouds, checks, mismatches, t)};
}

Outcome unit_square() {
    const auto c = rips_filtration(pairwise_distances(testing::unit_square()), 2);
    const auto pairs = extract_pairs(c, 1);
    if (pairs.size() != 1) return {false, fmt("%zu dim-1 pairs", pairs.size())};
    const auto& p = pairs[0];
    const bool at = std::abs(p.birth - 0.5) <= 1e-9 && std::abs(p.death - std::sqrt(2.0) / 2) <= 1e-9;
    const auto rep = testing::chain_vertices(c, p.representative);
    const std::vector<std::vector<Vertex>> sides{{0, 1}, {0, 3}, {1, 2}, {2, 3}};
    return {at && rep == sides, fmt("pair (%.17g, %.17g), representative of %zu edges%s", p.birth, p.death,
                                    rep.size(), rep == sides ? " (the four sides)" : "")};
}

Outcome merge_equivalence() {
    std::size_t memberships = 0, confirmed = 0, overlaps = 0, clouds_with_members = 0;
    for (std::uint64_t s = 0; s < 100; ++s) {
        const std::size_t n = 8 + s % 5;
        AnalysisConfig cfg;
        const auto a = analyze(cloud_for_seed(2000 + s, n), cfg);
        std::set<std::size_t> seen;
        bool any = false;
        for (const auto& [id, members] : a.clusters.first_order)
            for (const auto& m : members) {
                any = true;
                ++memberships;
                if (!seen.insert(m.id).second) ++overlaps;
                if (merges_with_oracle(a.pairs[id], a.pairs[m.id], a.complex, a.pairs[m.id].death)) ++confirmed;
            }
        clouds_with_members += any ? 1 : 0;
    }
    return {confirmed == memberships && overlaps == 0,
            fmt("%zu memberships in %zu clouds, %zu confirmed by the linear-solve oracle, %zu overlaps", memberships,
                clouds_with_members, confirmed, overlaps)};
}

struct Variant {
    int order;
    ScalingKind scaling;
};

const std::vector<Variant> six_variants{{1, ScalingKind::unit}, {2, ScalingKind::late}, {2, ScalingKind::early},
                                        {3, ScalingKind::unit}, {3, ScalingKind::late}, {3, ScalingKind::early}};

// Analyses of seeded 40-point clouds until at least `classes` classes.
std::vector<Analysis> class_pool(std::size_t classes) {
    std::vector<Analysis> out;
    std::size_t total = 0;
    for (std::uint64_t s = 0; total < classes; ++s) {
        const auto cloud = s % 2 ? sample_two_annuli(40, s, 1.0, 0.4) : testing::random_cloud(3000 + s, 40);
        out.push_back(analyze(cloud, AnalysisConfig{}));
        total += out.back().pairs.size();
    }
    return out;
}

Outcome monotonicity(const std::vector<Analysis>& pool) {
    auto g = derived_stream(4, "monotonicity");
    std::size_t classes = 0, checks = 0, violations = 0;
    for (const auto& a : pool)
        for (const auto& p : a.pairs) {
            if (classes == 1000) break;
            ++classes;
            std::vector<CentralityCurve> curves;
            for (const auto& v : six_variants)
                curves.push_back(centrality_curve(v.order, p.id, a.clusters, a.pairs, v.scaling));
            for (int t = 0; t < 100; ++t) {
                double e1 = 1.2 * p.death * uniform01(g), e2 = 1.2 * p.death * uniform01(g);
                if (e1 > e2) std::swap(e1, e2);
                for (const auto& c : curves) {
                    ++checks;
                    violations += evaluate(c, e1) <= evaluate(c, e2) ? 0 : 1;
                }
            }
        }
    return {classes == 1000 && violations == 0,
            fmt("%zu classes, %zu comparisons, %zu violations", classes, checks, violations)};
}

Outcome dominance(const std::vector<Analysis>& pool) {
    auto g = derived_stream(5, "dominance");
    std::size_t classes = 0, merge_free = 0, violations = 0;
    for (const auto& a : pool)
        for (const auto& p : a.pairs) {
            ++classes;
            const auto j1 = j1_curve(p.id, a.clusters, a.pairs);
            const auto j3 = j3_curve(p.id, a.clusters, a.pairs, ScalingKind::unit);
            std::vector<double> xs;
            for (const auto& k : j3.knots) xs.push_back(k.x);
            for (const auto& k : j1.knots) xs.push_back(k.x);
            for (int t = 0; t < 50; ++t) xs.push_back(1.2 * p.death * uniform01(g));
            for (double x : xs) violations += evaluate(j3, x) >= evaluate(j1, x) ? 0 : 1;
            for (const auto& v : six_variants) {
                const auto c = centrality_curve(v.order, p.id, a.clusters, a.pairs, v.scaling);
                for (int t = 0; t < 20; ++t) violations += evaluate(c, p.birth * uniform01(g)) == 0.0 ? 0 : 1;
            }
            if (a.clusters.members(p.id).empty()) {
                ++merge_free;
                for (double x : xs) violations += evaluate(j1, x) == persistence_at(p, x) ? 0 : 1;
            }
        }
    return {violations == 0,
            fmt("%zu classes (%zu merge-free), %zu violations", classes, merge_free, violations)};
}

Outcome stability() {
    const auto start = Clock::now();
    const auto cloud = sample_two_annuli(60, 1);
    StabilityConfig cfg;
    cfg.seed = 1;
    const auto rows = stability_experiment(cloud, cfg);
    std::size_t passing = 0, lines = 0, negative_gaps = 0, merge_runs = 0;
    double min_gap = INFINITY;
    for (const auto& r : rows) {
        passing += r.report.all_pass() ? 1 : 0;
        merge_runs += r.report.constants.q_prime > 0 ? 1 : 0;
        for (const auto& l : r.report.lines) {
            ++lines;
            min_gap = std::min(min_gap, l.rhs - l.lhs);
            negative_gaps += l.rhs - l.lhs >= 0 ? 0 : 1;
        }
    }
    const double t = seconds_since(start);
    return {rows.size() == 120 && passing == rows.size() && negative_gaps == 0 && t < 300,
            fmt("%zu/%zu runs pass, %zu inequality lines, smallest gap %.6g, %zu runs with merges, %.1fs", passing,
                rows.size(), lines, min_gap, merge_runs, t)};
}

Outcome distance_sanity() {
    std::size_t bad = 0, checks = 0;
    std::vector<CentralityCollection> cols;
    for (std::uint64_t s = 0; s < 40; ++s) {
        const auto a = analyze(cloud_for_seed(4000 + s, 20), AnalysisConfig{});
        for (double p : {1.0, 2.0}) cols.push_back(make_collection(a.curves, a.d_star, p));
    }
    for (const auto& c : cols) {
        ++checks;
        bad += centrality_distance(c, c).value == 0.0 ? 0 : 1;
        for (std::size_t i = 0; i < c.curves.size(); ++i) {
            const auto one = make_collection({c.curves[i]}, {c.d_star[i]}, c.p);
            const auto none = make_collection({}, {}, c.p);
            const double expect = 0.5 * std::pow(p_norm(c.curves[i], c.p, c.d_star[i]), c.p);
            ++checks;
            bad += std::abs(centrality_distance(one, none).value - expect) <= 1e-12 ? 0 : 1;
        }
    }
    auto g = derived_stream(7, "symmetry");
    for (int t = 0; t < 100; ++t) {
        const auto& x = cols[2 * uniform_index(g, cols.size() / 2)];
        const auto& y = cols[2 * uniform_index(g, cols.size() / 2)];
        ++checks;
        bad += centrality_distance(x, y).value == centrality_distance(y, x).value ? 0 : 1;
    }
    return {bad == 0, fmt("%zu checks, %zu failures", checks, bad)};
}

Outcome norm_cross_check(const std::vector<Analysis>& pool) {
    std::size_t curves = 0, checks = 0, bad = 0;
    double worst = 0.0;
    for (const auto& a : pool) {
        for (std::size_t i = 0; i < a.pairs.size() && curves < 100; ++i) {
            const auto c = j3_curve(a.pairs[i].id, a.clusters, a.pairs, ScalingKind::late);
            const double cutoff = a.d_star[i];
            if (!(cutoff > a.pairs[i].birth)) continue;
            ++curves;
            for (double p : {1.0, 2.0, 3.5}) {
                const auto f = [&](double x) { return std::pow(evaluate(c, x), p); };
                // The curve is nondecreasing, so cutoff * f(cutoff) bounds the integral.
                const double tol = 1e-13 * cutoff * f(cutoff) / 64;
                double integral = 0.0;
                for (int piece = 0; piece < 64; ++piece)
                    integral += oracle::adaptive_simpson(f, cutoff * piece / 64, cutoff * (piece + 1) / 64, tol);
                const double q = std::pow(integral, 1 / p);
                const double n = p_norm(c, p, cutoff);
                const double rel = std::abs(n - q) / std::max(std::abs(q), 1e-300);
                worst = std::max(worst, rel);
                ++checks;
                bad += rel <= 1e-6 ? 0 : 1;
            }
        }
        if (curves == 100) break;
    }
    return {curves == 100 && bad == 0,
            fmt("%zu curves, %zu norms, worst relative error %.3g", curves, checks, worst)};
}

Outcome signal_test() {
    std::size_t false_signals = 0;
    auto g = derived_stream(9, "single");
    for (int t = 0; t < 1000; ++t) {
        const std::vector<double> one{1.0 + std::exp(20 * uniform01(g))};
        false_signals += extract_signal_from_ratios(one, 0.05).signal_indices.size();
    }
    std::vector<double> pis(50, std::exp(std::exp(1.0)));
    pis.push_back(std::exp(std::exp(6.0)));
    const auto r = extract_signal_from_ratios(pis, 0.05);
    const bool outlier = r.signal_indices == std::vector<std::size_t>{50};
    return {false_signals == 0 && outlier,
            fmt("%zu signals over 1000 one-point diagrams; synthetic diagram flags %zu point(s)%s", false_signals,
                r.signal_indices.size(), outlier ? ", the outlier" : "")};
}

Outcome rank_agreement() {
    const auto start = Clock::now();
    std::size_t good = 0;
    double lo = 1.0, sum = 0.0;
    AnalysisConfig cfg;
    cfg.scaling = ScalingKind::late;
    for (std::uint64_t s = 0; s < 100; ++s) {
        const auto a = analyze(sample_sierpinski(300, s), cfg);
        std::vector<double> j5, pers;
        for (std::size_t i = 0; i < a.pairs.size(); ++i) {
            j5.push_back(max_value(a.curves[i]));
            pers.push_back(a.pairs[i].persistence());
        }
        double rho = -1.0;
        try {
            rho = spearman(j5, pers);
        } catch (const Error&) {
        }
        good += rho >= 0.85 ? 1 : 0;
        lo = std::min(lo, rho);
        sum += rho;
    }
    const double t = seconds_since(start);
    return {good >= 90 && t < 600,
            fmt("%zu/100 seeds with rho >= 0.85, mean rho %.3f, min %.3f, %.1fs", good, sum / 100, lo, t)};
}

Outcome bootstrap_shape() {
    const auto start = Clock::now();
    const auto big = sample_sierpinski(1000, 11);
    const auto resampled = bootstrap_sample(big, 0.8, 11, 0);
    BootstrapConfig cfg;
    cfg.reps = 100;
    cfg.seed = 11;
    const auto stats = bootstrap_hole_stats(sample_sierpinski(300, 11), cfg);
    const bool shape = resampled.size() == 800 && stats.counts.size() == 100 && stats.sample_size == 240;
    const auto again = summarize_counts(stats.counts);
    const bool consistent = again.mean == stats.mean && again.se == stats.se &&
                            std::abs(stats.ci_high - stats.mean - 1.96 * stats.se) < 1e-12;
    return {shape && consistent,
            fmt("1000 -> %zu, %zu replicates of %zu points, mean %.3f, se %.3f, ci95 (%.3f, %.3f), %.1fs",
                resampled.size(), stats.counts.size(), stats.sample_size, stats.mean, stats.se, stats.ci_low,
                stats.ci_high, seconds_since(start))};
}

Outcome threshold_analysis() {
    const auto start = Clock::now();
    const auto grid = default_threshold_grid();
    std::size_t nonmonotone = 0, holds = 0;
    auto g = derived_stream(12, "threshold-values");
    for (int t = 0; t < 1000; ++t) {
        std::vector<double> v(1 + uniform_index(g, 50));
        for (auto& x : v) x = uniform01(g) < 0.2 ? 0.0 : std::exp(4 * uniform01(g));
        const auto c = threshold_counts(v, grid);
        nonmonotone += std::is_sorted(c.rbegin(), c.rend()) ? 0 : 1;
    }
    AnalysisConfig cfg;
    cfg.scaling = ScalingKind::late;
    for (std::uint64_t s = 0; s < 100; ++s) {
        const auto table = threshold_table(analyze(sample_fern(300, s), cfg), grid);
        for (const auto* col : {&table.persistence, &table.centrality})
            nonmonotone += std::is_sorted(col->rbegin(), col->rend()) ? 0 : 1;
        holds += table.persistence[0] >= table.centrality[0] ? 1 : 0;
    }
    return {nonmonotone == 0 && holds >= 80,
            fmt("%zu nonmonotone count lists; persistence >= centrality at i = 0.25 in %zu/100 fern seeds, %.1fs",
                nonmonotone, holds, seconds_since(start))};
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    if (argc > 1) only = std::atoi(argv[1]);
    if (only < 0 || only > 12) {
        std::fprintf(stderr, "usage: %s [criterion 1-12]\n", argv[0]);
        return 2;
    }
    std::vector<Analysis> pool;
    auto shared_pool = [&]() -> const std::vector<Analysis>& {
        if (pool.empty()) pool = class_pool(1000);
        return pool;
    };

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"oracle homology equivalence", oracle_homology},
        {"unit square golden case", unit_square},
        {"merge clusters match the boundary oracle", merge_equivalence},
        {"centrality curves are monotone", [&] { return monotonicity(shared_pool()); }},
        {"dominance and zero properties", [&] { return dominance(shared_pool()); }},
        {"stability bounds hold", stability},
        {"distance sanity", distance_sanity},
        {"closed-form norms match quadrature", [&] { return norm_cross_check(shared_pool()); }},
        {"signal test", signal_test},
        {"rank agreement of max J5 and persistence", rank_agreement},
        {"bootstrap shape", bootstrap_shape},
        {"threshold analysis", threshold_analysis},
    };

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        if (only != 0 && static_cast<int>(i + 1) != only) continue;
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
