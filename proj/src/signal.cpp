#include "cyclecent/signal.hpp"

#include "cyclecent/error.hpp"
#include "cyclecent/filtration.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cyclecent {

double mult_pers(double birth, double death) {
    if (!(birth > 0.0)) throw DegenerateError("multiplicative persistence needs a positive birth");
    return death / birth;
}

double mult_pers(const PersistencePair& pair) { return mult_pers(pair.birth, pair.death); }

namespace {

LValues finish(LValues out, std::span<const double> pi, double A) {
    for (std::size_t i = 0; i < pi.size(); ++i) {
        if (std::isnan(pi[i])) continue;
        if (!(pi[i] > 1.0)) {
            ++out.dropped_small_ratio;
            continue;
        }
        out.kept.push_back(i);
        out.loglog.push_back(std::log(std::log(pi[i])));
    }
    if (out.kept.empty()) return out;
    out.mean_loglog = std::accumulate(out.loglog.begin(), out.loglog.end(), 0.0) /
                      static_cast<double>(out.loglog.size());
    for (double ll : out.loglog) out.l.push_back(A * ll - euler_gamma - out.mean_loglog);
    return out;
}

SignalReport report(const LValues& lv, std::span<const double> pi, double alpha, double A) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw ArgumentError("alpha must lie in (0, 1)");
    SignalReport r;
    r.alpha = alpha;
    r.A = A;
    r.tested = lv.kept.size();
    r.dropped_nonpositive_birth = lv.dropped_nonpositive_birth;
    r.dropped_small_ratio = lv.dropped_small_ratio;
    if (r.tested == 0) return r;
    r.threshold = alpha / static_cast<double>(r.tested);
    for (std::size_t i = 0; i < lv.kept.size(); ++i) {
        SignalPoint sp;
        sp.index = lv.kept[i];
        sp.pi = pi[lv.kept[i]];
        sp.loglog = lv.loglog[i];
        sp.l = lv.l[i];
        sp.p_value = std::exp(-std::exp(sp.l));
        sp.signal = sp.p_value < r.threshold;
        if (sp.signal) r.signal_indices.push_back(sp.index);
        r.points.push_back(sp);
    }
    return r;
}

// Ratios for a diagram; NaN marks a point dropped for its birth.
std::vector<double> ratios(std::span<const PersistencePair> dgm, std::size_t& dropped) {
    std::vector<double> pi;
    for (const auto& p : dgm) {
        if (p.birth > 0.0) {
            pi.push_back(p.death / p.birth);
        } else {
            pi.push_back(std::nan(""));
            ++dropped;
        }
    }
    return pi;
}

}  // namespace

LValues l_values_from_ratios(std::span<const double> pi, double A) { return finish({}, pi, A); }

LValues l_values(std::span<const PersistencePair> dgm, double A) {
    LValues out;
    const auto pi = ratios(dgm, out.dropped_nonpositive_birth);
    return finish(std::move(out), pi, A);
}

SignalReport extract_signal_from_ratios(std::span<const double> pi, double alpha, double A) {
    return report(l_values_from_ratios(pi, A), pi, alpha, A);
}

SignalReport extract_signal(std::span<const PersistencePair> dgm, double alpha, double A) {
    LValues lv;
    const auto pi = ratios(dgm, lv.dropped_nonpositive_birth);
    return report(finish(std::move(lv), pi, A), pi, alpha, A);
}

BootstrapStats summarize_counts(std::vector<std::size_t> counts) {
    BootstrapStats s;
    const double n = static_cast<double>(counts.size());
    if (counts.empty()) throw ArgumentError("no replicate counts");
    double sum = 0.0;
    for (auto c : counts) sum += static_cast<double>(c);
    s.mean = sum / n;
    if (counts.size() == 1) {
        s.se = 0.0;
        s.se_undefined = true;
    } else {
        double ss = 0.0;
        for (auto c : counts) ss += (static_cast<double>(c) - s.mean) * (static_cast<double>(c) - s.mean);
        s.se = std::sqrt(ss / (n - 1)) / std::sqrt(n);
    }
    s.ci_low = s.mean - 1.96 * s.se;
    s.ci_high = s.mean + 1.96 * s.se;
    s.counts = std::move(counts);
    return s;
}

BootstrapStats bootstrap_hole_stats(const PointCloud& cloud, const BootstrapConfig& config) {
    if (config.reps < 1) throw ArgumentError("bootstrap needs at least one replicate");
    std::vector<std::size_t> counts;
    std::size_t size = 0;
    for (std::size_t r = 0; r < config.reps; ++r) {
        const PointCloud sample = bootstrap_sample(cloud, config.fraction, config.seed, r);
        size = sample.size();
        const auto complex = rips_filtration(pairwise_distances(sample), config.max_dim, config.max_scale);
        const auto pairs = extract_pairs(complex, config.k);
        counts.push_back(extract_signal(pairs, config.alpha, config.A).signal_indices.size());
    }
    auto s = summarize_counts(std::move(counts));
    s.sample_size = size;
    return s;
}

namespace {

std::vector<double> average_ranks(std::span<const double> v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> rank(v.size());
    for (std::size_t i = 0; i < idx.size();) {
        std::size_t j = i;
        while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
        const double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t t = i; t <= j; ++t) rank[idx[t]] = r;
        i = j + 1;
    }
    return rank;
}

}  // namespace

double spearman(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw ArgumentError("spearman: inputs differ in length");
    if (x.size() < 2) throw ArgumentError("spearman: need at least two values");
    const auto rx = average_ranks(x);
    const auto ry = average_ranks(y);
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
    const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) throw UndefinedError("spearman: constant input");
    return sxy / std::sqrt(sxx * syy);
}

std::vector<double> default_threshold_grid() {
    std::vector<double> g;
    for (int k = 0; k <= 15; ++k) g.push_back((25.0 + 5.0 * k) / 100.0);
    return g;
}

std::vector<std::size_t> threshold_counts(std::span<const double> values, std::span<const double> grid) {
    if (values.empty()) throw ArgumentError("threshold counts need at least one value");
    const double top = *std::max_element(values.begin(), values.end());
    std::vector<std::size_t> out;
    for (double i : grid)
        out.push_back(static_cast<std::size_t>(
            std::count_if(values.begin(), values.end(), [&](double v) { return v >= i * top; })));
    return out;
}

}  // namespace cyclecent
