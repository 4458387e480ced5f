#include "cyclecent/metric.hpp"

#include "cyclecent/error.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <set>

namespace cyclecent {

namespace {

// Largest shortest-path distance between two of `targets`, using only edges
// lighter than `below`.
class Skeleton {
public:
    explicit Skeleton(const FilteredComplex& c) : adj_(c.vertex_count()) {
        for (SimplexId e : c.of_dim(1)) {
            const auto v = c.vertices(e);
            adj_[v[0]].push_back({v[1], c.weight(e)});
            adj_[v[1]].push_back({v[0], c.weight(e)});
        }
    }

    double diameter(const std::vector<Vertex>& targets, double below) const {
        const double inf = std::numeric_limits<double>::infinity();
        double best = 0.0;
        std::vector<double> dist(adj_.size());
        using Item = std::pair<double, Vertex>;
        for (Vertex s : targets) {
            std::fill(dist.begin(), dist.end(), inf);
            dist[s] = 0.0;
            std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
            pq.push({0.0, s});
            while (!pq.empty()) {
                auto [d, u] = pq.top();
                pq.pop();
                if (d > dist[u]) continue;
                for (const auto& [v, w] : adj_[u]) {
                    if (!(w < below)) continue;
                    if (d + w < dist[v]) {
                        dist[v] = d + w;
                        pq.push({dist[v], v});
                    }
                }
            }
            for (Vertex t : targets) {
                if (dist[t] == inf) throw InternalError("cycle vertices disconnected in the 1-skeleton");
                best = std::max(best, dist[t]);
            }
        }
        return best;
    }

private:
    std::vector<std::vector<std::pair<Vertex, double>>> adj_;
};

std::vector<Vertex> chain_vertices(const FilteredComplex& c, const Chain& chain) {
    std::set<Vertex> vs;
    for (SimplexId s : chain.simplices)
        for (Vertex v : c.vertices(s)) vs.insert(v);
    return {vs.begin(), vs.end()};
}

double d_star_with(const Skeleton& g, std::size_t id, const FilteredComplex& complex,
                   const MergeClusters& clusters, std::span<const PersistencePair> pairs, bool geodesic) {
    const auto& root = pairs[index_of(pairs, id)];
    if (!geodesic) return root.death;
    std::vector<const Chain*> cycles{&root.representative};
    for (const auto& m : clusters.members(id)) cycles.push_back(&pairs[index_of(pairs, m.id)].representative);

    std::size_t biggest = 0;
    for (const Chain* c : cycles) biggest = std::max(biggest, c->simplices.size());
    double g_best = 0.0;
    for (const Chain* c : cycles)
        if (c->simplices.size() == biggest)
            g_best = std::max(g_best, g.diameter(chain_vertices(complex, *c), root.death));
    return std::min(root.death, g_best);
}

// Integral of f^p over an interval of length len on which f is linear and
// does not change sign, with endpoint values f0, f1.
double linear_power_integral(double len, double f0, double f1, double p) {
    if (len <= 0.0) return 0.0;
    f0 = std::abs(f0);
    f1 = std::abs(f1);
    if (f0 == f1) return std::pow(f0, p) * len;
    return len * (std::pow(f1, p + 1) - std::pow(f0, p + 1)) / ((p + 1) * (f1 - f0));
}

// Same, allowing one sign change.
double signed_power_integral(double len, double f0, double f1, double p) {
    if ((f0 < 0.0 && f1 > 0.0) || (f0 > 0.0 && f1 < 0.0)) {
        const double t = len * f0 / (f0 - f1);
        return linear_power_integral(t, f0, 0.0, p) + linear_power_integral(len - t, 0.0, f1, p);
    }
    return linear_power_integral(len, f0, f1, p);
}

double left_limit(const CentralityCurve& c, double x) {
    auto it = std::lower_bound(c.knots.begin(), c.knots.end(), x,
                               [](const Knot& k, double e) { return k.x < e; });
    if (it == c.knots.begin()) return 0.0;
    --it;
    return it->value + it->slope * (x - it->x);
}

struct Bottleneck {
    double value = 0.0;
    std::vector<MatchEdge> matching;
};

// Left side: A points then one diagonal copy per B point. Right side: B
// points then one diagonal copy per A point. Diagonal copies match each
// other for free.
Bottleneck solve_bottleneck(std::size_t n, std::size_t m, const std::function<double(std::size_t, std::size_t)>& cost,
                            std::span<const double> diag_a, std::span<const double> diag_b) {
    Bottleneck out;
    const std::size_t size = n + m;
    if (size == 0) return out;

    auto edge_cost = [&](std::size_t l, std::size_t r) -> std::optional<double> {
        if (l < n && r < m) return cost(l, r);
        if (l < n) return r - m == l ? std::optional<double>(diag_a[l]) : std::nullopt;
        if (r < m) return l - n == r ? std::optional<double>(diag_b[r]) : std::nullopt;
        return 0.0;
    };

    std::vector<double> candidates{0.0};
    for (std::size_t i = 0; i < n; ++i) {
        candidates.push_back(diag_a[i]);
        for (std::size_t j = 0; j < m; ++j) candidates.push_back(cost(i, j));
    }
    for (std::size_t j = 0; j < m; ++j) candidates.push_back(diag_b[j]);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    std::vector<std::optional<std::size_t>> match_right(size);
    auto perfect = [&](double t) {
        std::fill(match_right.begin(), match_right.end(), std::nullopt);
        std::vector<char> seen(size);
        std::function<bool(std::size_t)> augment = [&](std::size_t l) {
            for (std::size_t r = 0; r < size; ++r) {
                if (seen[r]) continue;
                auto c = edge_cost(l, r);
                if (!c || *c > t) continue;
                seen[r] = 1;
                if (!match_right[r] || augment(*match_right[r])) {
                    match_right[r] = l;
                    return true;
                }
            }
            return false;
        };
        for (std::size_t l = 0; l < size; ++l) {
            std::fill(seen.begin(), seen.end(), 0);
            if (!augment(l)) return false;
        }
        return true;
    };

    std::size_t lo = 0;
    std::size_t hi = candidates.size() - 1;
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (perfect(candidates[mid]))
            hi = mid;
        else
            lo = mid + 1;
    }
    if (!perfect(candidates[lo])) throw InternalError("bottleneck matching failed");
    out.value = candidates[lo];
    for (std::size_t r = 0; r < size; ++r) {
        const std::size_t l = *match_right[r];
        if (l < n && r < m)
            out.matching.push_back({l, r, cost(l, r)});
        else if (l < n)
            out.matching.push_back({l, std::nullopt, diag_a[l]});
        else if (r < m)
            out.matching.push_back({std::nullopt, r, diag_b[r]});
    }
    std::sort(out.matching.begin(), out.matching.end(), [](const MatchEdge& x, const MatchEdge& y) {
        if (x.a.has_value() != y.a.has_value()) return x.a.has_value();
        if (x.a != y.a) return x.a < y.a;
        return x.b < y.b;
    });
    return out;
}

}  // namespace

double d_star(std::size_t id, const FilteredComplex& complex, const MergeClusters& clusters,
              std::span<const PersistencePair> pairs, bool geodesic) {
    const Skeleton g(complex);
    return d_star_with(g, id, complex, clusters, pairs, geodesic);
}

std::vector<double> d_stars(const FilteredComplex& complex, const MergeClusters& clusters,
                            std::span<const PersistencePair> pairs, bool geodesic) {
    const Skeleton g(complex);
    std::vector<double> out;
    for (const auto& p : pairs) out.push_back(d_star_with(g, p.id, complex, clusters, pairs, geodesic));
    return out;
}

double p_integral(const CentralityCurve& curve, double p, double cutoff) {
    if (!(p >= 1.0) || std::isinf(p)) throw ArgumentError("p must be a finite number >= 1");
    if (cutoff < 0.0) throw ArgumentError("cutoff must be >= 0");
    double total = 0.0;
    const auto& ks = curve.knots;
    for (std::size_t i = 0; i < ks.size(); ++i) {
        const double lo = std::max(ks[i].x, 0.0);
        const double hi = std::min(i + 1 < ks.size() ? ks[i + 1].x : cutoff, cutoff);
        if (hi <= lo) continue;
        const double f0 = ks[i].value + ks[i].slope * (lo - ks[i].x);
        const double f1 = ks[i].value + ks[i].slope * (hi - ks[i].x);
        total += linear_power_integral(hi - lo, f0, f1, p);
    }
    return total;
}

double p_norm(const CentralityCurve& curve, double p, double cutoff) {
    if (!(p >= 1.0)) throw ArgumentError("p must be >= 1");
    if (cutoff < 0.0) throw ArgumentError("cutoff must be >= 0");
    if (std::isinf(p)) return evaluate(curve, cutoff);
    return std::pow(p_integral(curve, p, cutoff), 1.0 / p);
}

CentralityCollection make_collection(std::vector<CentralityCurve> curves, std::vector<double> d_star,
                                     double p) {
    if (curves.size() != d_star.size()) throw ArgumentError("one cutoff per curve is required");
    CentralityCollection c;
    c.p = p;
    for (std::size_t i = 0; i < curves.size(); ++i) {
        c.norms.push_back(p_norm(curves[i], p, d_star[i]));
        c.deltas.push_back(std::isinf(p) ? c.norms.back() : p_integral(curves[i], p, d_star[i]));
    }
    c.curves = std::move(curves);
    c.d_star = std::move(d_star);
    return c;
}

DistanceResult centrality_distance(std::span<const double> a, std::span<const double> b) {
    std::vector<double> da;
    std::vector<double> db;
    for (double x : a) da.push_back(x / 2);
    for (double x : b) db.push_back(x / 2);
    auto r = solve_bottleneck(
        a.size(), b.size(), [&](std::size_t i, std::size_t j) { return std::abs(a[i] - b[j]); }, da, db);
    return {1.0, r.value, std::move(r.matching)};
}

DistanceResult centrality_distance(const CentralityCollection& a, const CentralityCollection& b) {
    if (a.p != b.p) throw ArgumentError("collections were normed with different p");
    if (std::isinf(a.p)) throw ArgumentError("use the landscape distance for p = infinity");
    auto r = centrality_distance(a.deltas, b.deltas);
    r.p = a.p;
    return r;
}

double centrality_distance_inf(std::span<const CentralityCurve> a, std::span<const CentralityCurve> b,
                               double inner_p) {
    if (!(inner_p >= 1.0)) throw ArgumentError("p must be >= 1");
    auto ranked = [](std::span<const CentralityCurve> xs) {
        std::vector<const CentralityCurve*> v;
        for (const auto& c : xs) v.push_back(&c);
        std::stable_sort(v.begin(), v.end(), [](const CentralityCurve* x, const CentralityCurve* y) {
            return max_value(*x) > max_value(*y);
        });
        return v;
    };
    const auto ra = ranked(a);
    const auto rb = ranked(b);
    const CentralityCurve zero;
    double total = 0.0;
    for (std::size_t m = 0; m < std::max(ra.size(), rb.size()); ++m) {
        const CentralityCurve& f = m < ra.size() ? *ra[m] : zero;
        const CentralityCurve& g = m < rb.size() ? *rb[m] : zero;
        std::vector<double> xs{0.0};
        for (const auto& k : f.knots) xs.push_back(std::max(k.x, 0.0));
        for (const auto& k : g.knots) xs.push_back(std::max(k.x, 0.0));
        std::sort(xs.begin(), xs.end());
        xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
        if (std::isinf(inner_p)) {
            double sup = 0.0;
            for (double x : xs)
                sup = std::max({sup, std::abs(evaluate(f, x) - evaluate(g, x)),
                                std::abs(left_limit(f, x) - left_limit(g, x))});
            total += sup;
        } else {
            double integral = 0.0;
            for (std::size_t i = 0; i + 1 < xs.size(); ++i)
                integral += signed_power_integral(xs[i + 1] - xs[i], evaluate(f, xs[i]) - evaluate(g, xs[i]),
                                                  left_limit(f, xs[i + 1]) - left_limit(g, xs[i + 1]), inner_p);
            total += std::pow(integral, 1.0 / inner_p);
        }
    }
    return total;
}

Constants constants(std::span<const PersistencePair> a, std::span<const PersistencePair> b,
                    const MergeClusters& ca, const MergeClusters& cb) {
    if (a.empty() && b.empty()) throw UndefinedError("constants need at least one class");
    Constants k;
    k.q = std::max(a.size(), b.size());
    auto scan = [&](std::span<const PersistencePair> ps, const MergeClusters& cs) {
        for (const auto& p : ps) {
            k.K = std::max(k.K, p.persistence());
            if (!(p.persistence() > 0.0)) continue;
            std::size_t total = 0;
            for (int n = 1;; ++n) {
                const auto level = nth_order_cluster(cs, p.id, n, p.death);
                if (level.empty()) break;
                total += level.size();
            }
            k.q_prime = std::max(k.q_prime, total);
        }
    };
    scan(a, ca);
    scan(b, cb);
    k.no_merges = k.q_prime == 0;
    return k;
}

double bound_R(double p, double K, double q) {
    if (std::isinf(p)) return 2.0 * q * (1.0 + q);
    return std::pow(2.0, 1.0 / p) * K * (1.0 + q);
}

double bound_Rprime(double p, double K, double q_prime) { return bound_R(p, K, q_prime); }

Diagram to_diagram(std::span<const PersistencePair> pairs) {
    Diagram d;
    for (const auto& p : pairs) {
        d.birth.push_back(p.birth);
        d.death.push_back(p.death);
    }
    return d;
}

DistanceResult bottleneck_distance(const Diagram& a, const Diagram& b) {
    std::vector<double> da;
    std::vector<double> db;
    for (std::size_t i = 0; i < a.size(); ++i) da.push_back((a.death[i] - a.birth[i]) / 2);
    for (std::size_t j = 0; j < b.size(); ++j) db.push_back((b.death[j] - b.birth[j]) / 2);
    auto r = solve_bottleneck(
        a.size(), b.size(),
        [&](std::size_t i, std::size_t j) {
            return std::max(std::abs(a.birth[i] - b.birth[j]), std::abs(a.death[i] - b.death[j]));
        },
        da, db);
    return {infinity_p, r.value, std::move(r.matching)};
}

double weight_discrepancy(const DistanceMatrix& a, const DistanceMatrix& b) {
    if (a.size() != b.size()) throw ArgumentError("weight discrepancy needs the same vertex set");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j) worst = std::max(worst, std::abs(a(i, j) - b(i, j)) / 2);
    return worst;
}

bool BoundReport::all_pass() const {
    return std::all_of(lines.begin(), lines.end(), [](const BoundLine& l) { return l.pass; });
}

BoundReport verify_bounds(double p, double distance, const Diagram& da, const Diagram& db,
                          double weight_gap, const Constants& k) {
    BoundReport r;
    r.p = p;
    r.distance = distance;
    r.bottleneck = bottleneck_distance(da, db).value;
    r.weight_gap = weight_gap;
    r.constants = k;

    const bool inf = std::isinf(p);
    const double q = static_cast<double>(k.q);
    const double qp = static_cast<double>(k.q_prime);
    const double R = bound_R(p, k.K, q);
    const double Rp = bound_Rprime(p, k.K, qp);
    auto root = [&](double x) { return inf ? x : std::pow(x, 1.0 / p); };
    auto add = [&](std::string name, double rhs) { r.lines.push_back({std::move(name), distance, rhs, distance <= rhs}); };

    add("absolute", inf ? k.K * q * (1 + q) : std::pow(k.K, 1 + 1 / p) * (1 + q));
    add("bottleneck", R * root(r.bottleneck));
    add("weights", R * root(weight_gap));
    add("bottleneck_merge", Rp * root(r.bottleneck));
    if (inf || (k.K > 0 && qp > 1.0 / (std::pow(2.0, 1.0 / p) * k.K) - 1.0))
        add("weights_merge", Rp * weight_gap);
    return r;
}

}  // namespace cyclecent
