#include "cyclecent/filtration.hpp"

#include "cyclecent/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

namespace cyclecent {

namespace {

constexpr std::size_t kMaxEdgeTableVertices = 4096;

bool lex_less(std::span<const Vertex> a, std::span<const Vertex> b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::string describe(std::span<const Vertex> v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
    return s + "]";
}

}  // namespace

Simplex FilteredComplex::simplex(SimplexId id) const {
    auto v = vertices(id);
    return Simplex{{v.begin(), v.end()}, weights_[id]};
}

std::span<const SimplexId> FilteredComplex::of_dim(int d) const {
    if (d < 0 || d >= static_cast<int>(by_dim_.size())) return {};
    return by_dim_[static_cast<std::size_t>(d)];
}

std::optional<SimplexId> FilteredComplex::find(std::span<const Vertex> v) const {
    if (v.empty()) return std::nullopt;
    const auto d = v.size() - 1;
    if (d >= lex_dim_.size()) return std::nullopt;
    if (d == 1 && !edge_table_.empty()) {
        if (v[0] >= n_vertices_ || v[1] >= n_vertices_) return std::nullopt;
        SimplexId id = edge_table_[v[0] * n_vertices_ + v[1]];
        if (id == static_cast<SimplexId>(-1)) return std::nullopt;
        return id;
    }
    const auto& lex = lex_dim_[d];
    auto it = std::lower_bound(lex.begin(), lex.end(), v, [&](SimplexId id, std::span<const Vertex> key) {
        return lex_less(vertices(id), key);
    });
    if (it == lex.end()) return std::nullopt;
    auto found = vertices(*it);
    if (!std::equal(found.begin(), found.end(), v.begin(), v.end())) return std::nullopt;
    return *it;
}

void FilteredComplex::faces(SimplexId id, std::vector<SimplexId>& out) const {
    out.clear();
    auto v = vertices(id);
    if (v.size() <= 1) return;
    std::vector<Vertex> face(v.size() - 1);
    for (std::size_t omit = 0; omit < v.size(); ++omit) {
        std::size_t w = 0;
        for (std::size_t i = 0; i < v.size(); ++i)
            if (i != omit) face[w++] = v[i];
        auto f = find(face);
        if (!f) throw InternalError("face " + describe(face) + " missing from complex");
        out.push_back(*f);
    }
}

void FilteredComplex::finalize(std::vector<Staged> staged, std::vector<Vertex> pool,
                               bool lex_within_dim) {
    // Staged entries arrive either already lexicographic within each
    // dimension (Rips enumeration) or in arbitrary order.
    std::vector<std::uint32_t> order(staged.size());
    std::iota(order.begin(), order.end(), 0u);
    auto span_of = [&](std::uint32_t i) {
        return std::span<const Vertex>(pool.data() + staged[i].offset,
                                       static_cast<std::size_t>(staged[i].dim) + 1);
    };
    if (lex_within_dim) {
        std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
            if (staged[a].weight != staged[b].weight) return staged[a].weight < staged[b].weight;
            return staged[a].dim < staged[b].dim;
        });
    } else {
        std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
            if (staged[a].weight != staged[b].weight) return staged[a].weight < staged[b].weight;
            if (staged[a].dim != staged[b].dim) return staged[a].dim < staged[b].dim;
            return lex_less(span_of(a), span_of(b));
        });
    }

    const std::size_t n = staged.size();
    weights_.resize(n);
    dims_.resize(n);
    offsets_.resize(n);
    pool_.clear();
    pool_.reserve(pool.size());
    max_dim_ = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& s = staged[order[i]];
        weights_[i] = s.weight;
        dims_[i] = s.dim;
        offsets_[i] = static_cast<std::uint32_t>(pool_.size());
        auto v = span_of(order[i]);
        pool_.insert(pool_.end(), v.begin(), v.end());
        max_dim_ = std::max<int>(max_dim_, s.dim);
    }

    by_dim_.assign(static_cast<std::size_t>(max_dim_) + 1, {});
    rank_.resize(n);
    for (SimplexId i = 0; i < n; ++i) {
        auto& bucket = by_dim_[dims_[i]];
        rank_[i] = static_cast<std::uint32_t>(bucket.size());
        bucket.push_back(i);
    }
    lex_dim_.assign(by_dim_.size(), {});
    if (lex_within_dim) {
        // Staged order is lexicographic within each dimension already.
        std::vector<SimplexId> position(n);
        for (SimplexId i = 0; i < n; ++i) position[order[i]] = i;
        for (std::uint32_t s = 0; s < n; ++s) lex_dim_[staged[s].dim].push_back(position[s]);
    } else {
        lex_dim_ = by_dim_;
        for (auto& ids : lex_dim_)
            std::sort(ids.begin(), ids.end(),
                      [&](SimplexId a, SimplexId b) { return lex_less(vertices(a), vertices(b)); });
    }

    n_vertices_ = 0;
    for (SimplexId id : of_dim(0)) n_vertices_ = std::max<std::size_t>(n_vertices_, vertices(id)[0] + 1);
    edge_table_.clear();
    if (max_dim_ >= 1 && n_vertices_ <= kMaxEdgeTableVertices) {
        edge_table_.assign(n_vertices_ * n_vertices_, static_cast<SimplexId>(-1));
        for (SimplexId id : of_dim(1)) {
            auto v = vertices(id);
            edge_table_[v[0] * n_vertices_ + v[1]] = id;
        }
    }
}

FilteredComplex FilteredComplex::from_simplices(std::vector<Simplex> simplices,
                                                std::optional<double> max_scale) {
    std::vector<Staged> staged;
    std::vector<Vertex> pool;
    std::map<std::vector<Vertex>, double> seen;
    double heaviest = 0.0;
    for (const auto& s : simplices) {
        if (s.vertices.empty()) throw ArgumentError("simplex without vertices");
        if (s.vertices.size() > 256) throw ArgumentError("simplex dimension too large");
        for (std::size_t i = 1; i < s.vertices.size(); ++i)
            if (s.vertices[i - 1] >= s.vertices[i])
                throw ArgumentError("simplex " + describe(s.vertices) + " vertices not strictly increasing");
        if (!(s.weight >= 0.0) || !std::isfinite(s.weight))
            throw ArgumentError("simplex " + describe(s.vertices) + " has invalid weight");
        if (!seen.emplace(s.vertices, s.weight).second)
            throw ArgumentError("duplicate simplex " + describe(s.vertices));
        heaviest = std::max(heaviest, s.weight);
        staged.push_back({s.weight, static_cast<std::uint32_t>(pool.size()),
                          static_cast<std::uint8_t>(s.vertices.size() - 1)});
        pool.insert(pool.end(), s.vertices.begin(), s.vertices.end());
    }
    for (const auto& [v, w] : seen) {
        if (v.size() == 1) continue;
        std::vector<Vertex> face(v.size() - 1);
        for (std::size_t omit = 0; omit < v.size(); ++omit) {
            std::size_t k = 0;
            for (std::size_t i = 0; i < v.size(); ++i)
                if (i != omit) face[k++] = v[i];
            auto it = seen.find(face);
            if (it == seen.end())
                throw ArgumentError("face " + describe(face) + " of " + describe(v) + " missing");
            if (it->second > w)
                throw ArgumentError("face " + describe(face) + " is heavier than " + describe(v));
        }
    }
    FilteredComplex c;
    c.finalize(std::move(staged), std::move(pool), false);
    c.max_scale_ = max_scale.value_or(heaviest);
    return c;
}

FilteredComplex rips_filtration(const DistanceMatrix& dist, int max_dim, std::optional<double> max_scale) {
    if (max_dim < 1) throw ArgumentError("max_dim must be >= 1");
    if (max_dim > 64) throw ArgumentError("max_dim too large");
    if (max_scale && !(*max_scale > 0.0)) throw ArgumentError("max_scale must be > 0");
    const std::size_t n = dist.size();
    const double scale = max_scale.value_or(dist.enclosing_radius() / 2.0);

    std::vector<FilteredComplex::Staged> staged;
    std::vector<Vertex> pool;
    for (std::size_t v = 0; v < n; ++v) {
        staged.push_back({0.0, static_cast<std::uint32_t>(pool.size()), 0});
        pool.push_back(static_cast<Vertex>(v));
    }

    // Higher neighbours of each vertex under the scale, plus a dense
    // adjacency bitmap for the clique test.
    std::vector<std::vector<Vertex>> up(n);
    std::vector<char> adjacent(n * n, 0);
    std::size_t edges_begin = staged.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double w = dist(i, j) / 2.0;
            if (w > scale) continue;
            up[i].push_back(static_cast<Vertex>(j));
            adjacent[i * n + j] = adjacent[j * n + i] = 1;
            if (max_dim >= 1) {
                staged.push_back({w, static_cast<std::uint32_t>(pool.size()), 1});
                pool.push_back(static_cast<Vertex>(i));
                pool.push_back(static_cast<Vertex>(j));
            }
        }

    // Extend each (d-1)-simplex, in lexicographic order, by every larger
    // vertex adjacent to all of its vertices; the result stays lexicographic.
    std::size_t prev_begin = edges_begin, prev_end = staged.size();
    for (int d = 2; d <= max_dim; ++d) {
        for (std::size_t s = prev_begin; s < prev_end; ++s) {
            const auto base = staged[s];
            const std::size_t len = static_cast<std::size_t>(base.dim) + 1;
            const Vertex last = pool[base.offset + len - 1];
            for (Vertex w : up[last]) {
                double weight = base.weight;
                bool clique = true;
                for (std::size_t k = 0; k + 1 < len; ++k) {
                    Vertex u = pool[base.offset + k];
                    if (!adjacent[u * n + w]) {
                        clique = false;
                        break;
                    }
                    weight = std::max(weight, dist(u, w) / 2.0);
                }
                if (!clique) continue;
                weight = std::max(weight, dist(last, w) / 2.0);
                std::uint32_t offset = static_cast<std::uint32_t>(pool.size());
                for (std::size_t k = 0; k < len; ++k) {
                    Vertex u = pool[base.offset + k];
                    pool.push_back(u);
                }
                pool.push_back(w);
                staged.push_back({weight, offset, static_cast<std::uint8_t>(d)});
            }
        }
        prev_begin = prev_end;
        prev_end = staged.size();
        if (prev_begin == prev_end) break;
    }

    FilteredComplex c;
    c.finalize(std::move(staged), std::move(pool), true);
    c.max_scale_ = scale;
    c.flag_ = true;
    return c;
}

std::optional<SimplexId> FilteredComplex::edge(Vertex u, Vertex v) const {
    if (u > v) std::swap(u, v);
    const Vertex e[2] = {u, v};
    return find(e);
}

SimplexId filtration_index(const FilteredComplex& complex, std::span<const Vertex> vertices) {
    auto id = complex.find(vertices);
    if (!id) throw LookupError("simplex " + describe(vertices) + " not in complex");
    return *id;
}

SimplexId filtration_index(const FilteredComplex& complex, const Simplex& simplex) {
    return filtration_index(complex, std::span<const Vertex>(simplex.vertices));
}

}  // namespace cyclecent
