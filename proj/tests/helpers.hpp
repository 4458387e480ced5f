#pragma once

#include "cyclecent/filtration.hpp"
#include "cyclecent/persistence.hpp"
#include "cyclecent/pointcloud.hpp"
#include "cyclecent/rng.hpp"

#include <cmath>
#include <map>
#include <vector>

namespace testing {

using namespace cyclecent;

inline PointCloud unit_square() { return PointCloud(2, {0, 0, 1, 0, 1, 1, 0, 1}); }

inline PointCloud random_cloud(std::uint64_t seed, std::size_t n, std::size_t dim = 2) {
    auto g = derived_stream(seed, "test-cloud");
    std::vector<double> c;
    for (std::size_t i = 0; i < n * dim; ++i) c.push_back(uniform01(g));
    return PointCloud(dim, c);
}

/// Complex from edge weights plus explicit 2-simplices; vertices at 0.
inline FilteredComplex explicit_complex(const std::map<std::pair<Vertex, Vertex>, double>& edges,
                                        const std::map<std::vector<Vertex>, double>& triangles) {
    std::map<std::vector<Vertex>, double> all;
    for (const auto& [e, w] : edges) {
        all[{e.first}] = 0.0;
        all[{e.second}] = 0.0;
        all[{e.first, e.second}] = w;
    }
    for (const auto& [t, w] : triangles) all[t] = w;
    std::vector<Simplex> s;
    for (const auto& [v, w] : all) s.push_back({v, w});
    return FilteredComplex::from_simplices(std::move(s));
}

/// Three squares in a row. Their loops close at 2, 3, 4 and are filled at
/// 5, 6, 7, so each class merges into its right neighbour:
/// c = (2, 5), b = (3, 6), a = (4, 7).
inline FilteredComplex three_squares() {
    return explicit_complex({{{0, 1}, 1}, {{0, 4}, 1}, {{1, 5}, 1}, {{1, 2}, 1}, {{2, 6}, 1}, {{2, 3}, 1},
                             {{3, 7}, 1}, {{4, 5}, 2}, {{5, 6}, 3}, {{6, 7}, 4}, {{1, 4}, 5}, {{2, 5}, 6},
                             {{3, 6}, 7}},
                            {{{0, 1, 4}, 5}, {{1, 4, 5}, 5}, {{1, 2, 5}, 6}, {{2, 5, 6}, 6}, {{2, 3, 6}, 7},
                             {{3, 6, 7}, 7}});
}

/// Two squares sharing edge {1,4}. The outer hexagon closes at 1, the
/// shared edge at 2; the right square is filled at 3, the left one at 4.
inline FilteredComplex two_squares() {
    return explicit_complex({{{0, 1}, 1}, {{0, 3}, 1}, {{1, 2}, 1}, {{2, 5}, 1}, {{3, 4}, 1}, {{4, 5}, 1},
                             {{1, 4}, 2}, {{1, 5}, 3}, {{0, 4}, 4}},
                            {{{1, 2, 5}, 3}, {{1, 4, 5}, 3}, {{0, 1, 4}, 4}, {{0, 3, 4}, 4}});
}

/// Edges of a chain as sorted vertex pairs.
inline std::vector<std::vector<Vertex>> chain_vertices(const FilteredComplex& c, const Chain& chain) {
    std::vector<std::vector<Vertex>> out;
    for (SimplexId s : chain.simplices) {
        auto v = c.vertices(s);
        out.emplace_back(v.begin(), v.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace testing
