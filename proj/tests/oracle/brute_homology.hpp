#pragma once

// Brute-force Betti numbers of a Vietoris-Rips complex: enumerate every
// vertex subset, keep those whose pairwise distances are all <= 2 eps, and
// take ranks of dense boundary matrices over Z/2. Shares no code with the
// library; only meant for clouds of a dozen points or fewer.

#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

namespace oracle {

using Matrix = std::vector<std::vector<double>>;

inline Matrix distances(const std::vector<std::vector<double>>& pts) {
    Matrix d(pts.size(), std::vector<double>(pts.size(), 0.0));
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            double s = 0.0;
            for (std::size_t c = 0; c < pts[i].size(); ++c) s += (pts[i][c] - pts[j][c]) * (pts[i][c] - pts[j][c]);
            d[i][j] = d[j][i] = std::sqrt(s);
        }
    return d;
}

inline int rank_gf2(std::vector<std::vector<std::uint8_t>> m) {
    int rank = 0;
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    for (std::size_t c = 0; c < cols && rank < static_cast<int>(rows); ++c) {
        std::size_t pivot = rank;
        while (pivot < rows && !m[pivot][c]) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[pivot], m[rank]);
        for (std::size_t r = 0; r < rows; ++r)
            if (r != static_cast<std::size_t>(rank) && m[r][c])
                for (std::size_t t = 0; t < cols; ++t) m[r][t] ^= m[rank][t];
        ++rank;
    }
    return rank;
}

// Weight of a vertex subset: half its largest pairwise distance.
inline double subset_weight(const Matrix& d, std::uint32_t mask) {
    double w = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = i + 1; j < d.size(); ++j)
            if ((mask >> i & 1) && (mask >> j & 1)) w = std::max(w, d[i][j] / 2);
    return w;
}

/// betti[k] for k = 0..max_dim-1 of the complex of subsets with at most
/// max_dim + 1 vertices and weight <= eps.
inline std::vector<int> rips_betti(const Matrix& d, double eps, int max_dim) {
    const std::size_t n = d.size();
    std::vector<std::vector<std::uint32_t>> by_dim(max_dim + 1);
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        const int dim = std::popcount(mask) - 1;
        if (dim > max_dim) continue;
        if (subset_weight(d, mask) <= eps) by_dim[dim].push_back(mask);
    }
    auto boundary_rank = [&](int k) {
        if (k <= 0 || k > max_dim || by_dim[k].empty() || by_dim[k - 1].empty()) return 0;
        std::map<std::uint32_t, std::size_t> row;
        for (std::size_t i = 0; i < by_dim[k - 1].size(); ++i) row[by_dim[k - 1][i]] = i;
        std::vector<std::vector<std::uint8_t>> m(by_dim[k - 1].size(), std::vector<std::uint8_t>(by_dim[k].size(), 0));
        for (std::size_t c = 0; c < by_dim[k].size(); ++c) {
            const std::uint32_t s = by_dim[k][c];
            for (std::size_t v = 0; v < n; ++v)
                if (s >> v & 1) m[row.at(s & ~(1u << v))][c] = 1;
        }
        return rank_gf2(std::move(m));
    };
    std::vector<int> betti;
    for (int k = 0; k < max_dim; ++k)
        betti.push_back(static_cast<int>(by_dim[k].size()) - boundary_rank(k) - boundary_rank(k + 1));
    return betti;
}

}  // namespace oracle
