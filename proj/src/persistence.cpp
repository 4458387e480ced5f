#include "cyclecent/persistence.hpp"

#include "cyclecent/error.hpp"

#include <algorithm>
#include <iterator>
#include <limits>
#include <map>

namespace cyclecent {

namespace {

template <class T>
void xor_into(std::vector<T>& target, const std::vector<T>& source, std::vector<T>& scratch) {
    scratch.clear();
    std::set_symmetric_difference(target.begin(), target.end(), source.begin(), source.end(),
                                  std::back_inserter(scratch));
    target.swap(scratch);
}

// In a flag complex, if some vertex x turns t into a clique whose other
// facets all precede t, then the boundary of t is the sum of their boundaries
// and the column of t reduces to zero.
bool coned_by_earlier_facets(const FilteredComplex& complex, SimplexId t) {
    const auto v = complex.vertices(t);
    const std::size_t m = v.size();
    const double wt = complex.weight(t);
    if (m < 2) return false;

    auto edge_weight = [&](Vertex a, Vertex b) -> double {
        auto e = complex.edge(a, b);
        return e ? complex.weight(*e) : std::numeric_limits<double>::infinity();
    };
    std::vector<double> facet_weight(m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = a + 1; b < m; ++b)
                if (a != i && b != i) facet_weight[i] = std::max(facet_weight[i], edge_weight(v[a], v[b]));

    std::vector<double> to_x(m);
    std::vector<Vertex> facet(m);
    const auto n = static_cast<Vertex>(complex.vertex_count());
    for (Vertex x = 0; x < n; ++x) {
        bool usable = true;
        for (std::size_t j = 0; j < m && usable; ++j) {
            if (v[j] == x) {
                usable = false;
                break;
            }
            to_x[j] = edge_weight(v[j], x);
            usable = to_x[j] <= wt;
        }
        if (!usable) continue;
        bool all_before = true;
        for (std::size_t i = 0; i < m && all_before; ++i) {
            double w = facet_weight[i];
            for (std::size_t j = 0; j < m; ++j)
                if (j != i) w = std::max(w, to_x[j]);
            if (w < wt) continue;
            // Equal weight: the lexicographically smaller facet comes first.
            std::size_t k = 0;
            for (std::size_t j = 0; j < m; ++j)
                if (j != i) facet[k++] = v[j];
            facet[k] = x;
            std::sort(facet.begin(), facet.end());
            all_before = std::lexicographical_compare(facet.begin(), facet.end(), v.begin(), v.end());
        }
        if (all_before) return true;
    }
    return false;
}

}  // namespace

bool Chain::contains(SimplexId id) const {
    return std::binary_search(simplices.begin(), simplices.end(), id);
}

Chain operator+(const Chain& a, const Chain& b) {
    if (a.dim != b.dim && !a.empty() && !b.empty())
        throw ArgumentError("cannot add chains of different dimension");
    Chain out{a.empty() ? b.dim : a.dim, {}};
    std::set_symmetric_difference(a.simplices.begin(), a.simplices.end(), b.simplices.begin(),
                                  b.simplices.end(), std::back_inserter(out.simplices));
    return out;
}

FaceChain boundary(std::span<const Vertex> simplex) {
    FaceChain faces;
    if (simplex.size() <= 1) return faces;
    for (std::size_t omit = simplex.size(); omit-- > 0;) {
        std::vector<Vertex> f;
        f.reserve(simplex.size() - 1);
        for (std::size_t i = 0; i < simplex.size(); ++i)
            if (i != omit) f.push_back(simplex[i]);
        faces.push_back(std::move(f));
    }
    // Omitting from the back first already yields lexicographic order.
    return faces;
}

FaceChain boundary(const FaceChain& chain) {
    std::map<std::vector<Vertex>, int> parity;
    for (const auto& s : chain)
        for (auto& f : boundary(std::span<const Vertex>(s))) parity[std::move(f)] ^= 1;
    FaceChain out;
    for (auto& [f, odd] : parity)
        if (odd) out.push_back(f);
    return out;
}

Chain boundary(const FilteredComplex& complex, const Chain& chain) {
    Chain out{chain.dim - 1, {}};
    if (chain.dim <= 0) return Chain{0, {}};
    std::vector<SimplexId> all, faces;
    for (SimplexId s : chain.simplices) {
        complex.faces(s, faces);
        all.insert(all.end(), faces.begin(), faces.end());
    }
    std::sort(all.begin(), all.end());
    for (std::size_t i = 0; i < all.size();) {
        std::size_t j = i;
        while (j < all.size() && all[j] == all[i]) ++j;
        if ((j - i) % 2 == 1) out.simplices.push_back(all[i]);
        i = j;
    }
    return out;
}

BoundaryMatrix boundary_matrix(const FilteredComplex& complex, int k) {
    if (k < 0) throw ArgumentError("boundary matrix dimension must be >= 0");
    BoundaryMatrix m;
    m.dim = k;
    auto cols = complex.of_dim(k);
    auto rows = complex.of_dim(k - 1);
    m.column_simplices.assign(cols.begin(), cols.end());
    m.row_simplices.assign(rows.begin(), rows.end());
    m.columns.resize(cols.size());
    if (k == 0) return m;
    std::vector<SimplexId> faces;
    for (std::size_t j = 0; j < cols.size(); ++j) {
        complex.faces(cols[j], faces);
        auto& col = m.columns[j];
        col.reserve(faces.size());
        for (SimplexId f : faces) col.push_back(static_cast<std::uint32_t>(complex.rank_in_dim(f)));
        std::sort(col.begin(), col.end());
    }
    return m;
}

Reduction reduce(const BoundaryMatrix& matrix, ReduceOptions options) {
    Reduction r;
    const std::size_t n = matrix.columns.size();
    r.columns = matrix.columns;
    r.column_of_low.assign(matrix.row_simplices.size(), std::nullopt);
    if (options.track_log) {
        r.log.resize(n);
        for (std::size_t j = 0; j < n; ++j) r.log[j] = {static_cast<std::uint32_t>(j)};
    }
    std::size_t pivots = 0;
    std::vector<std::uint32_t> scratch;
    for (std::size_t j = 0; j < n; ++j) {
        if (options.stop_after_pivots && pivots >= *options.stop_after_pivots) break;
        auto& col = r.columns[j];
        if (!options.track_log && options.provably_zero && options.provably_zero(j)) {
            col.clear();
            r.processed = j + 1;
            continue;
        }
        while (!col.empty()) {
            const std::uint32_t low = col.back();
            if (low >= r.column_of_low.size())
                throw ArgumentError("boundary matrix row index out of range");
            auto owner = r.column_of_low[low];
            if (!owner) break;
            xor_into(col, r.columns[*owner], scratch);
            if (options.track_log) xor_into(r.log[j], r.log[*owner], scratch);
        }
        if (!col.empty()) {
            r.column_of_low[col.back()] = static_cast<std::uint32_t>(j);
            ++pivots;
        }
        r.processed = j + 1;
    }
    return r;
}

std::vector<PersistencePair> extract_pairs(const FilteredComplex& complex, int k, PairOptions options) {
    if (k < 0) throw ArgumentError("homology dimension must be >= 0");
    std::vector<PersistencePair> pairs;
    const BoundaryMatrix dk = boundary_matrix(complex, k);
    if (dk.column_count() == 0) return pairs;
    ReduceOptions log_opts;
    const Reduction rk = reduce(dk, log_opts);

    std::size_t positive = 0;
    for (const auto& col : rk.columns) positive += col.empty() ? 1 : 0;

    // Column j of the (k+1)-matrix with lowest one at row r kills the class
    // born at k-simplex r. Once every positive column is claimed, no later
    // column can have a lowest one, so the reduction may stop there.
    std::vector<std::optional<SimplexId>> killer(dk.column_count());
    if (k + 1 <= complex.max_dim()) {
        const BoundaryMatrix dk1 = boundary_matrix(complex, k + 1);
        ReduceOptions opts{.track_log = false, .stop_after_pivots = positive, .provably_zero = {}};
        if (complex.is_flag())
            opts.provably_zero = [&](std::size_t j) {
                return coned_by_earlier_facets(complex, dk1.column_simplices[j]);
            };
        const Reduction rk1 = reduce(dk1, opts);
        for (std::size_t row = 0; row < rk1.column_of_low.size(); ++row)
            if (rk1.column_of_low[row]) killer[row] = dk1.column_simplices[*rk1.column_of_low[row]];
    }

    for (std::size_t j = 0; j < dk.column_count(); ++j) {
        if (!rk.columns[j].empty()) continue;
        PersistencePair p;
        p.dim = k;
        p.birth_simplex = dk.column_simplices[j];
        p.birth = complex.weight(p.birth_simplex);
        if (killer[j]) {
            p.death_simplex = killer[j];
            p.death = complex.weight(*killer[j]);
        } else {
            p.essential = true;
            p.death = std::max(complex.max_scale(), p.birth);
        }
        if (!options.include_zero_persistence && p.death == p.birth) continue;
        p.representative.dim = k;
        for (std::uint32_t c : rk.log[j]) p.representative.simplices.push_back(dk.column_simplices[c]);
        std::sort(p.representative.simplices.begin(), p.representative.simplices.end());
        p.id = pairs.size();
        pairs.push_back(std::move(p));
    }
    return pairs;
}

const Chain& representative(const PersistencePair& pair) { return pair.representative; }

bool precedes(const PersistencePair& a, const PersistencePair& b) {
    if (a.dim != b.dim) throw ArgumentError("cannot order classes of different dimension");
    if (a.birth != b.birth) return a.birth < b.birth;
    return a.birth_simplex < b.birth_simplex;
}

}  // namespace cyclecent
