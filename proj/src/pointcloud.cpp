#include "cyclecent/pointcloud.hpp"

#include "cyclecent/error.hpp"
#include "cyclecent/rng.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

namespace cyclecent {

PointCloud::PointCloud(std::size_t dimension, std::vector<double> coords)
    : dimension_(dimension), coords_(std::move(coords)) {
    if (dimension_ == 0) throw ArgumentError("point cloud dimension must be positive");
    if (coords_.size() % dimension_ != 0)
        throw ArgumentError("coordinate count is not a multiple of the dimension");
    for (double c : coords_)
        if (!std::isfinite(c)) throw ArgumentError("point cloud coordinates must be finite");
}

void PointCloud::push_back(std::span<const double> p) {
    if (dimension_ == 0 && coords_.empty()) dimension_ = p.size();
    if (p.size() != dimension_ || dimension_ == 0)
        throw ArgumentError("point has wrong arity");
    for (double c : p)
        if (!std::isfinite(c)) throw ArgumentError("point cloud coordinates must be finite");
    coords_.insert(coords_.end(), p.begin(), p.end());
}

DistanceMatrix::DistanceMatrix(std::size_t n, std::vector<double> entries)
    : n_(n), entries_(std::move(entries)) {
    if (entries_.size() != n_ * n_) throw ArgumentError("distance matrix has wrong size");
    for (std::size_t i = 0; i < n_; ++i) {
        if ((*this)(i, i) != 0.0) throw ArgumentError("distance matrix diagonal must be zero");
        for (std::size_t j = 0; j < n_; ++j) {
            double d = (*this)(i, j);
            if (!(d >= 0.0) || !std::isfinite(d))
                throw ArgumentError("distance matrix entries must be finite and nonnegative");
            if (d != (*this)(j, i)) throw ArgumentError("distance matrix must be symmetric");
        }
    }
}

double DistanceMatrix::max_entry() const noexcept {
    double m = 0.0;
    for (double d : entries_) m = std::max(m, d);
    return m;
}

double DistanceMatrix::enclosing_radius() const noexcept {
    if (n_ <= 1) return 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n_; ++i) {
        auto r = row(i);
        best = std::min(best, *std::max_element(r.begin(), r.end()));
    }
    return best;
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

double parse_number(std::string_view field, std::size_t line) {
    field = trim(field);
    if (!field.empty() && field.front() == '+') field.remove_prefix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (field.empty() || ec != std::errc() || ptr != field.data() + field.size() || !std::isfinite(v))
        throw FormatError("line " + std::to_string(line) + ": not a finite number: '" +
                          std::string(field) + "'");
    return v;
}

}  // namespace

PointCloud parse_points(std::string_view text) {
    std::vector<double> coords;
    std::size_t arity = 0;
    std::size_t line_no = 0;
    while (!text.empty()) {
        auto nl = text.find('\n');
        std::string_view line = trim(text.substr(0, nl));
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (line.empty() || line.front() == '#') continue;

        std::size_t fields = 0;
        while (true) {
            auto comma = line.find(',');
            coords.push_back(parse_number(line.substr(0, comma), line_no));
            ++fields;
            if (comma == std::string_view::npos) break;
            line.remove_prefix(comma + 1);
        }
        if (arity == 0) {
            arity = fields;
        } else if (fields != arity) {
            throw FormatError("line " + std::to_string(line_no) + ": expected " +
                              std::to_string(arity) + " fields, found " + std::to_string(fields));
        }
    }
    if (arity == 0) throw EmptyInputError("no points in input");
    return PointCloud(arity, std::move(coords));
}

PointCloud load_points(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ArgumentError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_points(buf.str());
}

void save_points(const PointCloud& cloud, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ArgumentError("cannot write " + path.string());
    char num[32];
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        auto p = cloud.point(i);
        for (std::size_t c = 0; c < p.size(); ++c) {
            std::snprintf(num, sizeof num, "%.17g", p[c]);
            out << (c ? "," : "") << num;
        }
        out << '\n';
    }
}

DistanceMatrix pairwise_distances(const PointCloud& cloud) {
    const std::size_t n = cloud.size();
    if (n == 0) throw EmptyInputError("cannot compute distances of an empty cloud");
    std::vector<double> d(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        auto p = cloud.point(i);
        for (std::size_t j = i + 1; j < n; ++j) {
            auto q = cloud.point(j);
            double s = 0.0;
            for (std::size_t c = 0; c < p.size(); ++c) s += (p[c] - q[c]) * (p[c] - q[c]);
            d[i * n + j] = d[j * n + i] = std::sqrt(s);
        }
    }
    return DistanceMatrix(n, std::move(d));
}

PointCloud perturb(const PointCloud& cloud, double kappa, std::uint64_t seed) {
    if (!(kappa >= 0.0) || !std::isfinite(kappa)) throw ArgumentError("kappa must be >= 0");
    if (kappa == 0.0 || cloud.empty()) return cloud;
    auto gen = derived_stream(seed, "perturb");
    std::vector<double> coords(cloud.coords().begin(), cloud.coords().end());
    for (double& c : coords) c += kappa * (2.0 * uniform01(gen) - 1.0);
    return PointCloud(cloud.dimension(), std::move(coords));
}

PointCloud sample_sierpinski(std::size_t n, std::uint64_t seed) {
    static constexpr double anchors[3][2] = {
        {0.0, 0.0}, {1.0, 0.0}, {0.5, 0.86602540378443864676}};
    auto gen = derived_stream(seed, "sierpinski");
    const auto& start = anchors[uniform_index(gen, 3)];
    double x = start[0], y = start[1];
    std::vector<double> coords;
    coords.reserve(2 * n);
    for (std::size_t it = 0; it < n + 100; ++it) {
        const auto& a = anchors[uniform_index(gen, 3)];
        x = 0.5 * (x + a[0]);
        y = 0.5 * (y + a[1]);
        if (it >= 100) {
            coords.push_back(x);
            coords.push_back(y);
        }
    }
    if (n == 0) return {};
    return PointCloud(2, std::move(coords));
}

PointCloud sample_fern(std::size_t n, std::uint64_t seed) {
    struct Map {
        double a, b, c, d, e, f, cumulative;
    };
    static constexpr Map maps[4] = {
        {0.00, 0.00, 0.00, 0.16, 0.0, 0.00, 0.01},
        {0.85, 0.04, -0.04, 0.85, 0.0, 1.60, 0.86},
        {0.20, -0.26, 0.23, 0.22, 0.0, 1.60, 0.93},
        {-0.15, 0.28, 0.26, 0.24, 0.0, 0.44, 1.00},
    };
    auto gen = derived_stream(seed, "fern");
    double x = 0.0, y = 0.0;
    std::vector<double> coords;
    coords.reserve(2 * n);
    for (std::size_t it = 0; it < n + 100; ++it) {
        double u = uniform01(gen);
        const Map* m = &maps[3];
        for (const auto& cand : maps)
            if (u < cand.cumulative) {
                m = &cand;
                break;
            }
        double nx = m->a * x + m->b * y + m->e;
        double ny = m->c * x + m->d * y + m->f;
        x = nx;
        y = ny;
        if (it >= 100) {
            coords.push_back(x);
            coords.push_back(y);
        }
    }
    if (n == 0) return {};
    return PointCloud(2, std::move(coords));
}

PointCloud bootstrap_sample(const PointCloud& cloud, double fraction, std::uint64_t seed,
                            std::uint64_t replicate) {
    if (!(fraction > 0.0 && fraction <= 1.0)) throw ArgumentError("fraction must lie in (0, 1]");
    if (cloud.empty()) throw EmptyInputError("cannot resample an empty cloud");
    // The 1e-9 slack keeps products like 0.29 * 100 from flooring to 28.
    auto m = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(cloud.size()) + 1e-9));
    auto gen = derived_stream(seed, "bootstrap", replicate);
    PointCloud out;
    std::vector<double> coords;
    coords.reserve(m * cloud.dimension());
    for (std::size_t i = 0; i < m; ++i) {
        auto p = cloud.point(uniform_index(gen, cloud.size()));
        coords.insert(coords.end(), p.begin(), p.end());
    }
    if (m == 0) return {};
    return PointCloud(cloud.dimension(), std::move(coords));
}

PointCloud sample_two_annuli(std::size_t n, std::uint64_t seed, double radius, double width) {
    if (!(radius > 0.0) || !(width >= 0.0) || width >= 2.0 * radius)
        throw ArgumentError("annulus needs radius > 0 and 0 <= width < 2 * radius");
    auto gen = derived_stream(seed, "two-annuli");
    const double r_in = radius - width / 2.0, r_out = radius + width / 2.0;
    std::vector<double> coords;
    coords.reserve(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        double cx = (i % 2 == 0) ? -radius : radius;
        double theta = 2.0 * std::numbers::pi * uniform01(gen);
        double r = std::sqrt(r_in * r_in + uniform01(gen) * (r_out * r_out - r_in * r_in));
        coords.push_back(cx + r * std::cos(theta));
        coords.push_back(r * std::sin(theta));
    }
    if (n == 0) return {};
    return PointCloud(2, std::move(coords));
}

}  // namespace cyclecent
