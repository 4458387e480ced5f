#include "cyclecent/io.hpp"

#include "cyclecent/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace cyclecent {

std::string format_number(double x) {
    char buf[40];
    for (int prec : {15, 16, 17}) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, x);
        if (std::strtod(buf, nullptr) == x) break;
    }
    return buf;
}

std::string Metadata::config_hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const auto& [k, v] : config)
        for (char c : k + "=" + v + "\n") {
            h ^= static_cast<unsigned char>(c);
            h *= 0x100000001b3ULL;
        }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void Metadata::set(std::string key, std::string value) {
    auto it = std::lower_bound(config.begin(), config.end(), key,
                               [](const auto& kv, const std::string& k) { return kv.first < k; });
    if (it != config.end() && it->first == key)
        it->second = std::move(value);
    else
        config.insert(it, {std::move(key), std::move(value)});
}

void write_metadata_comment(std::ostream& out, const Metadata& meta) {
    out << "# command=" << meta.command << '\n';
    out << "# version=" << meta.version << '\n';
    if (meta.seed) out << "# seed=" << *meta.seed << '\n';
    out << "# config_hash=" << meta.config_hash() << '\n';
    for (const auto& [k, v] : meta.config) out << "# " << k << '=' << v << '\n';
}

nlohmann::ordered_json metadata_json(const Metadata& meta) {
    nlohmann::ordered_json j;
    j["command"] = meta.command;
    j["version"] = meta.version;
    j["seed"] = meta.seed ? nlohmann::ordered_json(*meta.seed) : nlohmann::ordered_json(nullptr);
    j["config_hash"] = meta.config_hash();
    nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
    for (const auto& [k, v] : meta.config) cfg[k] = v;
    j["config"] = cfg;
    return j;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ArgumentError("cannot write " + path.string());
    return out;
}

void write_diagram_csv(std::ostream& out, const Metadata& meta, const std::vector<PersistencePair>& pairs) {
    write_metadata_comment(out, meta);
    out << "k,birth,death,essential\n";
    for (const auto& p : pairs)
        out << p.dim << ',' << format_number(p.birth) << ',' << format_number(p.death) << ','
            << (p.essential ? "true" : "false") << '\n';
}

nlohmann::ordered_json representatives_json(const Metadata& meta, const FilteredComplex& complex,
                                            const std::vector<PersistencePair>& pairs) {
    nlohmann::ordered_json j;
    j["metadata"] = metadata_json(meta);
    nlohmann::ordered_json reps = nlohmann::ordered_json::object();
    for (const auto& p : pairs) {
        nlohmann::ordered_json chain = nlohmann::ordered_json::array();
        for (SimplexId s : p.representative.simplices) {
            const auto v = complex.vertices(s);
            chain.push_back(std::vector<Vertex>(v.begin(), v.end()));
        }
        reps[std::to_string(p.id)] = chain;
    }
    j["representatives"] = reps;
    return j;
}

void write_complex_csv(std::ostream& out, const Metadata& meta, const FilteredComplex& complex) {
    write_metadata_comment(out, meta);
    out << "weight,dim,vertices\n";
    for (SimplexId id = 0; id < complex.size(); ++id) {
        out << format_number(complex.weight(id)) << ',' << complex.dim(id) << ',';
        const auto v = complex.vertices(id);
        for (std::size_t i = 0; i < v.size(); ++i) out << (i ? " " : "") << v[i];
        out << '\n';
    }
}

nlohmann::ordered_json curves_json(const Metadata& meta, const std::vector<CentralityCurve>& curves,
                                   const std::vector<double>& d_star) {
    nlohmann::ordered_json j;
    j["metadata"] = metadata_json(meta);
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < curves.size(); ++i) {
        const auto& c = curves[i];
        nlohmann::ordered_json o;
        o["id"] = c.class_id;
        o["birth"] = c.birth;
        o["death"] = c.death;
        nlohmann::ordered_json bps = nlohmann::ordered_json::array();
        for (const auto& k : c.knots) bps.push_back({k.x, k.value});
        o["breakpoints"] = bps;
        o["scaling"] = std::string(to_string(c.scaling));
        o["order"] = c.order;
        o["max_value"] = max_value(c);
        if (i < d_star.size()) o["d_star"] = d_star[i];
        arr.push_back(o);
    }
    j["curves"] = arr;
    return j;
}

void write_plot_csv(std::ostream& out, const Metadata& meta, const std::vector<CentralityCurve>& curves,
                    double x_end) {
    write_metadata_comment(out, meta);
    out << "id,epsilon,value\n";
    for (const auto& c : curves)
        for (const auto& [x, v] : polyline(c, x_end))
            out << c.class_id << ',' << format_number(x) << ',' << format_number(v) << '\n';
}

void write_svg(std::ostream& out, const std::vector<CentralityCurve>& curves, double x_end,
               const std::string& title) {
    const double w = 640, h = 400, margin = 50;
    double y_top = 0.0;
    for (const auto& c : curves) y_top = std::max(y_top, max_value(c));
    if (y_top <= 0.0) y_top = 1.0;
    if (x_end <= 0.0) x_end = 1.0;
    auto sx = [&](double x) { return margin + (w - 2 * margin) * x / x_end; };
    auto sy = [&](double y) { return h - margin - (h - 2 * margin) * y / y_top; };
    static const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << w / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << title << "</text>\n";
    out << "<line x1=\"" << margin << "\" y1=\"" << h - margin << "\" x2=\"" << w - margin << "\" y2=\""
        << h - margin << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\"" << h - margin
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << w - margin << "\" y=\"" << h - margin + 20 << "\" text-anchor=\"end\" font-size=\"12\">"
        << format_number(x_end) << "</text>\n";
    out << "<text x=\"" << margin - 5 << "\" y=\"" << margin << "\" text-anchor=\"end\" font-size=\"12\">"
        << format_number(y_top) << "</text>\n";
    for (std::size_t i = 0; i < curves.size(); ++i) {
        out << "<polyline fill=\"none\" stroke=\"" << palette[i % 10] << "\" points=\"";
        bool first = true;
        for (const auto& [x, v] : polyline(curves[i], x_end)) {
            out << (first ? "" : " ") << format_number(sx(x)) << ',' << format_number(sy(v));
            first = false;
        }
        out << "\"/>\n";
    }
    out << "</svg>\n";
}

nlohmann::ordered_json clusters_json(const Metadata& meta, const MergeClusters& clusters) {
    nlohmann::ordered_json j;
    j["metadata"] = metadata_json(meta);
    j["k"] = clusters.dim;
    nlohmann::ordered_json m = nlohmann::ordered_json::object();
    for (std::size_t id : clusters.ordering) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& mem : clusters.members(id)) arr.push_back({{"member", mem.id}, {"merge_time", mem.time}});
        m[std::to_string(id)] = arr;
    }
    j["clusters"] = m;
    auto ties = [](const std::vector<std::pair<std::size_t, std::size_t>>& v) {
        nlohmann::ordered_json a = nlohmann::ordered_json::array();
        for (const auto& [s, c] : v) a.push_back({s, c});
        return a;
    };
    j["equal_death_ties"] = ties(clusters.equal_death_ties);
    j["birth_death_ties"] = ties(clusters.birth_death_ties);
    return j;
}

nlohmann::ordered_json distance_json(const Metadata& meta, const DistanceResult& d) {
    nlohmann::ordered_json j;
    j["metadata"] = metadata_json(meta);
    j["p"] = std::isinf(d.p) ? nlohmann::ordered_json("inf") : nlohmann::ordered_json(d.p);
    j["value"] = d.value;
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& e : d.matching) {
        arr.push_back({{"a", e.a ? nlohmann::ordered_json(*e.a) : nlohmann::ordered_json(nullptr)},
                       {"b", e.b ? nlohmann::ordered_json(*e.b) : nlohmann::ordered_json(nullptr)},
                       {"cost", e.cost}});
    }
    j["matching"] = arr;
    return j;
}

void write_bound_report(std::ostream& out, const Metadata& meta, const BoundReport& report) {
    write_metadata_comment(out, meta);
    out << "inequality\tlhs\trhs\tpass\n";
    for (const auto& l : report.lines)
        out << l.inequality << '\t' << format_number(l.lhs) << '\t' << format_number(l.rhs) << '\t'
            << (l.pass ? "true" : "false") << '\n';
}

nlohmann::ordered_json signal_json(const Metadata& meta, const SignalReport& r) {
    nlohmann::ordered_json j;
    j["metadata"] = metadata_json(meta);
    j["alpha"] = r.alpha;
    j["A"] = r.A;
    j["dgm_size"] = r.tested;
    j["dgm_size_counts_after_drops"] = true;
    j["threshold"] = r.threshold;
    j["dropped_nonpositive_birth"] = r.dropped_nonpositive_birth;
    j["dropped_ratio_at_most_one"] = r.dropped_small_ratio;
    nlohmann::ordered_json pts = nlohmann::ordered_json::array();
    for (const auto& p : r.points)
        pts.push_back({{"id", p.index}, {"pi", p.pi}, {"loglog_pi", p.loglog}, {"l", p.l},
                       {"p_value", p.p_value}, {"signal", p.signal}});
    j["points"] = pts;
    j["signal_ids"] = r.signal_indices;
    return j;
}

void write_bootstrap_csv(std::ostream& out, const Metadata& meta, const BootstrapStats& s) {
    write_metadata_comment(out, meta);
    out << "# sample_size=" << s.sample_size << '\n';
    out << "# mean=" << format_number(s.mean) << '\n';
    out << "# se=" << format_number(s.se) << (s.se_undefined ? " (undefined: single replicate)" : "") << '\n';
    out << "# ci95=" << format_number(s.ci_low) << ',' << format_number(s.ci_high) << '\n';
    out << "rep,holes\n";
    for (std::size_t i = 0; i < s.counts.size(); ++i) out << i << ',' << s.counts[i] << '\n';
}

void write_threshold_csv(std::ostream& out, const Metadata& meta, const ThresholdTable& t) {
    write_metadata_comment(out, meta);
    out << "i,persistence,centrality\n";
    for (std::size_t r = 0; r < t.grid.size(); ++r)
        out << format_number(t.grid[r]) << ',' << t.persistence[r] << ',' << t.centrality[r] << '\n';
}

void write_points_csv(std::ostream& out, const Metadata& meta, const PointCloud& cloud) {
    write_metadata_comment(out, meta);
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const auto p = cloud.point(i);
        for (std::size_t c = 0; c < p.size(); ++c) out << (c ? "," : "") << format_number(p[c]);
        out << '\n';
    }
}

void write_json(std::ostream& out, const nlohmann::ordered_json& j) { out << j.dump(2) << '\n'; }

}  // namespace cyclecent
