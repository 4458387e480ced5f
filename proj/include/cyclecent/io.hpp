#pragma once

#include "cyclecent/analysis.hpp"
#include "cyclecent/signal.hpp"

#include "json.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace cyclecent {

/// Shortest round-trip decimal form ("%.17g" trimmed when a shorter form
/// reads back identically).
std::string format_number(double x);

/// Provenance written at the top of every output file.
struct Metadata {
    std::string command;
    std::string version = CYCLECENT_VERSION;
    std::optional<std::uint64_t> seed;
    std::vector<std::pair<std::string, std::string>> config;  // sorted by key

    /// FNV-1a 64 of the canonical "key=value\n" listing, as 16 hex digits.
    std::string config_hash() const;
    void set(std::string key, std::string value);
};

/// Writes "# key=value" comment lines.
void write_metadata_comment(std::ostream& out, const Metadata& meta);
nlohmann::ordered_json metadata_json(const Metadata& meta);

/// Opens `path` for binary writing, creating parent directories. Throws
/// ArgumentError when that fails.
std::ofstream open_output(const std::filesystem::path& path);

void write_diagram_csv(std::ostream& out, const Metadata& meta, const std::vector<PersistencePair>& pairs);
nlohmann::ordered_json representatives_json(const Metadata& meta, const FilteredComplex& complex,
                                            const std::vector<PersistencePair>& pairs);
void write_complex_csv(std::ostream& out, const Metadata& meta, const FilteredComplex& complex);

nlohmann::ordered_json curves_json(const Metadata& meta, const std::vector<CentralityCurve>& curves,
                                   const std::vector<double>& d_star);
/// Rows id,epsilon,value: the drawing polyline of each curve on [0, x_end].
void write_plot_csv(std::ostream& out, const Metadata& meta, const std::vector<CentralityCurve>& curves,
                    double x_end);
/// Line plot of all curves; jumps are vertical segments.
void write_svg(std::ostream& out, const std::vector<CentralityCurve>& curves, double x_end,
               const std::string& title);
nlohmann::ordered_json clusters_json(const Metadata& meta, const MergeClusters& clusters);

nlohmann::ordered_json distance_json(const Metadata& meta, const DistanceResult& d);
/// Tab separated: inequality, lhs, rhs, pass.
void write_bound_report(std::ostream& out, const Metadata& meta, const BoundReport& report);

nlohmann::ordered_json signal_json(const Metadata& meta, const SignalReport& report);
void write_bootstrap_csv(std::ostream& out, const Metadata& meta, const BootstrapStats& stats);
void write_threshold_csv(std::ostream& out, const Metadata& meta, const ThresholdTable& table);
void write_points_csv(std::ostream& out, const Metadata& meta, const PointCloud& cloud);

void write_json(std::ostream& out, const nlohmann::ordered_json& j);

}  // namespace cyclecent
