#include "commands.hpp"

#include "cyclecent/analysis.hpp"
#include "cyclecent/error.hpp"
#include "cyclecent/io.hpp"
#include "cyclecent/signal.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>

namespace cyclecent::cli {

namespace fs = std::filesystem;

namespace {

struct RunConfig {
    std::string command;
    std::string input;
    std::string other;
    int max_dim = 2;
    std::optional<double> max_scale;
    int k = 1;
    std::string p = "1";
    std::string scaling;
    int order = 0;
    std::string function;
    double alpha = 0.05;
    double A = 1.0;
    std::vector<double> kappa;
    std::size_t reps = 0;
    double fraction = 0.8;
    std::optional<std::uint64_t> seed;
    std::string out = ".";
    std::string shape = "sierpinski";
    std::size_t n = 1000;
    bool include_zero = false;
    bool no_geodesic = false;
    bool dump_complex = false;
};

double parse_p(const std::string& s) {
    if (s == "inf" || s == "infinity") return infinity_p;
    char* end = nullptr;
    const double p = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0' || !(p >= 1.0))
        throw Error(ErrorKind::usage, "--p must be a number >= 1 or 'inf'");
    return p;
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("CYCLECENT_SEED")) {
        char* end = nullptr;
        const auto v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0') return v;
        throw Error(ErrorKind::usage, "CYCLECENT_SEED must be a nonnegative integer");
    }
    return 0;
}

std::string num(double x) { return format_number(x); }

// Resolves --function / --order / --scaling into one (order, scaling).
void resolve_function(const RunConfig& c, int default_order, ScalingKind default_scaling, int& order,
                      ScalingKind& scaling) {
    order = default_order;
    scaling = default_scaling;
    if (!c.function.empty()) {
        const std::string f = c.function;
        if (f == "J1") order = 1;
        else if (f == "J2") order = 2;
        else if (f == "J3") order = 3;
        else if (f == "J4") order = 3, scaling = ScalingKind::unit;
        else if (f == "J5") order = 3, scaling = ScalingKind::late;
        else if (f == "J6") order = 3, scaling = ScalingKind::early;
        else throw Error(ErrorKind::usage, "--function must be one of J1..J6");
    }
    if (c.order != 0) order = c.order;
    if (!c.scaling.empty()) scaling = parse_scaling(c.scaling);
}

class Runner {
public:
    explicit Runner(RunConfig c) : c_(std::move(c)) {
        meta_.command = c_.command;
        meta_.seed = c_.seed ? *c_.seed : default_seed();
    }

    int dispatch() {
        const auto& cmd = c_.command;
        if (cmd == "persist") persist();
        else if (cmd == "centrality") centrality();
        else if (cmd == "distance") distance();
        else if (cmd == "stability") stability();
        else if (cmd == "signal") signal();
        else if (cmd == "bootstrap") bootstrap();
        else if (cmd == "thresholds") thresholds();
        else if (cmd == "sample") sample();
        else if (cmd == "perturb") perturb_cmd();
        else throw Error(ErrorKind::usage, "unknown command " + cmd);
        return 0;
    }

private:
    std::uint64_t seed() const { return *meta_.seed; }

    PointCloud input() {
        if (c_.input.empty()) throw Error(ErrorKind::usage, "--input is required");
        meta_.set("input", c_.input);
        return load_points(c_.input);
    }

    fs::path out(const std::string& name) const { return fs::path(c_.out) / name; }

    void filtration_meta() {
        if (c_.k < 0) throw Error(ErrorKind::usage, "--k must be >= 0");
        meta_.set("k", std::to_string(c_.k));
        meta_.set("max_dim", std::to_string(c_.max_dim));
        meta_.set("max_scale", c_.max_scale ? num(*c_.max_scale) : "default");
    }

    AnalysisConfig analysis_config(int default_order, ScalingKind default_scaling) {
        filtration_meta();
        AnalysisConfig a;
        a.k = c_.k;
        a.max_dim = c_.max_dim;
        a.max_scale = c_.max_scale;
        a.geodesic = !c_.no_geodesic;
        resolve_function(c_, default_order, default_scaling, a.order, a.scaling);
        meta_.set("order", std::to_string(a.order));
        meta_.set("scaling", std::string(to_string(a.scaling)));
        meta_.set("function", centrality_name(a.order, a.scaling));
        meta_.set("geodesic", a.geodesic ? "true" : "false");
        return a;
    }

    void persist() {
        const PointCloud cloud = input();
        filtration_meta();
        meta_.set("include_zero_persistence", c_.include_zero ? "true" : "false");
        const auto complex = rips_filtration(pairwise_distances(cloud), c_.max_dim, c_.max_scale);
        auto pairs = extract_pairs(complex, c_.k, {.include_zero_persistence = c_.include_zero});
        sort_for_clusters(pairs);
        auto d = open_output(out("diagram.csv"));
        write_diagram_csv(d, meta_, pairs);
        auto r = open_output(out("representatives.json"));
        write_json(r, representatives_json(meta_, complex, pairs));
        if (c_.dump_complex) {
            auto x = open_output(out("complex.csv"));
            write_complex_csv(x, meta_, complex);
        }
        std::cout << pairs.size() << " pairs in dimension " << c_.k << '\n';
    }

    void centrality() {
        const PointCloud cloud = input();
        const AnalysisConfig a = analysis_config(3, ScalingKind::unit);
        const Analysis an = analyze(cloud, a);
        double x_end = 0.0;
        for (const auto& c : an.curves)
            if (!c.knots.empty()) x_end = std::max(x_end, c.knots.back().x);
        x_end = x_end > 0.0 ? x_end * 1.05 : 1.0;
        auto j = open_output(out("curves.json"));
        write_json(j, curves_json(meta_, an.curves, an.d_star));
        auto p = open_output(out("plot.csv"));
        write_plot_csv(p, meta_, an.curves, x_end);
        auto s = open_output(out("centrality.svg"));
        write_svg(s, an.curves, x_end,
                  centrality_name(a.order, a.scaling) + " (" + std::string(to_string(a.scaling)) +
                      ") centrality, dimension " + std::to_string(a.k));
        auto m = open_output(out("clusters.json"));
        write_json(m, clusters_json(meta_, an.clusters));
        std::cout << an.curves.size() << " curves, " << centrality_name(a.order, a.scaling) << " scaling "
                  << to_string(a.scaling) << '\n';
    }

    void distance() {
        const PointCloud first = input();
        if (c_.other.empty()) throw Error(ErrorKind::usage, "--other is required");
        meta_.set("other", c_.other);
        const PointCloud second = load_points(c_.other);
        const double p = parse_p(c_.p);
        meta_.set("p", c_.p);
        const AnalysisConfig a = analysis_config(3, ScalingKind::unit);
        const Analysis x = analyze(first, a);
        const Analysis y = analyze(second, a);
        DistanceResult d;
        if (std::isinf(p)) {
            d.p = p;
            d.value = centrality_distance_inf(x.curves, y.curves);
        } else {
            d = centrality_distance(make_collection(x.curves, x.d_star, p), make_collection(y.curves, y.d_star, p));
        }
        auto j = open_output(out("distance.json"));
        write_json(j, distance_json(meta_, d));
        if (first.size() == second.size()) {
            const auto report = verify_bounds(p, d.value, to_diagram(x.pairs), to_diagram(y.pairs),
                                              weight_discrepancy(x.distances, y.distances),
                                              constants(x.pairs, y.pairs, x.clusters, y.clusters));
            auto b = open_output(out("bounds.tsv"));
            write_bound_report(b, meta_, report);
        } else {
            std::cerr << "point counts differ; bound report skipped\n";
        }
        std::cout << "distance " << num(d.value) << '\n';
    }

    void stability() {
        PointCloud cloud;
        if (c_.input.empty()) {
            cloud = sample_two_annuli(60, seed());
            meta_.set("input", "two-annuli:60");
        } else {
            cloud = input();
        }
        StabilityConfig sc;
        sc.analysis = analysis_config(3, ScalingKind::unit);
        if (!c_.kappa.empty()) sc.kappas = c_.kappa;
        sc.reps = c_.reps ? c_.reps : 30;
        sc.p = parse_p(c_.p);
        sc.seed = seed();
        std::string ks;
        for (double k : sc.kappas) ks += (ks.empty() ? "" : " ") + num(k);
        meta_.set("kappa", ks);
        meta_.set("reps", std::to_string(sc.reps));
        meta_.set("p", c_.p);
        const auto rows = stability_experiment(cloud, sc);

        auto d = open_output(out("distances.csv"));
        write_metadata_comment(d, meta_);
        d << "kappa,rep,distance,bottleneck,weight_gap,K,q,q_prime\n";
        auto g = open_output(out("bound_gaps.csv"));
        write_metadata_comment(g, meta_);
        g << "kappa,rep,inequality,lhs,rhs,gap,pass\n";
        std::size_t failed = 0;
        for (const auto& r : rows) {
            const auto& rep = r.report;
            d << num(r.kappa) << ',' << r.rep << ',' << num(rep.distance) << ',' << num(rep.bottleneck) << ','
              << num(rep.weight_gap) << ',' << num(rep.constants.K) << ',' << rep.constants.q << ','
              << rep.constants.q_prime << '\n';
            for (const auto& l : rep.lines)
                g << num(r.kappa) << ',' << r.rep << ',' << l.inequality << ',' << num(l.lhs) << ',' << num(l.rhs)
                  << ',' << num(l.rhs - l.lhs) << ',' << (l.pass ? "true" : "false") << '\n';
            failed += rep.all_pass() ? 0 : 1;
        }
        std::cout << rows.size() << " runs, " << failed << " with a violated bound\n";
    }

    SignalReport signal_of(const PointCloud& cloud) {
        check_signal_args();
        const auto complex = rips_filtration(pairwise_distances(cloud), c_.max_dim, c_.max_scale);
        const auto pairs = extract_pairs(complex, c_.k);
        return extract_signal(pairs, c_.alpha, c_.A);
    }

    void check_signal_args() {
        if (c_.A != 1.0 && c_.A != 0.5) throw Error(ErrorKind::usage, "--A must be 1 or 0.5");
        if (!(c_.alpha > 0.0 && c_.alpha < 1.0)) throw Error(ErrorKind::usage, "--alpha must lie in (0, 1)");
        meta_.set("alpha", num(c_.alpha));
        meta_.set("A", num(c_.A));
        filtration_meta();
    }

    void signal() {
        const PointCloud cloud = input();
        const auto report = signal_of(cloud);
        auto j = open_output(out("signal.json"));
        write_json(j, signal_json(meta_, report));
        std::cout << report.signal_indices.size() << " signal points of " << report.tested << '\n';
    }

    void bootstrap() {
        const PointCloud cloud = input();
        check_signal_args();
        BootstrapConfig bc;
        bc.reps = c_.reps ? c_.reps : 100;
        bc.fraction = c_.fraction;
        bc.alpha = c_.alpha;
        bc.A = c_.A;
        bc.k = c_.k;
        bc.max_dim = c_.max_dim;
        bc.max_scale = c_.max_scale;
        bc.seed = seed();
        meta_.set("reps", std::to_string(bc.reps));
        meta_.set("fraction", num(bc.fraction));
        const auto stats = bootstrap_hole_stats(cloud, bc);
        auto f = open_output(out("bootstrap.csv"));
        write_bootstrap_csv(f, meta_, stats);
        std::cout << "mean " << num(stats.mean) << " se " << num(stats.se) << " ci95 (" << num(stats.ci_low) << ", "
                  << num(stats.ci_high) << ")\n";
    }

    void thresholds() {
        const PointCloud cloud = input();
        const AnalysisConfig a = analysis_config(3, ScalingKind::late);
        const Analysis an = analyze(cloud, a);
        if (an.pairs.empty()) throw DegenerateError("no classes of positive persistence");
        auto f = open_output(out("thresholds.csv"));
        write_threshold_csv(f, meta_, threshold_table(an, default_threshold_grid()));
        std::cout << an.pairs.size() << " classes\n";
    }

    void sample() {
        meta_.set("shape", c_.shape);
        meta_.set("n", std::to_string(c_.n));
        PointCloud cloud;
        if (c_.shape == "sierpinski") cloud = sample_sierpinski(c_.n, seed());
        else if (c_.shape == "fern") cloud = sample_fern(c_.n, seed());
        else if (c_.shape == "two-annuli") cloud = sample_two_annuli(c_.n, seed());
        else throw Error(ErrorKind::usage, "--shape must be sierpinski, fern or two-annuli");
        auto f = open_output(out("sample.csv"));
        write_points_csv(f, meta_, cloud);
        std::cout << cloud.size() << " points\n";
    }

    void perturb_cmd() {
        const PointCloud cloud = input();
        if (c_.kappa.size() != 1) throw Error(ErrorKind::usage, "perturb needs exactly one --kappa");
        meta_.set("kappa", num(c_.kappa[0]));
        auto f = open_output(out("perturbed.csv"));
        write_points_csv(f, meta_, perturb(cloud, c_.kappa[0], seed()));
        std::cout << cloud.size() << " points\n";
    }

    RunConfig c_;
    Metadata meta_;
};

int exit_code(ErrorKind k) {
    switch (k) {
        case ErrorKind::usage:
        case ErrorKind::argument:
        case ErrorKind::lookup: return 2;
        case ErrorKind::format:
        case ErrorKind::empty_input: return 3;
        case ErrorKind::degenerate:
        case ErrorKind::undefined: return 4;
        case ErrorKind::internal: return 1;
    }
    return 1;
}

void add_common(CLI::App* sub, RunConfig& c) {
    sub->add_option("--input", c.input, "Point CSV");
    sub->add_option("--max-dim", c.max_dim, "Largest simplex dimension")->check(CLI::Range(1, 64));
    sub->add_option("--max-scale", c.max_scale, "Largest filtration value (epsilon units)");
    sub->add_option("--k", c.k, "Homology dimension");
    sub->add_option("--seed", c.seed, "Random seed (default: $CYCLECENT_SEED or 0)");
    sub->add_option("--out", c.out, "Output directory");
}

void add_centrality(CLI::App* sub, RunConfig& c) {
    sub->add_option("--order", c.order, "Centrality order n of J_n")->check(CLI::Range(1, 3));
    sub->add_option("--scaling", c.scaling, "unit, early or late")
        ->check(CLI::IsMember({"unit", "early", "late"}));
    sub->add_option("--function", c.function, "J1..J6 (J4/J5/J6 = J3 with unit/late/early)")
        ->check(CLI::IsMember({"J1", "J2", "J3", "J4", "J5", "J6"}));
    sub->add_flag("--no-geodesic", c.no_geodesic, "Integrate norms up to the death");
}

void add_signal(CLI::App* sub, RunConfig& c) {
    sub->add_option("--alpha", c.alpha, "Significance level");
    sub->add_option("--A", c.A, "Filtration constant: 1 (Rips) or 0.5");
}

}  // namespace

int run(const std::vector<std::string>& args) {
    RunConfig c;
    CLI::App app{"Persistent homology with cycle representatives and cycle centrality", "cyclecent"};
    app.set_version_flag("--version", CYCLECENT_VERSION);
    app.require_subcommand(1);

    auto* persist = app.add_subcommand("persist", "Persistence diagram and representatives");
    add_common(persist, c);
    persist->add_flag("--include-zero", c.include_zero, "Keep zero-persistence pairs");
    persist->add_flag("--dump-complex", c.dump_complex, "Also write complex.csv");

    auto* centrality = app.add_subcommand("centrality", "Centrality curves, plot data and merge clusters");
    add_common(centrality, c);
    add_centrality(centrality, c);

    auto* distance = app.add_subcommand("distance", "p-centrality distance between two clouds");
    add_common(distance, c);
    add_centrality(distance, c);
    distance->add_option("--other", c.other, "Second point CSV");
    distance->add_option("--p", c.p, "p >= 1 or inf");

    auto* stability = app.add_subcommand("stability", "Perturbation study with bound verification");
    add_common(stability, c);
    add_centrality(stability, c);
    stability->add_option("--kappa", c.kappa, "Perturbation levels")->delimiter(',');
    stability->add_option("--reps", c.reps, "Replicates per level (default 30)");
    stability->add_option("--p", c.p, "p >= 1 or inf");

    auto* signal = app.add_subcommand("signal", "Signal points of a diagram");
    add_common(signal, c);
    add_signal(signal, c);

    auto* bootstrap = app.add_subcommand("bootstrap", "Bootstrap count of signal holes");
    add_common(bootstrap, c);
    add_signal(bootstrap, c);
    bootstrap->add_option("--reps", c.reps, "Replicates (default 100)");
    bootstrap->add_option("--fraction", c.fraction, "Sample fraction in (0, 1]");

    auto* thresholds = app.add_subcommand("thresholds", "Hole counts above fractions of the maximum");
    add_common(thresholds, c);
    add_centrality(thresholds, c);

    auto* sample = app.add_subcommand("sample", "Sample a point cloud");
    add_common(sample, c);
    sample->add_option("--shape", c.shape, "sierpinski, fern or two-annuli");
    sample->add_option("--n", c.n, "Number of points");

    auto* perturb = app.add_subcommand("perturb", "Uniformly perturb a point cloud");
    add_common(perturb, c);
    perturb->add_option("--kappa", c.kappa, "Perturbation level");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        if (!rev.empty()) rev.pop_back();  // program name
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    c.command = app.get_subcommands().front()->get_name();

    try {
        return Runner(std::move(c)).dispatch();
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace cyclecent::cli
