#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "auricle/analysis/contour.hpp"
#include "auricle/analysis/dataset.hpp"
#include "auricle/analysis/exercise.hpp"
#include "auricle/analysis/pipeline.hpp"
#include "auricle/electrode/array_design.hpp"
#include "auricle/geometry/ap_placement.hpp"
#include "auricle/geometry/mesh_io.hpp"
#include "auricle/io/json.hpp"

namespace {

using namespace auricle;
using io::json;

constexpr int exit_ok = 0;
constexpr int exit_input = 1;
constexpr int exit_partial = 2;

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::io, "cannot open " + path);
    const std::string bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return hex64(fnv1a64(bytes));
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::io, "cannot write " + path);
    out << text;
    if (!out) fail(ErrorCode::io, "failed writing " + path);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::pair<std::size_t, std::size_t> parse_k_range(const std::string& s) {
    const auto parts = split(s, ':');
    if (parts.size() != 2) fail(ErrorCode::parameter, "--k-range must look like MIN:MAX");
    const auto lo = parse_int(parts[0]), hi = parse_int(parts[1]);
    if (!lo || !hi || *lo < 1 || *hi < *lo) fail(ErrorCode::parameter, "--k-range must look like MIN:MAX with 1 <= MIN <= MAX");
    return {std::size_t(*lo), std::size_t(*hi)};
}

std::vector<TemplatePoint> load_template(const std::string& source) {
    if (source == "builtin:10") return default_template(10);
    if (source == "builtin:13") return default_template(13);
    return load_ap_template(source);
}

// ---- design ----------------------------------------------------------------

struct DesignArgs {
    std::string mesh, layout, out = "design.json";
    double target_area = default_target_area_mm2;
    double tilt = 0.0;
    double tolerance = 1e-3;
    std::uint64_t seed = 0;
};

int run_design(const DesignArgs& a) {
    const auto mesh = load_mesh(a.mesh);
    const auto aps = place_aps(mesh, load_template(a.layout));
    DesignOptions opts;
    opts.tolerance = a.tolerance;
    if (a.tilt != 0.0) opts.tilt = TiltPolicy::fixed(a.tilt);
    const auto design = design_array(mesh, aps, a.target_area, opts);

    const json config{{"command", "design"},
                      {"mesh", file_digest(a.mesh)},
                      {"template", a.layout.rfind("builtin:", 0) == 0 ? a.layout : file_digest(a.layout)},
                      {"target_area_mm2", a.target_area},
                      {"tilt_deg", a.tilt},
                      {"tolerance", a.tolerance}};
    json doc = io::to_json(design);
    doc["config"] = config;
    doc["config_digest"] = io::config_digest(config);
    doc["seed"] = a.seed;
    write_text(a.out, dump(doc));

    double dmin = 0.0, dmax = 0.0;
    for (std::size_t i = 0; i < design.electrodes.size(); ++i) {
        const double d = design.electrodes[i].diameter_mm;
        dmin = i ? std::min(dmin, d) : d;
        dmax = i ? std::max(dmax, d) : d;
    }
    std::cout << "design: " << design.electrodes.size() << "/" << aps.size() << " electrodes, D "
              << format_double(dmin) << ".." << format_double(dmax) << " mm, spread "
              << format_double(design.area_spread()) << " -> " << a.out << "\n";
    for (const auto& f : design.failed) std::cerr << "failed " << f.ap_label << ": " << f.reason << "\n";
    return design.complete() ? exit_ok : exit_partial;
}

// ---- simulate --------------------------------------------------------------

struct SimulateArgs {
    std::string kind, config, out;
    std::uint64_t seed = 0;
};

int run_simulate(const SimulateArgs& a) {
    const json raw = io::read_json_file(a.config);
    if (a.kind == "cohort") {
        const auto cfg = io::cohort_config_from_json(raw);
        const json canonical = io::to_json(cfg);
        const auto cohort = simulate_cohort(cfg, a.seed);
        std::ostringstream csv;
        write_dataset_csv(csv, cohort_matrix(cohort),
                          {"config_digest=" + io::config_digest(canonical) + " seed=" + std::to_string(a.seed)});
        const std::string out = a.out.empty() ? "cohort.csv" : a.out;
        write_text(out, csv.str());
        std::cout << "simulate cohort: " << cohort.rows.size() << " ears, concordance "
                  << format_double(cohort.concordance) << " -> " << out << "\n";
        return exit_ok;
    }
    const auto cfg = io::session_config_from_json(raw);
    const json canonical = io::to_json(cfg);
    const auto sessions = io::simulate_sessions(cfg, a.seed);
    const json doc{{"config", canonical},
                   {"config_digest", io::config_digest(canonical)},
                   {"seed", a.seed},
                   {"records", io::to_json(sessions)}};
    const std::string out = a.out.empty() ? "sessions.json" : a.out;
    write_text(out, dump(doc));
    std::cout << "simulate session: " << sessions.size() << " sessions, " << 4 * sessions.size() << " records -> "
              << out << "\n";
    return exit_ok;
}

// ---- analyze ---------------------------------------------------------------

struct AnalyzeArgs {
    std::string dataset, out = "report.json", k_range = "2:8", normalize = "spatial";
    std::size_t restarts = 10;
    std::size_t permutations = 10000;
    std::size_t active_aps = 6;
    double exclude_lo = 0.05, exclude_hi = 20.0;
    std::uint64_t seed = 0;
};

int analyze_clusters(const AnalyzeArgs& a) {
    const auto data = read_dataset_csv(a.dataset);
    const auto [k_min, k_max] = parse_k_range(a.k_range);
    if (a.normalize != "spatial" && a.normalize != "none") fail(ErrorCode::parameter, "--normalize must be spatial or none");
    PipelineOptions opts;
    opts.k_min = k_min;
    opts.k_max = k_max;
    opts.restarts = a.restarts;
    opts.seed = a.seed;
    opts.normalization = a.normalize == "spatial" ? Normalization::spatial : Normalization::none;
    const auto report = cluster_pipeline(data, opts);

    const json config{{"command", "analyze"},
                      {"dataset", file_digest(a.dataset)},
                      {"k_min", k_min},
                      {"k_max", k_max},
                      {"restarts", a.restarts},
                      {"normalize", a.normalize}};
    json doc = io::to_json(report);
    if (has_side_labels(report.labels)) doc["concordance"] = io::to_json(concordance(report));
    doc["config"] = config;
    doc["config_digest"] = io::config_digest(config);
    doc["seed"] = a.seed;
    write_text(a.out, dump(doc));
    std::cout << "analyze: " << data.rows() << " datasets, K* = " << report.k << ", silhouette "
              << format_double(report.mean_silhouette) << ", EV " << format_double(report.total_explained());
    if (doc.contains("concordance")) std::cout << ", concordance " << format_double(doc["concordance"]["fraction"].get<double>());
    std::cout << " -> " << a.out << "\n";
    return exit_ok;
}

int analyze_sessions(const AnalyzeArgs& a) {
    const json raw = io::read_json_file(a.dataset);
    const auto sessions = io::sessions_from_json(raw.is_object() && raw.contains("records") ? raw.at("records") : raw);
    if (sessions.empty()) fail(ErrorCode::empty_input, "no session records");
    const ExclusionBounds bounds{a.exclude_lo, a.exclude_hi};
    const std::size_t n = sessions.front().aesr[0].size();
    json hr = json::array(), bp = json::array();
    double mean_hr = 0.0, mean_bp = 0.0;
    std::size_t excluded = 0;
    const std::size_t active = std::min(a.active_aps, n);
    for (std::size_t ap = 0; ap < n; ++ap) {
        const auto h = exercise_correlation(sessions, ap, Vital::hr, a.permutations, derive_seed(a.seed, "hr", ap), bounds);
        const auto b = exercise_correlation(sessions, ap, Vital::bp, a.permutations, derive_seed(a.seed, "bp", ap), bounds);
        json hj = io::to_json(h.result), bj = io::to_json(b.result);
        hj["ap"] = bj["ap"] = "AP" + std::to_string(ap + 1);
        hr.push_back(hj);
        bp.push_back(bj);
        if (ap < active) {
            mean_hr += h.result.pcc / double(active);
            mean_bp += b.result.pcc / double(active);
        }
        excluded = h.excluded;
    }
    const json config{{"command", "analyze-sessions"},
                      {"dataset", file_digest(a.dataset)},
                      {"permutations", a.permutations},
                      {"active_aps", active},
                      {"exclusion", {a.exclude_lo, a.exclude_hi}}};
    const json doc{{"hr", hr},
                   {"bp", bp},
                   {"mean_pcc_hr_active", mean_hr},
                   {"mean_pcc_bp_active", mean_bp},
                   {"excluded_sessions", excluded},
                   {"config", config},
                   {"config_digest", io::config_digest(config)},
                   {"seed", a.seed}};
    write_text(a.out, dump(doc));
    std::cout << "analyze: " << sessions.size() << " sessions, mean PCC over AP1-" << active << " vs HR "
              << format_double(mean_hr) << ", vs BP " << format_double(mean_bp) << " -> " << a.out << "\n";
    return exit_ok;
}

int run_analyze(const AnalyzeArgs& a) {
    const auto ext = std::filesystem::path(a.dataset).extension().string();
    return ext == ".json" ? analyze_sessions(a) : analyze_clusters(a);
}

// ---- contour ---------------------------------------------------------------

struct ContourArgs {
    std::string mesh, aps, values, row = "1", format, out, normalize = "spatial";
    std::uint64_t seed = 0;
};

int run_contour(const ContourArgs& a) {
    const auto mesh = load_mesh(a.mesh);
    const auto positions = io::read_ap_positions(io::read_json_file(a.aps));
    const auto data = read_dataset_csv(a.values);

    std::size_t row = data.rows();
    for (std::size_t r = 0; r < data.rows(); ++r)
        if (data.labels[r] == a.row) row = r;
    if (row == data.rows()) {
        const auto idx = parse_int(a.row);
        if (!idx || *idx < 1 || std::size_t(*idx) > data.rows())
            fail(ErrorCode::parameter, "--row '" + a.row + "' is neither a label nor a 1-based row number");
        row = std::size_t(*idx) - 1;
    }
    if (data.cols() != positions.size())
        fail(ErrorCode::parameter, std::to_string(positions.size()) + " APs but " + std::to_string(data.cols()) + " values");
    if (a.normalize != "spatial" && a.normalize != "none") fail(ErrorCode::parameter, "--normalize must be spatial or none");
    std::vector<double> values(data.values.row(row).begin(), data.values.row(row).end());
    if (a.normalize == "spatial") values = normalize_spatial(values);

    AuricularPointSet set;
    for (const auto& [label, p] : positions) set.points.push_back({label, p, 0, {1.0, 0.0, 0.0}});
    const auto field = interpolate_contour(mesh, set, values);
    for (const auto& w : field.warnings) std::cerr << "warning: " << w << "\n";

    std::string format = a.format;
    if (format.empty()) format = std::filesystem::path(a.out).extension() == ".vtk" ? "vtk" : "ply";
    if (format != "ply" && format != "vtk") fail(ErrorCode::parameter, "--format must be ply or vtk");
    const std::string out = a.out.empty() ? "contour." + format : a.out;

    const json config{{"command", "contour"},
                      {"mesh", file_digest(a.mesh)},
                      {"aps", file_digest(a.aps)},
                      {"values", file_digest(a.values)},
                      {"row", data.labels[row]},
                      {"normalize", a.normalize},
                      {"format", format}};
    const std::string stamp = "config_digest=" + io::config_digest(config) + " seed=" + std::to_string(a.seed);
    std::ostringstream text;
    if (format == "ply") write_ply(text, field.mesh, {{"aesr", &field.values}}, {stamp, "row " + data.labels[row]});
    else write_vtk(text, field.mesh, "aesr", field.values, "auricle contour " + stamp);
    write_text(out, text.str());
    const auto [lo, hi] = std::minmax_element(field.values.begin(), field.values.end());
    std::cout << "contour: " << mesh.vertex_count() << " vertices, aesr " << format_double(*lo) << ".."
              << format_double(*hi) << " -> " << out << "\n";
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Auricular electrode design, simulation and AESR analysis"};
    app.require_subcommand(1);

    DesignArgs design;
    auto* d = app.add_subcommand("design", "Size one electrode per AP for a common sensing area");
    d->add_option("mesh", design.mesh, "Ear surface mesh (.obj or .ply)")->required();
    d->add_option("template", design.layout, "AP template file, or builtin:10 / builtin:13")->required();
    d->add_option("--target-area", design.target_area, "Common sensing area in mm^2");
    d->add_option("--tilt", design.tilt, "Electrode tilt from the surface normal in degrees");
    d->add_option("--tolerance", design.tolerance, "Relative area tolerance");
    d->add_option("--seed", design.seed, "Recorded in the output");
    d->add_option("--out", design.out, "Output JSON");

    SimulateArgs sim;
    auto* s = app.add_subcommand("simulate", "Generate a synthetic cohort CSV or session JSON");
    s->add_option("kind", sim.kind, "cohort or session")->required()->check(CLI::IsMember({"cohort", "session"}));
    s->add_option("config", sim.config, "Simulation config JSON")->required();
    s->add_option("--seed", sim.seed, "Random seed")->required();
    s->add_option("--out", sim.out, "Output file");

    AnalyzeArgs an;
    auto* a = app.add_subcommand("analyze", "Cluster a dataset CSV, or correlate session JSON with HR/BP");
    a->add_option("dataset", an.dataset, "Dataset CSV or session JSON")->required();
    a->add_option("--k-range", an.k_range, "Candidate cluster counts MIN:MAX");
    a->add_option("--restarts", an.restarts, "k-means restarts");
    a->add_option("--normalize", an.normalize, "spatial (divide by AP1) or none");
    a->add_option("--permutations", an.permutations, "Permutations for p-values");
    a->add_option("--active-aps", an.active_aps, "APs averaged in the summary PCC");
    a->add_option("--exclude-low", an.exclude_lo, "Lower bound of normal normalized AESR");
    a->add_option("--exclude-high", an.exclude_hi, "Upper bound of normal normalized AESR");
    a->add_option("--seed", an.seed, "Random seed");
    a->add_option("--out", an.out, "Output JSON");

    ContourArgs c;
    auto* ct = app.add_subcommand("contour", "Interpolate AP values over a mesh");
    ct->add_option("mesh", c.mesh, "Surface mesh")->required();
    ct->add_option("aps", c.aps, "AP positions (AP-set or design JSON)")->required();
    ct->add_option("values", c.values, "Dataset CSV with one column per AP")->required();
    ct->add_option("--row", c.row, "Row label or 1-based row number");
    ct->add_option("--format", c.format, "ply or vtk");
    ct->add_option("--normalize", c.normalize, "spatial (divide by AP1) or none");
    ct->add_option("--seed", c.seed, "Recorded in the output");
    ct->add_option("--out", c.out, "Output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_input;
    }

    try {
        if (*d) return run_design(design);
        if (*s) return run_simulate(sim);
        if (*a) return run_analyze(an);
        if (*ct) return run_contour(c);
    } catch (const Error& e) {
        std::cerr << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
        return exit_input;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    }
    return exit_input;
}
