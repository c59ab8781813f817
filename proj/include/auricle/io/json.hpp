#pragma once

#include <fstream>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "auricle/acquisition/cohort.hpp"
#include "auricle/acquisition/session.hpp"
#include "auricle/analysis/exercise.hpp"
#include "auricle/analysis/pipeline.hpp"
#include "auricle/analysis/statistics.hpp"
#include "auricle/core/error.hpp"
#include "auricle/core/rng.hpp"
#include "auricle/core/text.hpp"
#include "auricle/electrode/array_design.hpp"
#include "auricle/geometry/ap_placement.hpp"

namespace auricle::io {

using json = nlohmann::json;

/// FNV-1a of the compact dump; object keys are already sorted, so equal
/// configurations hash equally regardless of the order they were written in.
inline std::string config_digest(const json& config) { return hex64(fnv1a64(config.dump())); }

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::io, "cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        fail(ErrorCode::format, path + ": " + e.what());
    }
}

inline json vec(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

inline json matrix_rows(const Matrix& m) {
    json out = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(std::vector<double>(m.row(r).begin(), m.row(r).end()));
    return out;
}

// ---- reports ---------------------------------------------------------------

inline json to_json(const ArrayDesign& d) {
    json electrodes = json::array();
    for (const auto& e : d.electrodes)
        electrodes.push_back({{"ap", e.ap_label},
                              {"center", vec(e.center)},
                              {"axis", vec(e.axis)},
                              {"diameter_mm", e.diameter_mm},
                              {"tilt_deg", e.tilt_deg},
                              {"sensing_area_mm2", e.sensing_area_mm2},
                              {"mean_curvature", e.mean_curvature}});
    json failed = json::array();
    for (const auto& f : d.failed)
        failed.push_back({{"ap", f.ap_label}, {"code", std::string(to_string(f.code))}, {"reason", f.reason}});
    return {{"target_area_mm2", d.target_area_mm2},
            {"tolerance", d.tolerance},
            {"max_relative_deviation", d.max_relative_deviation},
            {"area_spread", d.area_spread()},
            {"complete", d.complete()},
            {"electrodes", electrodes},
            {"failed", failed}};
}

inline json to_json(const ClusterReport& r) {
    json out{{"k", r.k},
             {"labels", r.labels},
             {"explained_variance_ratio", r.explained_variance_ratio},
             {"total_explained_variance", r.total_explained()},
             {"sse_by_k", r.sse_by_k},
             {"elbow_distance", r.elbow_distance},
             {"assignments", r.assignments},
             {"centers", matrix_rows(r.centers)},
             {"scores", matrix_rows(r.scores)},
             {"sse", r.sse},
             {"silhouette", r.silhouette},
             {"mean_silhouette", r.mean_silhouette},
             {"warnings", r.warnings}};
    return out;
}

inline json to_json(const ConcordanceResult& c) {
    return {{"fraction", c.fraction}, {"subjects", c.subjects}, {"matched", c.matched}, {"match", matrix_rows(c.match)}};
}

inline json to_json(const CorrelationResult& c) {
    return {{"pcc", c.pcc},
            {"p_value", c.p_value},
            {"n", c.n},
            {"permutations", c.permutations},
            {"verdict", c.correlated ? "correlated" : "uncorrelated"}};
}

inline json to_json(const AuricularPointSet& aps) {
    json out = json::array();
    for (const auto& ap : aps.points) out.push_back({{"label", ap.label}, {"position", vec(ap.position)}});
    return {{"aps", out}};
}

/// AP labels and positions from either an AP-set document {"aps": [...]} or
/// a design document {"electrodes": [...]}.
inline std::vector<std::pair<std::string, Vec3>> read_ap_positions(const json& doc) {
    const bool design = doc.contains("electrodes");
    if (!design && !doc.contains("aps")) fail(ErrorCode::format, "AP file needs an 'aps' or 'electrodes' array");
    const auto& list = design ? doc.at("electrodes") : doc.at("aps");
    std::vector<std::pair<std::string, Vec3>> out;
    try {
        for (const auto& e : list) {
            const auto& p = design ? e.at("center") : e.at("position");
            out.emplace_back(e.at(design ? "ap" : "label").get<std::string>(),
                             Vec3{p.at(0).get<double>(), p.at(1).get<double>(), p.at(2).get<double>()});
        }
    } catch (const json::exception& ex) {
        fail(ErrorCode::format, std::string("malformed AP entry: ") + ex.what());
    }
    return out;
}

inline json to_json(const std::vector<SessionRecord>& sessions) {
    json out = json::array();
    for (const auto& s : sessions)
        for (std::size_t p = 0; p < 4; ++p)
            out.push_back({{"subject", s.subject},
                           {"test", s.test},
                           {"period", std::string(period_names[p])},
                           {"aesr", s.aesr[p]},
                           {"hr", s.hr[p]},
                           {"bp", s.bp[p]}});
    return out;
}

/// Inverse of to_json(sessions): groups the per-period records back into sessions.
inline std::vector<SessionRecord> sessions_from_json(const json& records) {
    if (!records.is_array()) fail(ErrorCode::format, "session file must be a JSON array of records");
    std::vector<SessionRecord> out;
    std::size_t index = 0;
    try {
        for (const auto& r : records) {
            ++index;
            const auto subject = r.at("subject").get<std::size_t>();
            const auto test = r.at("test").get<std::string>();
            const auto period = r.at("period").get<std::string>();
            std::size_t p = 0;
            while (p < 4 && period_names[p] != period) ++p;
            if (p == 4) fail(ErrorCode::format, "record " + std::to_string(index) + ": unknown period '" + period + "'");
            if (out.empty() || out.back().subject != subject || out.back().test != test) {
                if (p != 0) fail(ErrorCode::format, "record " + std::to_string(index) + ": session does not start with period I");
                out.push_back({});
                out.back().subject = subject;
                out.back().test = test;
            }
            auto& s = out.back();
            s.aesr[p] = r.at("aesr").get<std::vector<double>>();
            s.hr[p] = r.at("hr").get<double>();
            s.bp[p] = r.at("bp").get<double>();
        }
    } catch (const json::exception& e) {
        fail(ErrorCode::format, "record " + std::to_string(index) + ": " + e.what());
    }
    for (const auto& s : out)
        for (std::size_t p = 0; p < 4; ++p)
            if (s.aesr[p].empty() || s.aesr[p].size() != s.aesr[0].size() || !(s.hr[p] > 0.0) || !(s.bp[p] > 0.0))
                fail(ErrorCode::format, "session " + std::to_string(s.subject) + "-" + s.test + " is incomplete");
    return out;
}

// ---- configs ---------------------------------------------------------------

namespace detail {

inline void reject_unknown(const json& j, const std::set<std::string>& known, const std::string& what) {
    if (!j.is_object()) fail(ErrorCode::config, what + " must be a JSON object");
    for (const auto& [key, _] : j.items())
        if (!known.count(key)) fail(ErrorCode::config, key + ": unknown " + what + " field");
}

template <class T>
void read_field(const json& j, const char* key, T& into) {
    if (!j.contains(key)) return;
    try {
        into = j.at(key).get<T>();
    } catch (const json::exception&) {
        fail(ErrorCode::config, std::string(key) + ": wrong type");
    }
}

}  // namespace detail

inline json to_json(const CohortConfig& c) {
    json archetypes = json::array();
    for (const auto& a : c.archetypes) archetypes.push_back({{"name", a.name}, {"trend", a.trend}});
    return {{"archetypes", archetypes},
            {"sizes", c.sizes},
            {"noise_sigma", c.noise_sigma},
            {"concordance", c.concordance},
            {"base_ohm", c.base_ohm}};
}

/// Fields absent from the document keep their default-cohort values.
inline CohortConfig cohort_config_from_json(const json& j) {
    detail::reject_unknown(j, {"archetypes", "sizes", "noise_sigma", "concordance", "base_ohm"}, "cohort");
    CohortConfig c = default_cohort_config();
    if (j.contains("archetypes")) {
        c.archetypes.clear();
        if (!j.at("archetypes").is_array()) fail(ErrorCode::config, "archetypes: must be an array");
        for (const auto& a : j.at("archetypes")) {
            detail::reject_unknown(a, {"name", "trend"}, "archetype");
            Archetype arch;
            detail::read_field(a, "name", arch.name);
            detail::read_field(a, "trend", arch.trend);
            c.archetypes.push_back(std::move(arch));
        }
    }
    detail::read_field(j, "sizes", c.sizes);
    detail::read_field(j, "noise_sigma", c.noise_sigma);
    detail::read_field(j, "concordance", c.concordance);
    detail::read_field(j, "base_ohm", c.base_ohm);
    c.validate();
    return c;
}

struct SessionConfig {
    ExerciseResponse response;
    std::size_t volunteers = 17;
    std::vector<std::string> tests{"A1", "A2", "A3", "B1", "B2"};
};

inline json to_json(const SessionConfig& c) {
    const auto& r = c.response;
    return {{"volunteers", c.volunteers},
            {"tests", c.tests},
            {"ap_count", r.ap_count},
            {"drop", r.drop},
            {"other_min", r.other_min},
            {"other_max", r.other_max},
            {"period3_residual", r.period3_residual},
            {"hr_multiplier", r.hr_multiplier},
            {"bp_multiplier", r.bp_multiplier},
            {"baseline_ohm", r.baseline_ohm},
            {"baseline_spread", r.baseline_spread},
            {"hr_baseline_bpm", r.hr_baseline_bpm},
            {"bp_baseline_mmhg", r.bp_baseline_mmhg},
            {"noise_sigma", r.noise_sigma},
            {"vital_noise_sigma", r.vital_noise_sigma},
            {"intensity_sd", r.intensity_sd},
            {"aesr_coherence", r.aesr_coherence},
            {"hr_coupling", r.hr_coupling},
            {"bp_coupling", r.bp_coupling}};
}

inline SessionConfig session_config_from_json(const json& j) {
    SessionConfig c;
    std::set<std::string> known;
    const json defaults = to_json(c);
    for (const auto& [key, _] : defaults.items()) known.insert(key);
    detail::reject_unknown(j, known, "session");
    auto& r = c.response;
    detail::read_field(j, "volunteers", c.volunteers);
    detail::read_field(j, "tests", c.tests);
    detail::read_field(j, "ap_count", r.ap_count);
    detail::read_field(j, "drop", r.drop);
    detail::read_field(j, "other_min", r.other_min);
    detail::read_field(j, "other_max", r.other_max);
    detail::read_field(j, "period3_residual", r.period3_residual);
    detail::read_field(j, "hr_multiplier", r.hr_multiplier);
    detail::read_field(j, "bp_multiplier", r.bp_multiplier);
    detail::read_field(j, "baseline_ohm", r.baseline_ohm);
    detail::read_field(j, "baseline_spread", r.baseline_spread);
    detail::read_field(j, "hr_baseline_bpm", r.hr_baseline_bpm);
    detail::read_field(j, "bp_baseline_mmhg", r.bp_baseline_mmhg);
    detail::read_field(j, "noise_sigma", r.noise_sigma);
    detail::read_field(j, "vital_noise_sigma", r.vital_noise_sigma);
    detail::read_field(j, "intensity_sd", r.intensity_sd);
    detail::read_field(j, "aesr_coherence", r.aesr_coherence);
    detail::read_field(j, "hr_coupling", r.hr_coupling);
    detail::read_field(j, "bp_coupling", r.bp_coupling);
    if (c.volunteers == 0) fail(ErrorCode::config, "volunteers: must be positive");
    if (c.tests.empty()) fail(ErrorCode::config, "tests: at least one test label is required");
    for (const auto& t : c.tests)
        if (!is_cycling_test(t) && !is_control_test(t))
            fail(ErrorCode::config, "tests: '" + t + "' is not one of A1, A2, A3, B1, B2");
    r.validate();
    return c;
}

/// Sessions for every (volunteer, test) pair; session i of the flattened
/// order uses sub-seed (seed, "study", i).
inline std::vector<SessionRecord> simulate_sessions(const SessionConfig& c, std::uint64_t seed) {
    std::vector<SessionRecord> out;
    for (std::size_t v = 0; v < c.volunteers; ++v)
        for (std::size_t t = 0; t < c.tests.size(); ++t)
            out.push_back(simulate_exercise_session(c.response, v + 1, c.tests[t],
                                                    derive_seed(seed, "study", v * c.tests.size() + t)));
    return out;
}

}  // namespace auricle::io
