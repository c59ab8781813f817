#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "auricle/core/error.hpp"
#include "auricle/electrode/diameter_solver.hpp"
#include "auricle/geometry/ap_placement.hpp"
#include "auricle/geometry/curvature.hpp"

namespace auricle {

/// Default common sensing area: a 3 mm pathway on flat skin.
inline constexpr double default_target_area_mm2 = std::numbers::pi * 1.5 * 1.5;

struct ElectrodeSpec {
    std::string ap_label;
    Vec3 center;
    Vec3 axis;
    double diameter_mm = 0.0;
    double tilt_deg = 0.0;
    double sensing_area_mm2 = 0.0;
    double mean_curvature = 0.0;  // 1/mm, interpolated at the centre
};

struct FailedElectrode {
    std::string ap_label;
    ErrorCode code;
    std::string reason;
};

struct ArrayDesign {
    std::vector<ElectrodeSpec> electrodes;
    std::vector<FailedElectrode> failed;
    double target_area_mm2 = 0.0;
    double tolerance = 0.0;
    /// max |area_i - target| / target over the solved electrodes.
    double max_relative_deviation = 0.0;

    bool complete() const { return failed.empty(); }

    /// (max area - min area) / target over the solved electrodes.
    double area_spread() const {
        if (electrodes.empty()) return 0.0;
        auto [lo, hi] = std::minmax_element(electrodes.begin(), electrodes.end(), [](const auto& a, const auto& b) {
            return a.sensing_area_mm2 < b.sensing_area_mm2;
        });
        return (hi->sensing_area_mm2 - lo->sensing_area_mm2) / target_area_mm2;
    }
};

/// How each electrode axis is oriented relative to the local surface normal.
struct TiltPolicy {
    /// Empty: every axis along the normal. One value: that tilt for every AP.
    /// Otherwise one tilt per AP, in AP order.
    std::vector<double> tilt_deg;

    static TiltPolicy normal() { return {}; }
    static TiltPolicy fixed(double deg) { return {{deg}}; }

    double tilt_for(std::size_t ap_index, std::size_t ap_count) const {
        if (tilt_deg.empty()) return 0.0;
        if (tilt_deg.size() == 1) return tilt_deg.front();
        if (tilt_deg.size() != ap_count) fail(ErrorCode::parameter, "tilt list length does not match the AP count");
        return tilt_deg[ap_index];
    }
};

/// Normal at `face`/`bary` rotated by `tilt_deg` about a deterministic tangent.
inline Vec3 tilted_axis(const SurfaceMesh& mesh, std::size_t face, const std::array<double, 3>& bary, double tilt_deg) {
    if (!(tilt_deg >= 0.0 && tilt_deg < 90.0)) fail(ErrorCode::parameter, "tilt must lie in [0, 90) degrees");
    const Vec3 n = mesh.interpolated_normal(face, bary);
    if (tilt_deg == 0.0) return n;
    return normalized(rotate(n, any_orthogonal(n), tilt_deg * std::numbers::pi / 180.0));
}

struct DesignOptions {
    TiltPolicy tilt;
    double tolerance = 1e-3;
    int curvature_ring = 2;
    DiameterSolverOptions solver;
};

/// Solves one diameter per AP so that every electrode reaches the same
/// sensing area. Per-electrode solves use half the array tolerance so that
/// both the per-electrode deviation and the max-min spread stay within it.
/// Failures are collected rather than thrown.
inline ArrayDesign design_array(const SurfaceMesh& mesh, const AuricularPointSet& aps, double target_area,
                                const DesignOptions& options = {}) {
    if (!(target_area > 0.0)) fail(ErrorCode::parameter, "target area must be positive");
    ArrayDesign design;
    design.target_area_mm2 = target_area;
    design.tolerance = options.tolerance;

    const auto curvature = curvature_field(mesh, options.curvature_ring);
    DiameterSolverOptions solver = options.solver;
    solver.relative_tolerance = 0.5 * options.tolerance;
    const double max_d = solver.max_diameter > 0.0 ? solver.max_diameter : 2.0 * mesh.bounds().diagonal();

    for (std::size_t i = 0; i < aps.size(); ++i) {
        const auto& ap = aps[i];
        try {
            const double tilt = options.tilt.tilt_for(i, aps.size());
            const Vec3 axis = tilted_axis(mesh, ap.face, ap.barycentric, tilt);
            const CylinderClipper clipper(mesh, ap.position, axis, ap.face);
            const auto sol = solve_diameter(clipper, target_area, solver, max_d);
            design.electrodes.push_back({ap.label, ap.position, axis, sol.diameter_mm, tilt, sol.area_mm2,
                                         curvature.interpolate_mean(mesh, ap.face, ap.barycentric)});
            design.max_relative_deviation =
                std::max(design.max_relative_deviation, std::abs(sol.area_mm2 - target_area) / target_area);
        } catch (const Error& e) {
            design.failed.push_back({ap.label, e.code(), e.what()});
        }
    }
    return design;
}

/// Sensing areas when every AP uses the same diameter (the uncompensated layout).
inline std::vector<double> fixed_diameter_areas(const SurfaceMesh& mesh, const AuricularPointSet& aps, double diameter,
                                                const TiltPolicy& tilt = {}) {
    std::vector<double> areas;
    areas.reserve(aps.size());
    for (std::size_t i = 0; i < aps.size(); ++i) {
        const auto& ap = aps[i];
        const Vec3 axis = tilted_axis(mesh, ap.face, ap.barycentric, tilt.tilt_for(i, aps.size()));
        areas.push_back(CylinderClipper(mesh, ap.position, axis, ap.face).evaluate(diameter).area_mm2);
    }
    return areas;
}

}  // namespace auricle
