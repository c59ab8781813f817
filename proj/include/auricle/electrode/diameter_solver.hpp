#pragma once

#include <cmath>
#include <string>

#include "auricle/core/error.hpp"
#include "auricle/core/text.hpp"
#include "auricle/electrode/sensing_area.hpp"

namespace auricle {

struct DiameterSolverOptions {
    double relative_tolerance = 1e-3;
    double min_diameter = 0.1;  // mm
    /// Upper bracket limit; <= 0 means twice the mesh bounding-box diagonal.
    double max_diameter = 0.0;
    int max_iterations = 200;
};

struct DiameterSolution {
    double diameter_mm = 0.0;
    double area_mm2 = 0.0;
    double excluded_area_mm2 = 0.0;
    int evaluations = 0;
};

/// Bisection on the diameter so that the sensing area matches `target_area`.
/// The bracket starts at `min_diameter` and doubles until it straddles the
/// target; every evaluation is checked for monotonicity against the bracket.
/// `area_at(d)` returns the SensingPatch for diameter d.
template <class AreaFn>
DiameterSolution solve_diameter_with(AreaFn&& area_at, double target_area, const DiameterSolverOptions& options,
                                     double max_diameter) {
    if (!(target_area > 0.0)) fail(ErrorCode::parameter, "target area must be positive");
    if (!(options.relative_tolerance > 0.0)) fail(ErrorCode::parameter, "tolerance must be positive");

    DiameterSolution out;
    auto eval = [&](double d) {
        ++out.evaluations;
        return SensingPatch(area_at(d));
    };
    auto rel_err = [&](double a) { return std::abs(a - target_area) / target_area; };
    auto done = [&](double d, const SensingPatch& p) {
        out.diameter_mm = d;
        out.area_mm2 = p.area_mm2;
        out.excluded_area_mm2 = p.excluded_area_mm2;
        return out;
    };
    auto non_monotone = [](double d_lo, double a_lo, double d_hi, double a_hi) {
        fail(ErrorCode::non_monotone, "sensing area decreases on [" + format_double(d_lo) + ", " + format_double(d_hi) +
                                          "] mm: " + format_double(a_lo) + " -> " + format_double(a_hi) + " mm^2");
    };

    double lo = options.min_diameter;
    auto lo_patch = eval(lo);
    if (rel_err(lo_patch.area_mm2) <= options.relative_tolerance) return done(lo, lo_patch);
    if (lo_patch.area_mm2 > target_area)
        fail(ErrorCode::unreachable_target, "target " + format_double(target_area) +
                                                " mm^2 is below the area at the minimum diameter (" +
                                                format_double(lo_patch.area_mm2) + " mm^2)");

    double hi = lo;
    SensingPatch hi_patch = lo_patch;
    while (hi_patch.area_mm2 < target_area) {
        const double prev = hi;
        const SensingPatch prev_patch = hi_patch;
        hi = std::min(2.0 * hi, max_diameter);
        if (hi <= prev)
            fail(ErrorCode::unreachable_target, "target " + format_double(target_area) +
                                                    " mm^2 exceeds the surface patch (largest area " +
                                                    format_double(prev_patch.area_mm2) + " mm^2 at D = " +
                                                    format_double(prev) + " mm)");
        hi_patch = eval(hi);
        if (hi_patch.area_mm2 < prev_patch.area_mm2) non_monotone(prev, prev_patch.area_mm2, hi, hi_patch.area_mm2);
        if (rel_err(hi_patch.area_mm2) <= options.relative_tolerance) return done(hi, hi_patch);
        if (hi_patch.area_mm2 < target_area) {
            lo = hi;
            lo_patch = hi_patch;
        }
    }

    for (int it = 0; it < options.max_iterations; ++it) {
        const double mid = 0.5 * (lo + hi);
        const auto mid_patch = eval(mid);
        if (mid_patch.area_mm2 < lo_patch.area_mm2) non_monotone(lo, lo_patch.area_mm2, mid, mid_patch.area_mm2);
        if (mid_patch.area_mm2 > hi_patch.area_mm2) non_monotone(mid, mid_patch.area_mm2, hi, hi_patch.area_mm2);
        if (rel_err(mid_patch.area_mm2) <= options.relative_tolerance) return done(mid, mid_patch);
        if (mid_patch.area_mm2 < target_area) {
            lo = mid;
            lo_patch = mid_patch;
        } else {
            hi = mid;
            hi_patch = mid_patch;
        }
        if (hi - lo <= 1e-12 * hi) break;
    }
    // A jump in area across a vanishing bracket: the target sits on a discontinuity.
    fail(ErrorCode::unreachable_target, "area jumps across D = " + format_double(lo) + " mm; target " +
                                            format_double(target_area) + " mm^2 is not attainable within tolerance");
}

inline DiameterSolution solve_diameter(const CylinderClipper& clipper, double target_area,
                                       const DiameterSolverOptions& options, double max_diameter) {
    return solve_diameter_with([&](double d) { return clipper.evaluate(d); }, target_area, options, max_diameter);
}

inline DiameterSolution solve_diameter(const SurfaceMesh& mesh, const Vec3& center, const Vec3& axis,
                                       double target_area, const DiameterSolverOptions& options = {}) {
    const auto sp = anchor_on_surface(mesh, center, axis);
    const CylinderClipper clipper(mesh, center, axis, sp.face);
    const double max_d = options.max_diameter > 0.0 ? options.max_diameter : 2.0 * mesh.bounds().diagonal();
    return solve_diameter(clipper, target_area, options, max_d);
}

}  // namespace auricle
