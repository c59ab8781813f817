#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "auricle/electrode/array_design.hpp"
#include "auricle/geometry/primitives.hpp"

using namespace auricle;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST(SolveDiameter, InvertsCircleArea) {
    const auto mesh = primitives::plane(20.0, 0.4);
    const auto a = solve_diameter(mesh, {0, 0, 0}, {0, 0, 1}, 7.0686);
    EXPECT_NEAR(a.diameter_mm, 3.0, 0.003);
    EXPECT_LE(std::abs(a.area_mm2 - 7.0686) / 7.0686, 1e-3);
    const auto b = solve_diameter(mesh, {0, 0, 0}, {0, 0, 1}, 12.566);
    EXPECT_NEAR(b.diameter_mm, 4.0, 0.004);
}

TEST(SolveDiameter, MonotoneInTarget) {
    const auto mesh = primitives::bumpy_sheet(20.0, 0.5, 1.5, 10.0);
    const auto sp = mesh.nearest_point({2.0, -1.0, 5.0});
    const Vec3 n = mesh.interpolated_normal(sp.face, sp.barycentric);
    const auto small = solve_diameter(mesh, sp.position, n, 5.0);
    const auto large = solve_diameter(mesh, sp.position, n, 9.0);
    EXPECT_LT(small.diameter_mm, large.diameter_mm);
}

TEST(SolveDiameter, SphereInvertsCap) {
    const double radius = 10.0;
    const auto mesh = primitives::icosphere(5, radius);
    const auto top = mesh.nearest_point({0, 0, 20});
    const double target = 2 * pi * radius * (radius - std::sqrt(radius * radius - 9.0));
    const auto sol = solve_diameter(mesh, top.position, normalized(top.position), target, {.relative_tolerance = 1e-3});
    EXPECT_LE(std::abs(sol.area_mm2 - target) / target, 1e-3);
    EXPECT_NEAR(sol.diameter_mm, 6.0, 0.06);
}

TEST(SolveDiameter, UnreachableTargets) {
    const auto mesh = primitives::plane(6.0, 0.5);
    try {
        solve_diameter(mesh, {0, 0, 0}, {0, 0, 1}, 100.0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::unreachable_target);
    }
    try {
        solve_diameter(mesh, {0, 0, 0}, {0, 0, 1}, 1e-4);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::unreachable_target);
    }
}

TEST(SolveDiameter, ReportsNonMonotoneBracket) {
    // Area dips between 1 and 2 mm.
    auto bad = [](double d) {
        SensingPatch p;
        p.area_mm2 = d < 1.0 ? d : (d < 2.0 ? 0.5 : d * d);
        return p;
    };
    try {
        solve_diameter_with(bad, 10.0, {}, 100.0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::non_monotone);
        EXPECT_NE(std::string(e.what()).find("["), std::string::npos);
    }
}

TEST(DesignArray, HomogeneousPlaneGivesThreeMillimetres) {
    const auto mesh = primitives::plane(40.0, 0.5);
    const auto aps = place_aps(mesh, default_template(10));
    const auto design = design_array(mesh, aps, pi * 2.25);
    ASSERT_TRUE(design.complete());
    ASSERT_EQ(design.electrodes.size(), 10u);
    for (const auto& e : design.electrodes) {
        EXPECT_NEAR(e.diameter_mm, 3.0, 0.003);
        EXPECT_NEAR(e.mean_curvature, 0.0, 1e-9);
        EXPECT_NEAR(norm(e.axis), 1.0, 1e-9);
    }
    EXPECT_LE(design.max_relative_deviation, 1e-3);
}

TEST(DesignArray, CurvedSurfaceEqualisesAreas) {
    const auto mesh = primitives::bumpy_sheet(40.0, 0.4, 3.0, 14.0);
    const auto aps = place_aps(mesh, default_template(13));
    const auto design = design_array(mesh, aps, pi * 2.25);
    ASSERT_TRUE(design.complete());
    ASSERT_EQ(design.electrodes.size(), 13u);
    EXPECT_LE(design.area_spread(), 1e-3);
    EXPECT_LE(design.max_relative_deviation, 1e-3);
    auto [dmin, dmax] = std::minmax_element(design.electrodes.begin(), design.electrodes.end(),
                                            [](const auto& a, const auto& b) { return a.diameter_mm < b.diameter_mm; });
    EXPECT_GT(dmax->diameter_mm - dmin->diameter_mm, 0.01);
    // cross-check each area with an independent evaluation
    for (const auto& e : design.electrodes)
        EXPECT_NEAR(sensing_area(mesh, e.center, e.axis, e.diameter_mm), e.sensing_area_mm2, 1e-9);

    const auto fixed = fixed_diameter_areas(mesh, aps, 3.0);
    auto [amin, amax] = std::minmax_element(fixed.begin(), fixed.end());
    EXPECT_GT((*amax - *amin) / (pi * 2.25), design.area_spread());
}

TEST(DesignArray, FixedTiltAppliesToEveryElectrode) {
    const auto mesh = primitives::plane(40.0, 0.5);
    const auto aps = place_aps(mesh, default_template(10));
    DesignOptions opts;
    opts.tilt = TiltPolicy::fixed(15.0);
    const auto design = design_array(mesh, aps, pi * 2.25, opts);
    ASSERT_TRUE(design.complete());
    for (const auto& e : design.electrodes) {
        EXPECT_EQ(e.tilt_deg, 15.0);
        EXPECT_NEAR(std::acos(e.axis.z) * 180 / pi, 15.0, 1e-9);
        // ellipse of area pi r^2 / cos(theta) must shrink back to the target
        EXPECT_NEAR(e.diameter_mm, 3.0 * std::sqrt(std::cos(15.0 * pi / 180)), 0.003);
    }
}

TEST(DesignArray, PartialFailureListsAps) {
    // A 10 mm sheet plus a small detached island: the island cannot host the target area.
    const auto sheet = primitives::plane(10.0, 0.5);
    std::vector<Vec3> v = sheet.vertices();
    std::vector<Triangle> f = sheet.faces();
    const auto base = static_cast<std::uint32_t>(v.size());
    v.insert(v.end(), {{20, 0, 0}, {21, 0, 0}, {20, 1, 0}});
    f.push_back({base, base + 1, base + 2});
    const auto mesh = SurfaceMesh::build(v, f);
    AuricularPointSet aps;
    for (const auto& [label, p] : {std::pair{"AP1", Vec3{0, 0, 0}}, std::pair{"AP2", Vec3{20.25, 0.25, 0}}}) {
        const auto sp = mesh.nearest_point(p);
        aps.points.push_back({label, sp.position, sp.face, sp.barycentric});
    }
    const auto design = design_array(mesh, aps, pi * 4.0);
    EXPECT_FALSE(design.complete());
    ASSERT_EQ(design.failed.size(), 1u);
    EXPECT_EQ(design.failed[0].ap_label, "AP2");
    EXPECT_EQ(design.failed[0].code, ErrorCode::unreachable_target);
    ASSERT_EQ(design.electrodes.size(), 1u);
    EXPECT_NEAR(design.electrodes[0].diameter_mm, 4.0, 0.004);
}
