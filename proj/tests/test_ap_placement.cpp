#include <gtest/gtest.h>

#include <sstream>

#include "auricle/geometry/ap_placement.hpp"
#include "auricle/geometry/primitives.hpp"

using namespace auricle;

TEST(ApTemplate, ParsesLabelledPoints) {
    std::istringstream in("# header\nAP1 0.5 0.5 0.5\n\nAP2 0 1 0.25  # trailing\n");
    const auto t = parse_ap_template(in);
    ASSERT_EQ(t.size(), 2u);
    EXPECT_EQ(t[1].label, "AP2");
    EXPECT_EQ(t[1].normalized.z, 0.25);
}

TEST(ApTemplate, RejectsOutOfCubeAndDuplicates) {
    std::istringstream a("AP1 0.5 1.5 0.5\n");
    EXPECT_THROW(parse_ap_template(a), Error);
    std::istringstream b("AP1 0.5 0.5 0.5\nAP1 0.1 0.1 0.1\n");
    EXPECT_THROW(parse_ap_template(b), Error);
}

TEST(ApTemplate, DefaultLayoutsHaveExpectedSizes) {
    EXPECT_EQ(default_template(10).size(), 10u);
    EXPECT_EQ(default_template(13).size(), 13u);
    EXPECT_THROW(default_template(7), Error);
}

TEST(PlaceAps, CentroidOfPlaneLandsOnPlane) {
    const auto mesh = primitives::plane(10.0, 1.0);
    const auto aps = place_aps(mesh, {{"AP1", {0.5, 0.5, 0.5}}});
    ASSERT_EQ(aps.size(), 1u);
    EXPECT_NEAR(aps[0].position.x, 0.0, 1e-12);
    EXPECT_NEAR(aps[0].position.y, 0.0, 1e-12);
    EXPECT_EQ(aps[0].position.z, 0.0);
}

TEST(PlaceAps, DefaultTemplateGivesOrderedLabels) {
    const auto mesh = primitives::bumpy_sheet(30.0, 1.0, 2.0, 12.0);
    const auto aps = place_aps(mesh, default_template(10));
    ASSERT_EQ(aps.size(), 10u);
    for (std::size_t i = 0; i < aps.size(); ++i) {
        EXPECT_EQ(aps[i].label, "AP" + std::to_string(i + 1));
        const auto& b = aps[i].barycentric;
        EXPECT_GE(std::min({b[0], b[1], b[2]}), 0.0);
        EXPECT_NEAR(b[0] + b[1] + b[2], 1.0, 1e-9);
        const Vec3 on_face = mesh.point_on_face(aps[i].face, b);
        EXPECT_NEAR(distance(on_face, aps[i].position), 0.0, 1e-9);
    }
}

TEST(PlaceAps, OrdersLabelsNaturally) {
    const auto mesh = primitives::plane(10.0, 1.0);
    const auto aps = place_aps(mesh, {{"AP10", {0.1, 0.1, 0}}, {"AP2", {0.2, 0.2, 0}}, {"AP1", {0.3, 0.3, 0}}});
    EXPECT_EQ(aps[0].label, "AP1");
    EXPECT_EQ(aps[1].label, "AP2");
    EXPECT_EQ(aps[2].label, "AP10");
}

TEST(PlaceAps, ScalesExactlyWithMesh) {
    const auto mesh = primitives::bumpy_sheet(24.0, 1.0, 2.0, 12.0);
    const auto doubled = mesh.transformed(2.0, {});
    const auto layout = default_template(13);
    const auto a = place_aps(mesh, layout);
    const auto b = place_aps(doubled, layout);
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(b[i].position, a[i].position * 2.0);
        EXPECT_EQ(b[i].face, a[i].face);
    }
}

TEST(PlaceAps, EquivariantUnderTranslation) {
    // Gentle sheet and points above it, so every projection is unique.
    const auto mesh = primitives::bumpy_sheet(20.0, 1.0, 0.5, 20.0);
    const Vec3 shift{12.5, -3.0, 40.0};
    const auto moved = mesh.transformed(1.0, shift);
    auto layout = default_template(10);
    for (auto& tp : layout) tp.normalized.z = 1.0;
    const auto a = place_aps(mesh, layout);
    const auto b = place_aps(moved, layout);
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(distance(b[i].position, a[i].position + shift), 0.0, 1e-9);
}

TEST(PlaceAps, FarProjectionNamesTheAp) {
    // Two distant triangles: a bounding-box point between them is far from both.
    const auto mesh = SurfaceMesh::build({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {100, 100, 100}, {101, 100, 100}, {100, 101, 100}},
                                         {{0, 1, 2}, {3, 4, 5}});
    try {
        place_aps(mesh, {{"AP7", {0.5, 0.5, 0.5}}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::placement);
        EXPECT_NE(std::string(e.what()).find("AP7"), std::string::npos);
    }
}
