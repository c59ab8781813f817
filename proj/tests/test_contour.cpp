#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "auricle/analysis/contour.hpp"
#include "auricle/core/rng.hpp"
#include "auricle/geometry/primitives.hpp"
#include "support/oracles.hpp"

using namespace auricle;

namespace {

AuricularPointSet aps_at(const SurfaceMesh& mesh, const std::vector<Vec3>& where) {
    AuricularPointSet set;
    for (std::size_t i = 0; i < where.size(); ++i) {
        const auto sp = mesh.nearest_point(where[i]);
        set.points.push_back({"AP" + std::to_string(i + 1), sp.position, sp.face, sp.barycentric});
    }
    return set;
}

std::vector<Vec3> random_sites(Rng& rng, std::size_t n, double half) {
    std::vector<Vec3> s;
    for (std::size_t i = 0; i < n; ++i) s.push_back({rng.uniform(-half, half), rng.uniform(-half, half), 0.0});
    return s;
}

}  // namespace

TEST(Contour, ConstantValuesGiveConstantField) {
    const auto mesh = primitives::bumpy_sheet(20.0, 1.0, 1.0, 8.0);
    const auto aps = aps_at(mesh, {{-5, -5, 0}, {5, -4, 0}, {0, 6, 0}, {2, 1, 0}});
    const std::vector<double> v(4, 2.5);
    const auto field = interpolate_contour(mesh, aps, v);
    for (double x : field.values) EXPECT_NEAR(x, 2.5, 1e-12);
}

TEST(Contour, ExactAtSitesAndBounded) {
    Rng rng(21);
    for (int t = 0; t < 50; ++t) {
        const auto mesh = primitives::bumpy_sheet(20.0, 1.0, rng.uniform(0.0, 2.0), rng.uniform(6.0, 15.0));
        const std::size_t n = 3 + rng.below(11);
        const auto aps = aps_at(mesh, random_sites(rng, n, 8.0));
        std::vector<double> v(n);
        for (auto& x : v) x = rng.uniform(0.2, 3.0);
        std::vector<Vec3> sites;
        for (const auto& ap : aps.points) sites.push_back(ap.position);
        const NaturalNeighborInterpolator nn(sites, v);
        for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(nn.evaluate(sites[i]), v[i], 1e-9);
        const auto field = interpolate_contour(mesh, aps, v);
        const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
        for (double x : field.values) {
            EXPECT_GE(x, *lo);
            EXPECT_LE(x, *hi);
        }
    }
}

TEST(Contour, LinearPrecisionOnPlaneInsideHull) {
    Rng rng(22);
    const auto mesh = primitives::plane(20.0, 0.5);
    for (int t = 0; t < 50; ++t) {
        const std::size_t n = 3 + rng.below(11);
        const auto sites = random_sites(rng, n, 9.0);
        const double a = rng.uniform(-1, 1), b = rng.uniform(-1, 1), c = rng.uniform(2, 5);
        auto f = [&](const Vec3& p) { return a * p.x + b * p.y + c; };
        std::vector<double> v;
        for (const auto& s : sites) v.push_back(f(s));
        const NaturalNeighborInterpolator nn(sites, v);
        std::size_t checked = 0;
        for (std::size_t k = 0; k < mesh.vertex_count(); ++k) {
            const Vec3& p = mesh.vertex(k);
            if (!oracle::strictly_inside_hull(sites, p, 1e-6)) continue;
            EXPECT_NEAR(nn.evaluate(p), f(p), 1e-6);
            ++checked;
        }
        // Points exactly on a hull edge reproduce the affine function as well.
        const Vec3 mid = (sites[0] + sites[1]) * 0.5;
        if (oracle::strictly_inside_hull(sites, mid, -1e-12) && !oracle::strictly_inside_hull(sites, mid, 1e-9)) {
            EXPECT_NEAR(nn.evaluate(mid), f(mid), 1e-9);
        }
        (void)checked;
    }
}

TEST(Contour, ContinuousAcrossHullBoundary) {
    const std::vector<Vec3> sites{{0, 0, 0}, {4, 0, 0}, {0, 4, 0}, {4, 4, 0}, {1.5, 2.5, 0}};
    const std::vector<double> v{1, 2, 3, 5, 0.5};
    const NaturalNeighborInterpolator nn(sites, v);
    for (double x : {0.5, 1.7, 3.2}) {
        const double in = nn.evaluate(Vec3{x, 1e-5, 0});
        const double on = nn.evaluate(Vec3{x, 0, 0});
        const double out = nn.evaluate(Vec3{x, -1e-5, 0});
        EXPECT_NEAR(in, on, 1e-3);
        EXPECT_NEAR(out, on, 1e-12);
        EXPECT_NEAR(on, 1.0 + x / 4.0, 1e-12);
    }
}

TEST(Contour, CollinearSitesFallBackWithWarning) {
    const std::vector<Vec3> sites{{0, 0, 0}, {1, 0, 0}, {3, 0, 0}};
    const NaturalNeighborInterpolator nn(sites, {1.0, 2.0, 4.0});
    EXPECT_TRUE(nn.degenerate());
    EXPECT_FALSE(nn.warnings().empty());
    EXPECT_EQ(nn.evaluate(Vec3{1, 0, 0}), 2.0);
    const double mid = nn.evaluate(Vec3{2, 1, 0});
    EXPECT_GT(mid, 1.0);
    EXPECT_LT(mid, 4.0);
}

TEST(Contour, RejectsMismatchedCounts) {
    const auto mesh = primitives::plane(10.0, 1.0);
    const auto aps = aps_at(mesh, {{-2, -2, 0}, {2, -2, 0}, {0, 2, 0}});
    EXPECT_THROW(interpolate_contour(mesh, aps, std::vector<double>{1, 2}), Error);
    EXPECT_THROW(NaturalNeighborInterpolator({{0, 0, 0}, {0, 0, 0}, {1, 1, 0}}, {1, 2, 3}), Error);
}

TEST(Contour, CurvedSurfaceUsesBestFitPlane) {
    const auto mesh = primitives::icosphere(3, 10.0);
    const auto aps = aps_at(mesh, {{0, 0, 20}, {8, 0, 8}, {0, 8, 8}, {-8, 0, 8}, {0, -8, 8}});
    const std::vector<double> v{1, 2, 3, 4, 5};
    const auto field = interpolate_contour(mesh, aps, v);
    for (double x : field.values) {
        EXPECT_GE(x, 1.0);
        EXPECT_LE(x, 5.0);
    }
}
