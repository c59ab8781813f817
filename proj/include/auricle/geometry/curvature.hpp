#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "auricle/core/error.hpp"
#include "auricle/core/linalg.hpp"
#include "auricle/geometry/mesh.hpp"

namespace auricle {

/// Per-vertex curvature in 1/mm. Sign convention: a sphere with outward
/// normals has positive mean curvature. k1 >= k2 everywhere.
struct CurvatureField {
    std::vector<double> mean;
    std::vector<double> k1;
    std::vector<double> k2;
    /// Vertices whose requested ring was too small for the fit and that were
    /// refit on a wider ring (or left at zero when no ring sufficed).
    std::vector<std::uint32_t> flagged;
    std::vector<std::uint32_t> unfit;

    double interpolate_mean(const SurfaceMesh& mesh, std::size_t face, const std::array<double, 3>& bary) const {
        const auto& t = mesh.face(face);
        return mean[t[0]] * bary[0] + mean[t[1]] * bary[1] + mean[t[2]] * bary[2];
    }
};

/// Vertices within `rings` edge hops of `seed`, excluding the seed itself.
inline std::vector<std::uint32_t> k_ring_neighbors(const SurfaceMesh& mesh, std::uint32_t seed, int rings) {
    std::vector<std::uint32_t> frontier{seed}, out;
    std::vector<std::uint32_t> seen{seed};
    for (int r = 0; r < rings && !frontier.empty(); ++r) {
        std::vector<std::uint32_t> next;
        for (auto v : frontier)
            for (auto w : mesh.vertex_neighbors(v))
                if (std::find(seen.begin(), seen.end(), w) == seen.end()) {
                    seen.push_back(w);
                    next.push_back(w);
                    out.push_back(w);
                }
        frontier = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace detail {

struct PrincipalCurvatures {
    double k1, k2;
};

// Fits z = a x^2 + b xy + c y^2 + d x + e y in the tangent frame of `normal`
// and evaluates the shape operator of that graph at the origin.
inline std::optional<PrincipalCurvatures> fit_quadric(const Vec3& origin, const Vec3& normal,
                                                      const std::vector<Vec3>& points) {
    if (points.size() < 5) return std::nullopt;
    const Vec3 u = any_orthogonal(normal);
    const Vec3 v = cross(normal, u);

    double scale = 0.0;
    for (const auto& p : points) scale += norm(p - origin);
    scale /= static_cast<double>(points.size());
    if (!(scale > 0.0)) return std::nullopt;

    // Work in units of the mean neighbour distance for conditioning.
    Matrix a(points.size(), 5);
    std::vector<double> rhs(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        const Vec3 d = (points[i] - origin) / scale;
        const double x = dot(d, u), y = dot(d, v), z = dot(d, normal);
        a(i, 0) = x * x;
        a(i, 1) = x * y;
        a(i, 2) = y * y;
        a(i, 3) = x;
        a(i, 4) = y;
        rhs[i] = z;
    }
    const auto sol = least_squares(std::move(a), std::move(rhs), 1e-10);
    if (!sol) return std::nullopt;

    const double fxx = 2.0 * (*sol)[0] / scale, fxy = (*sol)[1] / scale, fyy = 2.0 * (*sol)[2] / scale;
    const double fx = (*sol)[3], fy = (*sol)[4];
    const double w = std::sqrt(1.0 + fx * fx + fy * fy);
    const double e = 1.0 + fx * fx, f = fx * fy, g = 1.0 + fy * fy;
    const double l = fxx / w, m = fxy / w, n = fyy / w;
    const double det = e * g - f * f;
    // The graph normal points along +normal; flip so that surfaces bending
    // away from the normal (convex, outward normals) are positive.
    const double h = -(e * n - 2.0 * f * m + g * l) / (2.0 * det);
    const double k = (l * n - m * m) / det;
    const double disc = std::sqrt(std::max(h * h - k, 0.0));
    return PrincipalCurvatures{h + disc, h - disc};
}

}  // namespace detail

/// Local quadric fit over the k-ring of every vertex. Vertices with fewer than
/// five neighbours (or a rank-deficient fit) in the requested ring are flagged
/// and refit on wider rings up to `max_ring`.
inline CurvatureField curvature_field(const SurfaceMesh& mesh, int k_ring = 2, int max_ring = 6) {
    if (k_ring < 1) fail(ErrorCode::parameter, "k_ring must be at least 1");
    const auto nv = mesh.vertex_count();
    CurvatureField field{std::vector<double>(nv, 0.0), std::vector<double>(nv, 0.0), std::vector<double>(nv, 0.0), {},
                         {}};
    std::vector<Vec3> pts;
    for (std::uint32_t vtx = 0; vtx < nv; ++vtx) {
        const Vec3& origin = mesh.vertex(vtx);
        const Vec3& normal = mesh.vertex_normals()[vtx];
        std::optional<detail::PrincipalCurvatures> pc;
        for (int ring = k_ring; ring <= std::max(k_ring, max_ring) && !pc; ++ring) {
            const auto nb = k_ring_neighbors(mesh, vtx, ring);
            pts.clear();
            for (auto w : nb) pts.push_back(mesh.vertex(w));
            pc = detail::fit_quadric(origin, normal, pts);
            if (!pc && ring == k_ring) field.flagged.push_back(vtx);
            if (nb.empty()) break;
        }
        if (!pc) {
            field.unfit.push_back(vtx);
            continue;
        }
        field.k1[vtx] = pc->k1;
        field.k2[vtx] = pc->k2;
        field.mean[vtx] = 0.5 * (pc->k1 + pc->k2);
    }
    return field;
}

}  // namespace auricle
