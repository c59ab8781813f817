#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <deque>
#include <numbers>
#include <vector>

#include "auricle/core/error.hpp"
#include "auricle/core/vec3.hpp"
#include "auricle/geometry/mesh.hpp"

namespace auricle {

namespace detail {

// Signed area of disk(0, r) intersected with triangle (0, a, b).
inline double disk_wedge_area(const Vec2& a, const Vec2& b, double r) {
    const Vec2 d = b - a;
    const double qa = dot(d, d);
    if (qa == 0.0) return 0.0;
    const double r2 = r * r;
    auto sector = [r2](const Vec2& p, const Vec2& q) { return 0.5 * r2 * std::atan2(cross(p, q), dot(p, q)); };

    const double qb = dot(a, d);
    const double qc = dot(a, a) - r2;
    const double disc = qb * qb - qa * qc;
    if (disc <= 0.0) return sector(a, b);
    const double s = std::sqrt(disc);
    const double t1 = (-qb - s) / qa, t2 = (-qb + s) / qa;
    if (t2 <= 0.0 || t1 >= 1.0) return sector(a, b);
    const Vec2 p1 = a + d * std::max(t1, 0.0);
    const Vec2 p2 = a + d * std::min(t2, 1.0);
    return sector(a, p1) + 0.5 * cross(p1, p2) + sector(p2, b);
}

// Distance from the origin to the closed 2D triangle abc.
inline double origin_distance_2d(const Vec2& a, const Vec2& b, const Vec2& c) {
    const double o1 = cross(b - a, Vec2{} - a), o2 = cross(c - b, Vec2{} - b), o3 = cross(a - c, Vec2{} - c);
    if ((o1 >= 0 && o2 >= 0 && o3 >= 0) || (o1 <= 0 && o2 <= 0 && o3 <= 0)) return 0.0;
    auto seg = [](const Vec2& p, const Vec2& q) {
        const Vec2 d = q - p;
        const double len2 = dot(d, d);
        const double t = len2 > 0.0 ? std::clamp(-dot(p, d) / len2, 0.0, 1.0) : 0.0;
        return norm(p + d * t);
    };
    return std::min({seg(a, b), seg(b, c), seg(c, a)});
}

}  // namespace detail

/// Exact area of the intersection of the 2D triangle abc with disk(0, r).
inline double triangle_disk_area(const Vec2& a, const Vec2& b, const Vec2& c, double r) {
    if (!(r > 0.0)) return 0.0;
    const double s = detail::disk_wedge_area(a, b, r) + detail::disk_wedge_area(b, c, r) + detail::disk_wedge_area(c, a, r);
    const double full = 0.5 * std::abs(cross(b - a, c - a));
    return std::clamp(std::abs(s), 0.0, full);
}

struct SensingPatch {
    double area_mm2 = 0.0;           // connected patch containing the centre
    double excluded_area_mm2 = 0.0;  // clipped surface outside that patch
    std::size_t faces = 0;

    bool disconnected() const { return excluded_area_mm2 > 0.0; }
};

/// Clipped-surface area of a mesh inside the infinite cylinder about one axis.
/// Projection data are computed once, so repeated evaluation at different
/// diameters (as the diameter solver does) costs only the disk clipping.
class CylinderClipper {
public:
    /// Faces whose normal is within this cosine of perpendicular to the axis are
    /// integrated by subdivision instead of projection.
    static constexpr double grazing_cosine = 1e-3;
    static constexpr int grazing_depth = 5;

    CylinderClipper(const SurfaceMesh& mesh, const Vec3& center, const Vec3& axis, std::uint32_t seed_face)
        : mesh_(&mesh), center_(center), axis_(normalized(axis)), seed_face_(seed_face) {
        if (squared_norm(axis_) == 0.0) fail(ErrorCode::parameter, "cylinder axis has zero length");
        u_ = any_orthogonal(axis_);
        v_ = cross(axis_, u_);
        const auto nf = mesh.face_count();
        faces_.resize(nf);
        for (std::size_t f = 0; f < nf; ++f) {
            auto& pf = faces_[f];
            for (int k = 0; k < 3; ++k) {
                const Vec3 d = mesh.corner(f, k) - center_;
                pf.p[k] = {dot(d, u_), dot(d, v_)};
            }
            pf.min_radius = detail::origin_distance_2d(pf.p[0], pf.p[1], pf.p[2]);
            pf.max_radius = std::max({norm(pf.p[0]), norm(pf.p[1]), norm(pf.p[2])});
            pf.cosine = std::abs(dot(mesh.face_normal(f), axis_));
        }
    }

    const Vec3& axis() const { return axis_; }

    /// Area of face f inside the cylinder of the given radius.
    double face_area(std::size_t f, double radius) const {
        const auto& pf = faces_[f];
        if (pf.min_radius >= radius) return 0.0;
        if (pf.max_radius <= radius) return mesh_->face_area(f);
        if (pf.cosine >= grazing_cosine)
            return std::min(triangle_disk_area(pf.p[0], pf.p[1], pf.p[2], radius) / pf.cosine, mesh_->face_area(f));
        return subdivided_area(f, radius);
    }

    SensingPatch evaluate(double diameter) const {
        if (!(diameter > 0.0)) fail(ErrorCode::parameter, "diameter must be positive");
        const double radius = 0.5 * diameter;
        const auto nf = faces_.size();
        std::vector<double> area(nf, 0.0);
        double total = 0.0;
        for (std::size_t f = 0; f < nf; ++f) {
            area[f] = face_area(f, radius);
            total += area[f];
        }
        if (!(total > 0.0)) fail(ErrorCode::zero_area, "cylinder does not intersect the mesh");

        SensingPatch patch;
        if (area[seed_face_] > 0.0) {
            std::vector<char> seen(nf, 0);
            std::deque<std::uint32_t> queue{seed_face_};
            seen[seed_face_] = 1;
            while (!queue.empty()) {
                const auto f = queue.front();
                queue.pop_front();
                patch.area_mm2 += area[f];
                ++patch.faces;
                for (auto g : mesh_->face_neighbors(f))
                    if (!seen[g] && area[g] > 0.0) {
                        seen[g] = 1;
                        queue.push_back(g);
                    }
            }
        }
        if (!(patch.area_mm2 > 0.0)) fail(ErrorCode::zero_area, "cylinder does not cover the surface at its centre");
        patch.excluded_area_mm2 = std::max(total - patch.area_mm2, 0.0);
        return patch;
    }

private:
    struct ProjectedFace {
        std::array<Vec2, 3> p;
        double min_radius = 0.0;
        double max_radius = 0.0;
        double cosine = 0.0;
    };

    // Faces almost parallel to the axis project to slivers; integrate them by
    // uniform subdivision with a radial inside test at each sub-triangle centroid.
    double subdivided_area(std::size_t f, double radius) const {
        const Vec3 a = mesh_->corner(f, 0), b = mesh_->corner(f, 1), c = mesh_->corner(f, 2);
        const int n = 1 << grazing_depth;
        const double r2 = radius * radius;
        const double cell = mesh_->face_area(f) / static_cast<double>(n * n);
        std::size_t inside = 0;
        auto radial2 = [&](const Vec3& p) {
            const Vec3 d = p - center_;
            const double x = dot(d, u_), y = dot(d, v_);
            return x * x + y * y;
        };
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n - i; ++j) {
                // upright cell
                double s = (i + 1.0 / 3.0) / n, t = (j + 1.0 / 3.0) / n;
                if (radial2(a + (b - a) * s + (c - a) * t) <= r2) ++inside;
                if (j < n - i - 1) {
                    s = (i + 2.0 / 3.0) / n;
                    t = (j + 2.0 / 3.0) / n;
                    if (radial2(a + (b - a) * s + (c - a) * t) <= r2) ++inside;
                }
            }
        return cell * static_cast<double>(inside);
    }

    const SurfaceMesh* mesh_;
    Vec3 center_;
    Vec3 axis_;
    Vec3 u_, v_;
    std::uint32_t seed_face_;
    std::vector<ProjectedFace> faces_;
};

/// Largest allowed angle between the electrode axis and the surface normal.
inline constexpr double max_axis_angle_deg = 85.0;

/// Locates `center` on the mesh and checks the axis against the local normal.
inline SurfacePoint anchor_on_surface(const SurfaceMesh& mesh, const Vec3& center, const Vec3& axis) {
    auto sp = mesh.nearest_point(center);
    const double tol = 1e-6 * mesh.bounds().diagonal() + 1e-9;
    if (sp.distance > tol)
        fail(ErrorCode::domain, "electrode centre is " + std::to_string(sp.distance) + " mm off the surface");
    const Vec3 n = mesh.interpolated_normal(sp.face, sp.barycentric);
    const double c = std::abs(dot(normalized(axis), n));
    if (c < std::cos(max_axis_angle_deg * std::numbers::pi / 180.0))
        fail(ErrorCode::parameter, "electrode axis is within 5 degrees of the tangent plane");
    return sp;
}

/// Contact area (mm^2) between the cylinder of `diameter` about `axis`
/// through `center` and the connected surface patch containing `center`.
inline SensingPatch sensing_patch(const SurfaceMesh& mesh, const Vec3& center, const Vec3& axis, double diameter) {
    if (!(diameter > 0.0)) fail(ErrorCode::parameter, "diameter must be positive");
    const auto sp = anchor_on_surface(mesh, center, axis);
    return CylinderClipper(mesh, center, axis, sp.face).evaluate(diameter);
}

inline double sensing_area(const SurfaceMesh& mesh, const Vec3& center, const Vec3& axis, double diameter) {
    return sensing_patch(mesh, center, axis, diameter).area_mm2;
}

}  // namespace auricle
