#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "auricle/core/error.hpp"
#include "auricle/core/linalg.hpp"
#include "auricle/core/vec3.hpp"
#include "auricle/geometry/ap_placement.hpp"
#include "auricle/geometry/mesh.hpp"

namespace auricle {

namespace detail {

using Polygon = std::vector<Vec2>;

inline double polygon_area(const Polygon& p) {
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s += cross(p[i], p[(i + 1) % p.size()]);
    return 0.5 * s;
}

// Keeps the part of convex polygon `p` nearer to `a` than to `b`.
inline Polygon clip_closer(const Polygon& p, const Vec2& a, const Vec2& b) {
    const Vec2 n = b - a;
    const Vec2 mid = (a + b) * 0.5;
    auto side = [&](const Vec2& x) { return dot(x - mid, n); };  // <= 0 keeps
    Polygon out;
    if (p.empty()) return out;
    out.reserve(p.size() + 1);
    for (std::size_t i = 0; i < p.size(); ++i) {
        const Vec2& cur = p[i];
        const Vec2& nxt = p[(i + 1) % p.size()];
        const double sc = side(cur), sn = side(nxt);
        if (sc <= 0.0) out.push_back(cur);
        if ((sc < 0.0 && sn > 0.0) || (sc > 0.0 && sn < 0.0)) out.push_back(cur + (nxt - cur) * (sc / (sc - sn)));
    }
    return out;
}

// Andrew's monotone chain; counter-clockwise, collinear points dropped.
inline std::vector<std::size_t> convex_hull(const std::vector<Vec2>& pts) {
    std::vector<std::size_t> idx(pts.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](auto a, auto b) {
        return pts[a].x != pts[b].x ? pts[a].x < pts[b].x : pts[a].y < pts[b].y;
    });
    std::vector<std::size_t> h(2 * idx.size());
    std::size_t k = 0;
    auto turn = [&](std::size_t o, std::size_t a, std::size_t b) { return cross(pts[a] - pts[o], pts[b] - pts[o]); };
    for (auto i : idx) {
        while (k >= 2 && turn(h[k - 2], h[k - 1], i) <= 0.0) --k;
        h[k++] = i;
    }
    for (std::size_t j = idx.size() - 1, t = k + 1; j-- > 0;) {
        const auto i = idx[j];
        while (k >= t && turn(h[k - 2], h[k - 1], i) <= 0.0) --k;
        h[k++] = i;
    }
    h.resize(k > 1 ? k - 1 : k);
    return h;
}

}  // namespace detail

/// Natural-neighbour (Sibson) interpolation of AP values over a surface.
///
/// Sites and query points are projected onto the least-squares plane of the
/// AP positions. Inside the convex hull of the projected sites the weights are
/// the areas each site's Voronoi cell loses to the inserted query point. On and
/// outside the hull the value is the linear interpolant along the nearest hull
/// edge, which is the limit of the Sibson weights on that edge. Collinear sites
/// fall back to inverse-distance weighting.
class NaturalNeighborInterpolator {
public:
    NaturalNeighborInterpolator(std::vector<Vec3> sites, std::vector<double> values)
        : values_(std::move(values)) {
        if (sites.size() != values_.size())
            fail(ErrorCode::parameter, std::to_string(sites.size()) + " APs but " + std::to_string(values_.size()) +
                                           " values");
        if (sites.size() < 3) fail(ErrorCode::parameter, "contour interpolation needs at least three APs");
        for (double v : values_)
            if (!std::isfinite(v)) fail(ErrorCode::parameter, "contour values must be finite");

        Vec3 c{};
        for (const auto& s : sites) c = c + s;
        origin_ = c / double(sites.size());
        Matrix cov(3, 3);
        for (const auto& s : sites) {
            const Vec3 d = s - origin_;
            const double a[3] = {d.x, d.y, d.z};
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) cov(i, j) += a[i] * a[j];
        }
        const auto eig = jacobi_eigen(cov);
        u_ = {eig.vectors(0, 0), eig.vectors(1, 0), eig.vectors(2, 0)};
        v_ = {eig.vectors(0, 1), eig.vectors(1, 1), eig.vectors(2, 1)};

        scale_ = 0.0;
        for (const auto& s : sites) {
            sites_.push_back(project(s));
            scale_ = std::max(scale_, norm(sites_.back()));
        }
        if (!(scale_ > 0.0)) fail(ErrorCode::parameter, "all APs coincide");
        for (std::size_t i = 0; i < sites_.size(); ++i)
            for (std::size_t j = 0; j < i; ++j)
                if (norm(sites_[i] - sites_[j]) <= 1e-12 * scale_)
                    fail(ErrorCode::parameter, "APs " + std::to_string(j + 1) + " and " + std::to_string(i + 1) +
                                                   " coincide in the surface parameterization");

        if (!(eig.values[1] > 1e-10 * eig.values[0])) {
            degenerate_ = true;
            warnings_.push_back("APs are collinear in the parameterization; using inverse-distance weighting");
        } else {
            hull_ = detail::convex_hull(sites_);
        }
    }

    const std::vector<std::string>& warnings() const { return warnings_; }
    bool degenerate() const { return degenerate_; }

    Vec2 project(const Vec3& p) const {
        const Vec3 d = p - origin_;
        return {dot(d, u_), dot(d, v_)};
    }

    double evaluate(const Vec3& p) const { return evaluate(project(p)); }

    double evaluate(const Vec2& q) const {
        for (std::size_t i = 0; i < sites_.size(); ++i)
            if (norm(q - sites_[i]) <= 1e-12 * scale_) return values_[i];
        if (degenerate_) return inverse_distance(q);
        if (const auto edge = outside_hull(q)) return *edge;
        return sibson(q);
    }

private:
    double inverse_distance(const Vec2& q) const {
        double wsum = 0.0, s = 0.0;
        for (std::size_t i = 0; i < sites_.size(); ++i) {
            const double d = norm(q - sites_[i]);
            const double w = 1.0 / (d * d);
            wsum += w;
            s += w * values_[i];
        }
        return clamp_to_values(s / wsum);
    }

    // Linear interpolation along the nearest hull edge when q is not strictly
    // inside the hull.
    std::optional<double> outside_hull(const Vec2& q) const {
        const double eps = 1e-9 * scale_;
        bool inside = true;
        double best = std::numeric_limits<double>::infinity();
        double value = 0.0;
        for (std::size_t e = 0; e < hull_.size(); ++e) {
            const auto ia = hull_[e], ib = hull_[(e + 1) % hull_.size()];
            const Vec2 a = sites_[ia], b = sites_[ib];
            const Vec2 d = b - a;
            const double len = norm(d);
            if (cross(d, q - a) / len <= eps) inside = false;
            const double t = std::clamp(dot(q - a, d) / (len * len), 0.0, 1.0);
            const double dist = norm(q - (a + d * t));
            if (dist < best) {
                best = dist;
                value = (1.0 - t) * values_[ia] + t * values_[ib];
            }
        }
        if (inside) return std::nullopt;
        return value;
    }

    double sibson(const Vec2& q) const {
        const std::size_t n = sites_.size();
        double half = 2.0 * scale_;
        detail::Polygon cell;
        for (int attempt = 0; attempt < 80; ++attempt, half *= 2.0) {
            cell = {{-half, -half}, {half, -half}, {half, half}, {-half, half}};
            for (std::size_t j = 0; j < n; ++j) cell = detail::clip_closer(cell, q, sites_[j]);
            bool bounded = true;
            for (const auto& p : cell) bounded = bounded && std::abs(p.x) < 0.5 * half && std::abs(p.y) < 0.5 * half;
            if (bounded) break;
        }
        const double total = detail::polygon_area(cell);
        if (!(total > 0.0)) return inverse_distance(q);
        double s = 0.0, wsum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            detail::Polygon stolen = cell;
            for (std::size_t j = 0; j < n && !stolen.empty(); ++j)
                if (j != i) stolen = detail::clip_closer(stolen, sites_[i], sites_[j]);
            const double w = stolen.size() >= 3 ? std::max(detail::polygon_area(stolen), 0.0) : 0.0;
            s += w * values_[i];
            wsum += w;
        }
        if (!(wsum > 0.0)) return inverse_distance(q);
        return clamp_to_values(s / wsum);
    }

    double clamp_to_values(double v) const {
        const auto [lo, hi] = std::minmax_element(values_.begin(), values_.end());
        return std::clamp(v, *lo, *hi);
    }

    std::vector<double> values_;
    std::vector<Vec2> sites_;
    std::vector<std::size_t> hull_;
    std::vector<std::string> warnings_;
    Vec3 origin_{}, u_{}, v_{};
    double scale_ = 0.0;
    bool degenerate_ = false;
};

struct ContourField {
    SurfaceMesh mesh;
    std::vector<double> values;  // one per vertex
    std::vector<std::string> warnings;
};

inline ContourField interpolate_contour(const SurfaceMesh& mesh, const AuricularPointSet& aps,
                                        std::span<const double> values) {
    if (aps.size() != values.size())
        fail(ErrorCode::parameter, std::to_string(aps.size()) + " APs but " + std::to_string(values.size()) + " values");
    std::vector<Vec3> sites;
    for (const auto& ap : aps.points) sites.push_back(ap.position);
    const NaturalNeighborInterpolator interp(std::move(sites), std::vector<double>(values.begin(), values.end()));
    ContourField field{mesh, std::vector<double>(mesh.vertex_count()), interp.warnings()};
    for (std::size_t v = 0; v < mesh.vertex_count(); ++v) field.values[v] = interp.evaluate(mesh.vertex(v));
    return field;
}

}  // namespace auricle
