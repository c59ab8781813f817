#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "auricle/core/error.hpp"
#include "auricle/core/vec3.hpp"

namespace auricle {

using Triangle = std::array<std::uint32_t, 3>;

struct BoundingBox {
    Vec3 min{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
             std::numeric_limits<double>::infinity()};
    Vec3 max{-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
             -std::numeric_limits<double>::infinity()};

    void expand(const Vec3& p) {
        min = {std::min(min.x, p.x), std::min(min.y, p.y), std::min(min.z, p.z)};
        max = {std::max(max.x, p.x), std::max(max.y, p.y), std::max(max.z, p.z)};
    }
    Vec3 extent() const { return max - min; }
    Vec3 center() const { return (min + max) * 0.5; }
    double diagonal() const { return norm(extent()); }
};

/// A point on the surface expressed on one face.
struct SurfacePoint {
    std::uint32_t face = 0;
    std::array<double, 3> barycentric{1.0, 0.0, 0.0};
    Vec3 position;
    double distance = 0.0;  // from the query point, when produced by a projection
};

/// Closest point on triangle abc to p, with barycentric coordinates that are
/// nonnegative and sum to one.
inline std::pair<Vec3, std::array<double, 3>> closest_point_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b,
                                                                        const Vec3& c) {
    const Vec3 ab = b - a, ac = c - a, ap = p - a;
    const double d1 = dot(ab, ap), d2 = dot(ac, ap);
    if (d1 <= 0.0 && d2 <= 0.0) return {a, {1.0, 0.0, 0.0}};

    const Vec3 bp = p - b;
    const double d3 = dot(ab, bp), d4 = dot(ac, bp);
    if (d3 >= 0.0 && d4 <= d3) return {b, {0.0, 1.0, 0.0}};

    const double vc = d1 * d4 - d3 * d2;
    if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) {
        const double v = d1 / (d1 - d3);
        return {a + ab * v, {1.0 - v, v, 0.0}};
    }

    const Vec3 cp = p - c;
    const double d5 = dot(ab, cp), d6 = dot(ac, cp);
    if (d6 >= 0.0 && d5 <= d6) return {c, {0.0, 0.0, 1.0}};

    const double vb = d5 * d2 - d1 * d6;
    if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) {
        const double w = d2 / (d2 - d6);
        return {a + ac * w, {1.0 - w, 0.0, w}};
    }

    const double va = d3 * d6 - d5 * d4;
    if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) {
        const double w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
        return {b + (c - b) * w, {0.0, 1.0 - w, w}};
    }

    const double denom = 1.0 / (va + vb + vc);
    const double v = vb * denom, w = vc * denom;
    return {a + ab * v + ac * w, {1.0 - v - w, v, w}};
}

/// Validated, immutable triangle mesh in millimetres. Copies share the
/// underlying storage.
class SurfaceMesh {
public:
    struct BuildOptions {
        double degenerate_area = 1e-12;  // mm^2
        bool drop_degenerate = true;     // false: reject instead
    };

    SurfaceMesh() = default;

    static SurfaceMesh build(std::vector<Vec3> vertices, std::vector<Triangle> faces, BuildOptions options) {
        if (vertices.empty() || faces.empty()) fail(ErrorCode::empty_input, "mesh has no vertices or no faces");
        for (std::size_t i = 0; i < vertices.size(); ++i)
            if (!is_finite(vertices[i]))
                fail(ErrorCode::format, "vertex " + std::to_string(i) + " has a non-finite coordinate");

        auto data = std::make_shared<Data>();
        data->vertices = std::move(vertices);
        const auto nv = data->vertices.size();

        data->faces.reserve(faces.size());
        for (std::size_t f = 0; f < faces.size(); ++f) {
            const auto& t = faces[f];
            for (auto idx : t)
                if (idx >= nv)
                    fail(ErrorCode::format, "face " + std::to_string(f) + " references vertex " + std::to_string(idx) +
                                                " but the mesh has " + std::to_string(nv));
            const Vec3& a = data->vertices[t[0]];
            const Vec3 n = cross(data->vertices[t[1]] - a, data->vertices[t[2]] - a);
            const double area = 0.5 * norm(n);
            if (!(area >= options.degenerate_area) || t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) {
                if (!options.drop_degenerate) fail(ErrorCode::format, "face " + std::to_string(f) + " is degenerate");
                ++data->dropped_faces;
                continue;
            }
            data->faces.push_back(t);
            data->face_areas.push_back(area);
            data->face_normals.push_back(n / (2.0 * area));
        }
        if (data->faces.empty()) fail(ErrorCode::empty_input, "mesh has no non-degenerate faces");

        data->finish();
        SurfaceMesh mesh;
        mesh.data_ = std::move(data);
        return mesh;
    }

    static SurfaceMesh build(std::vector<Vec3> vertices, std::vector<Triangle> faces) {
        return build(std::move(vertices), std::move(faces), BuildOptions{});
    }

    std::size_t vertex_count() const { return data_ ? data_->vertices.size() : 0; }
    std::size_t face_count() const { return data_ ? data_->faces.size() : 0; }
    std::size_t dropped_faces() const { return data_ ? data_->dropped_faces : 0; }

    const std::vector<Vec3>& vertices() const { return data_->vertices; }
    const std::vector<Triangle>& faces() const { return data_->faces; }
    const Vec3& vertex(std::size_t i) const { return data_->vertices[i]; }
    const Triangle& face(std::size_t f) const { return data_->faces[f]; }

    /// Unit per-vertex normals (area-weighted face normals). Vertices not used
    /// by any face get +z.
    const std::vector<Vec3>& vertex_normals() const { return data_->vertex_normals; }
    const Vec3& face_normal(std::size_t f) const { return data_->face_normals[f]; }
    double face_area(std::size_t f) const { return data_->face_areas[f]; }
    double total_area() const {
        double s = 0.0;
        for (double a : data_->face_areas) s += a;
        return s;
    }

    /// Sorted 1-ring vertex neighbours.
    const std::vector<std::uint32_t>& vertex_neighbors(std::size_t v) const { return data_->vertex_neighbors[v]; }
    /// Faces sharing an edge with face f.
    const std::vector<std::uint32_t>& face_neighbors(std::size_t f) const { return data_->face_neighbors[f]; }
    const std::vector<std::uint32_t>& vertex_faces(std::size_t v) const { return data_->vertex_faces[v]; }
    bool is_boundary_vertex(std::size_t v) const { return data_->boundary_vertex[v] != 0; }

    const BoundingBox& bounds() const { return data_->bounds; }

    Vec3 corner(std::size_t f, int k) const { return data_->vertices[data_->faces[f][k]]; }

    Vec3 point_on_face(std::size_t f, const std::array<double, 3>& bary) const {
        return corner(f, 0) * bary[0] + corner(f, 1) * bary[1] + corner(f, 2) * bary[2];
    }

    /// Barycentric interpolation of the vertex normals, renormalised.
    Vec3 interpolated_normal(std::size_t f, const std::array<double, 3>& bary) const {
        const auto& t = data_->faces[f];
        const auto& n = data_->vertex_normals;
        const Vec3 v = normalized(n[t[0]] * bary[0] + n[t[1]] * bary[1] + n[t[2]] * bary[2]);
        return squared_norm(v) > 0.0 ? v : data_->face_normals[f];
    }

    /// Nearest point on the surface (brute force; lowest face index on ties).
    SurfacePoint nearest_point(const Vec3& p) const {
        SurfacePoint best;
        best.distance = std::numeric_limits<double>::infinity();
        for (std::uint32_t f = 0; f < data_->faces.size(); ++f) {
            auto [q, bary] = closest_point_on_triangle(p, corner(f, 0), corner(f, 1), corner(f, 2));
            const double d = distance(p, q);
            if (d < best.distance) best = SurfacePoint{f, bary, q, d};
        }
        return best;
    }

    SurfaceMesh transformed(double scale, const Vec3& offset) const {
        std::vector<Vec3> v = data_->vertices;
        for (auto& p : v) p = p * scale + offset;
        return build(std::move(v), data_->faces);
    }

private:
    struct Data {
        std::vector<Vec3> vertices;
        std::vector<Triangle> faces;
        std::vector<double> face_areas;
        std::vector<Vec3> face_normals;
        std::vector<Vec3> vertex_normals;
        std::vector<std::vector<std::uint32_t>> vertex_neighbors;
        std::vector<std::vector<std::uint32_t>> vertex_faces;
        std::vector<std::vector<std::uint32_t>> face_neighbors;
        std::vector<char> boundary_vertex;
        BoundingBox bounds;
        std::size_t dropped_faces = 0;

        void finish() {
            const auto nv = vertices.size();
            for (const auto& p : vertices) bounds.expand(p);

            vertex_normals.assign(nv, Vec3{});
            vertex_neighbors.assign(nv, {});
            vertex_faces.assign(nv, {});
            boundary_vertex.assign(nv, 0);
            face_neighbors.assign(faces.size(), {});

            std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<std::uint32_t>> edges;
            for (std::uint32_t f = 0; f < faces.size(); ++f) {
                const auto& t = faces[f];
                for (int k = 0; k < 3; ++k) {
                    vertex_normals[t[k]] += face_normals[f] * face_areas[f];
                    vertex_faces[t[k]].push_back(f);
                    const auto a = t[k], b = t[(k + 1) % 3];
                    vertex_neighbors[a].push_back(b);
                    vertex_neighbors[b].push_back(a);
                    edges[{std::min(a, b), std::max(a, b)}].push_back(f);
                }
            }
            for (auto& nb : vertex_neighbors) {
                std::sort(nb.begin(), nb.end());
                nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
            }
            for (const auto& [edge, fs] : edges) {
                if (fs.size() == 1) {
                    boundary_vertex[edge.first] = 1;
                    boundary_vertex[edge.second] = 1;
                }
                for (auto f : fs)
                    for (auto g : fs)
                        if (f != g) face_neighbors[f].push_back(g);
            }
            for (auto& nb : face_neighbors) {
                std::sort(nb.begin(), nb.end());
                nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
            }
            for (std::size_t v = 0; v < nv; ++v) {
                Vec3 n = normalized(vertex_normals[v]);
                if (squared_norm(n) == 0.0)
                    n = vertex_faces[v].empty() ? Vec3{0, 0, 1} : face_normals[vertex_faces[v].front()];
                vertex_normals[v] = n;
            }
        }
    };

    std::shared_ptr<const Data> data_;
};

}  // namespace auricle
