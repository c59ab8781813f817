#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <utility>
#include <vector>

#include "auricle/geometry/mesh.hpp"

// Procedural test surfaces: the analytic shapes the geometry and electrode
// routines are validated against.

namespace auricle::primitives {

/// Icosahedron subdivided `levels` times and projected onto a sphere.
/// Level L has 10*4^L + 2 vertices and 20*4^L faces; faces wind outward.
inline SurfaceMesh icosphere(int levels, double radius = 1.0, const Vec3& center = {}) {
    const double t = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<Vec3> v = {{-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0}, {0, -1, t}, {0, 1, t},
                           {0, -1, -t}, {0, 1, -t}, {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}};
    for (auto& p : v) p = normalized(p);
    std::vector<Triangle> f = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
                               {11, 10, 2}, {10, 7, 6}, {7, 1, 8},   {3, 9, 4},  {3, 4, 2},   {3, 2, 6}, {3, 6, 8},
                               {3, 8, 9},   {4, 9, 5},  {2, 4, 11},  {6, 2, 10}, {8, 6, 7},   {9, 8, 1}};
    for (int level = 0; level < levels; ++level) {
        std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> mid;
        auto midpoint = [&](std::uint32_t a, std::uint32_t b) {
            const auto key = std::minmax(a, b);
            auto it = mid.find(key);
            if (it != mid.end()) return it->second;
            v.push_back(normalized(v[a] + v[b]));
            const auto idx = static_cast<std::uint32_t>(v.size() - 1);
            mid.emplace(key, idx);
            return idx;
        };
        std::vector<Triangle> next;
        next.reserve(f.size() * 4);
        for (const auto& tri : f) {
            const auto a = midpoint(tri[0], tri[1]), b = midpoint(tri[1], tri[2]), c = midpoint(tri[2], tri[0]);
            next.push_back({tri[0], a, c});
            next.push_back({tri[1], b, a});
            next.push_back({tri[2], c, b});
            next.push_back({a, b, c});
        }
        f = std::move(next);
    }
    for (auto& p : v) p = center + p * radius;
    return SurfaceMesh::build(std::move(v), std::move(f));
}

/// Regular grid in the z = height(x, y) graph form over
/// [x0, x0 + nx*h] x [y0, y0 + ny*h]; normals point toward +z.
inline SurfaceMesh height_field(int nx, int ny, double spacing, double x0, double y0,
                                const std::function<double(double, double)>& height) {
    std::vector<Vec3> v;
    v.reserve(static_cast<std::size_t>((nx + 1) * (ny + 1)));
    for (int j = 0; j <= ny; ++j)
        for (int i = 0; i <= nx; ++i) {
            const double x = x0 + i * spacing, y = y0 + j * spacing;
            v.push_back({x, y, height(x, y)});
        }
    std::vector<Triangle> f;
    f.reserve(static_cast<std::size_t>(2 * nx * ny));
    auto id = [nx](int i, int j) { return static_cast<std::uint32_t>(j * (nx + 1) + i); };
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            // Alternate the diagonal so the triangulation has no preferred direction.
            if ((i + j) % 2 == 0) {
                f.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
                f.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
            } else {
                f.push_back({id(i, j), id(i + 1, j), id(i, j + 1)});
                f.push_back({id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)});
            }
        }
    return SurfaceMesh::build(std::move(v), std::move(f));
}

/// Flat square of side `size` centred on the origin in the z = 0 plane.
inline SurfaceMesh plane(double size, double spacing) {
    const int n = static_cast<int>(std::ceil(size / spacing));
    const double h = size / n;
    return height_field(n, n, h, -size / 2, -size / 2, [](double, double) { return 0.0; });
}

/// Open cylinder about the z axis, outward normals, no caps.
inline SurfaceMesh cylinder(double radius, double height, int around, int along) {
    std::vector<Vec3> v;
    for (int j = 0; j <= along; ++j) {
        const double z = -height / 2 + height * j / along;
        // Stagger alternate rings by half a step for a more isotropic tessellation.
        const double shift = (j % 2) * 0.5;
        for (int i = 0; i < around; ++i) {
            const double a = 2.0 * std::numbers::pi * (i + shift) / around;
            v.push_back({radius * std::cos(a), radius * std::sin(a), z});
        }
    }
    std::vector<Triangle> f;
    auto id = [around](int i, int j) { return static_cast<std::uint32_t>(j * around + (i % around)); };
    for (int j = 0; j < along; ++j)
        for (int i = 0; i < around; ++i) {
            if (j % 2 == 0) {
                f.push_back({id(i, j), id(i + 1, j), id(i, j + 1)});
                f.push_back({id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)});
            } else {
                f.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
                f.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
            }
        }
    return SurfaceMesh::build(std::move(v), std::move(f));
}

/// Smooth undulating sheet, useful as a stand-in for a curved skin patch.
inline SurfaceMesh bumpy_sheet(double size, double spacing, double amplitude, double wavelength) {
    const int n = static_cast<int>(std::ceil(size / spacing));
    const double h = size / n;
    const double k = 2.0 * std::numbers::pi / wavelength;
    return height_field(n, n, h, -size / 2, -size / 2, [=](double x, double y) {
        return amplitude * std::sin(k * x) * std::cos(k * y * 0.8);
    });
}

}  // namespace auricle::primitives
