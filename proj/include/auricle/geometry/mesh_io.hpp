#pragma once

#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "auricle/core/error.hpp"
#include "auricle/core/text.hpp"
#include "auricle/geometry/mesh.hpp"

namespace auricle {

enum class MeshFormat { obj, ply };

/// A loaded mesh plus any extra per-vertex scalar properties found in the file
/// (PLY only; e.g. an `aesr` field written by the contour exporter).
struct MeshFile {
    SurfaceMesh mesh;
    std::map<std::string, std::vector<double>> vertex_properties;
    std::vector<std::string> comments;
};

namespace detail {

[[noreturn]] inline void parse_error(std::size_t line, const std::string& what) {
    fail(ErrorCode::format, "line " + std::to_string(line) + ": " + what);
}

inline std::uint32_t resolve_obj_index(std::string_view token, std::size_t vertex_count, std::size_t line) {
    const auto slash = token.find('/');
    const auto head = token.substr(0, slash);
    const auto idx = parse_int(head);
    if (!idx || *idx == 0) parse_error(line, "bad face index '" + std::string(token) + "'");
    const long long resolved = *idx > 0 ? *idx - 1 : static_cast<long long>(vertex_count) + *idx;
    if (resolved < 0) parse_error(line, "face index out of range '" + std::string(token) + "'");
    return static_cast<std::uint32_t>(resolved);
}

}  // namespace detail

inline MeshFile parse_obj(std::istream& in, SurfaceMesh::BuildOptions options = {}) {
    std::vector<Vec3> vertices;
    std::vector<Triangle> faces;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto body = trim(std::string_view(line).substr(0, line.find('#')));
        if (body.empty()) continue;
        const auto tok = split_whitespace(body);
        if (tok[0] == "v") {
            if (tok.size() < 4) detail::parse_error(line_no, "vertex record needs 3 coordinates");
            Vec3 p;
            double* out[3] = {&p.x, &p.y, &p.z};
            for (int k = 0; k < 3; ++k) {
                const auto v = parse_double(tok[k + 1]);
                if (!v) detail::parse_error(line_no, "bad coordinate '" + std::string(tok[k + 1]) + "'");
                *out[k] = *v;
            }
            vertices.push_back(p);
        } else if (tok[0] == "f") {
            if (tok.size() < 4) detail::parse_error(line_no, "face record needs 3 indices");
            if (tok.size() > 4)
                fail(ErrorCode::unsupported_topology,
                     "line " + std::to_string(line_no) + ": face with " + std::to_string(tok.size() - 1) +
                         " vertices; only triangles are supported");
            Triangle t;
            for (int k = 0; k < 3; ++k) t[k] = detail::resolve_obj_index(tok[k + 1], vertices.size(), line_no);
            faces.push_back(t);
        }
        // vn, vt, g, o, s, usemtl, mtllib: ignored
    }
    return MeshFile{SurfaceMesh::build(std::move(vertices), std::move(faces), options), {}, {}};
}

inline MeshFile parse_ply(std::istream& in, SurfaceMesh::BuildOptions options = {}) {
    struct Property {
        std::string name;
        bool is_list = false;
    };
    struct Element {
        std::string name;
        std::size_t count = 0;
        std::vector<Property> properties;
    };

    std::string line;
    std::size_t line_no = 0;
    auto next_line = [&]() -> bool {
        if (!std::getline(in, line)) return false;
        ++line_no;
        return true;
    };

    if (!next_line() || trim(line) != "ply") detail::parse_error(line_no ? line_no : 1, "missing 'ply' magic");

    std::vector<Element> elements;
    std::vector<std::string> comments;
    bool ascii = false, header_done = false;
    while (next_line()) {
        const auto tok = split_whitespace(line);
        if (tok.empty()) continue;
        if (tok[0] == "format") {
            if (tok.size() < 2 || tok[1] != "ascii") detail::parse_error(line_no, "only ASCII PLY is supported");
            ascii = true;
        } else if (tok[0] == "comment") {
            const auto body = trim(std::string_view(line).substr(7));
            comments.emplace_back(body);
        } else if (tok[0] == "obj_info") {
        } else if (tok[0] == "element") {
            if (tok.size() != 3) detail::parse_error(line_no, "malformed element line");
            const auto n = parse_int(tok[2]);
            if (!n || *n < 0) detail::parse_error(line_no, "bad element count");
            elements.push_back({std::string(tok[1]), static_cast<std::size_t>(*n), {}});
        } else if (tok[0] == "property") {
            if (elements.empty()) detail::parse_error(line_no, "property before element");
            if (tok.size() >= 2 && tok[1] == "list") {
                if (tok.size() != 5) detail::parse_error(line_no, "malformed list property");
                elements.back().properties.push_back({std::string(tok[4]), true});
            } else {
                if (tok.size() != 3) detail::parse_error(line_no, "malformed property");
                elements.back().properties.push_back({std::string(tok[2]), false});
            }
        } else if (tok[0] == "end_header") {
            header_done = true;
            break;
        } else {
            detail::parse_error(line_no, "unknown header keyword '" + std::string(tok[0]) + "'");
        }
    }
    if (!header_done) detail::parse_error(line_no, "missing end_header");
    if (!ascii) detail::parse_error(line_no, "missing format line");

    std::vector<Vec3> vertices;
    std::vector<Triangle> faces;
    std::map<std::string, std::vector<double>> extra;

    for (const auto& el : elements) {
        const bool is_vertex = el.name == "vertex";
        const bool is_face = el.name == "face";
        int ix = -1, iy = -1, iz = -1;
        if (is_vertex) {
            for (int p = 0; p < static_cast<int>(el.properties.size()); ++p) {
                const auto& nm = el.properties[p].name;
                if (nm == "x") ix = p;
                else if (nm == "y") iy = p;
                else if (nm == "z") iz = p;
            }
            if (ix < 0 || iy < 0 || iz < 0) detail::parse_error(line_no, "vertex element lacks x/y/z");
            vertices.reserve(el.count);
        }
        for (std::size_t r = 0; r < el.count; ++r) {
            if (!next_line()) detail::parse_error(line_no + 1, "unexpected end of file in element '" + el.name + "'");
            const auto tok = split_whitespace(line);
            std::size_t pos = 0;
            std::vector<double> scalars(el.properties.size(), 0.0);
            for (std::size_t p = 0; p < el.properties.size(); ++p) {
                const auto& prop = el.properties[p];
                if (pos >= tok.size()) detail::parse_error(line_no, "too few values");
                if (prop.is_list) {
                    const auto n = parse_int(tok[pos++]);
                    if (!n || *n < 0) detail::parse_error(line_no, "bad list length");
                    if (pos + static_cast<std::size_t>(*n) > tok.size()) detail::parse_error(line_no, "truncated list");
                    if (is_face && (prop.name == "vertex_indices" || prop.name == "vertex_index")) {
                        if (*n != 3)
                            fail(ErrorCode::unsupported_topology, "line " + std::to_string(line_no) + ": face with " +
                                                                      std::to_string(*n) +
                                                                      " vertices; only triangles are supported");
                        Triangle t;
                        for (int k = 0; k < 3; ++k) {
                            const auto idx = parse_int(tok[pos + k]);
                            if (!idx || *idx < 0) detail::parse_error(line_no, "bad face index");
                            t[k] = static_cast<std::uint32_t>(*idx);
                        }
                        faces.push_back(t);
                    }
                    pos += static_cast<std::size_t>(*n);
                } else {
                    const auto v = parse_double(tok[pos]);
                    if (!v) detail::parse_error(line_no, "bad number '" + std::string(tok[pos]) + "'");
                    scalars[p] = *v;
                    ++pos;
                }
            }
            if (is_vertex) {
                vertices.push_back({scalars[ix], scalars[iy], scalars[iz]});
                for (std::size_t p = 0; p < el.properties.size(); ++p) {
                    const auto& nm = el.properties[p].name;
                    if (static_cast<int>(p) == ix || static_cast<int>(p) == iy || static_cast<int>(p) == iz ||
                        el.properties[p].is_list)
                        continue;
                    extra[nm].push_back(scalars[p]);
                }
            }
        }
    }

    MeshFile out{SurfaceMesh::build(std::move(vertices), std::move(faces), options), std::move(extra),
                 std::move(comments)};
    return out;
}

inline MeshFormat format_from_path(const std::filesystem::path& path) {
    auto ext = path.extension().string();
    for (auto& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (ext == ".obj") return MeshFormat::obj;
    if (ext == ".ply") return MeshFormat::ply;
    fail(ErrorCode::format, "cannot infer mesh format from extension of '" + path.string() + "'");
}

inline MeshFile read_mesh_file(const std::filesystem::path& path, MeshFormat format,
                               SurfaceMesh::BuildOptions options = {}) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::io, "cannot open mesh file '" + path.string() + "'");
    return format == MeshFormat::obj ? parse_obj(in, options) : parse_ply(in, options);
}

inline SurfaceMesh load_mesh(const std::filesystem::path& path, MeshFormat format) {
    return read_mesh_file(path, format).mesh;
}

inline SurfaceMesh load_mesh(const std::filesystem::path& path) { return load_mesh(path, format_from_path(path)); }

inline void write_obj(std::ostream& out, const SurfaceMesh& mesh) {
    for (const auto& v : mesh.vertices())
        out << "v " << format_double(v.x) << ' ' << format_double(v.y) << ' ' << format_double(v.z) << '\n';
    for (const auto& f : mesh.faces()) out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
}

/// ASCII PLY with optional per-vertex scalar properties (written as `double`).
inline void write_ply(std::ostream& out, const SurfaceMesh& mesh,
                      const std::vector<std::pair<std::string, const std::vector<double>*>>& scalars = {},
                      const std::vector<std::string>& comments = {}) {
    for (const auto& [name, values] : scalars)
        if (values->size() != mesh.vertex_count())
            fail(ErrorCode::parameter, "scalar '" + name + "' has wrong length for the mesh");
    out << "ply\nformat ascii 1.0\n";
    for (const auto& c : comments) out << "comment " << c << '\n';
    out << "element vertex " << mesh.vertex_count() << "\nproperty double x\nproperty double y\nproperty double z\n";
    for (const auto& [name, values] : scalars) out << "property double " << name << '\n';
    out << "element face " << mesh.face_count() << "\nproperty list uchar int vertex_indices\nend_header\n";
    for (std::size_t i = 0; i < mesh.vertex_count(); ++i) {
        const auto& v = mesh.vertex(i);
        out << format_double(v.x) << ' ' << format_double(v.y) << ' ' << format_double(v.z);
        for (const auto& [name, values] : scalars) out << ' ' << format_double((*values)[i]);
        out << '\n';
    }
    for (const auto& f : mesh.faces()) out << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
}

/// Legacy ASCII VTK PolyData with one POINT_DATA scalar field.
inline void write_vtk(std::ostream& out, const SurfaceMesh& mesh, const std::string& scalar_name,
                      const std::vector<double>& values, const std::string& title) {
    if (values.size() != mesh.vertex_count())
        fail(ErrorCode::parameter, "scalar '" + scalar_name + "' has wrong length for the mesh");
    std::string clean_title = title.substr(0, 255);
    for (auto& c : clean_title)
        if (c == '\n') c = ' ';
    out << "# vtk DataFile Version 3.0\n" << clean_title << "\nASCII\nDATASET POLYDATA\n";
    out << "POINTS " << mesh.vertex_count() << " double\n";
    for (const auto& v : mesh.vertices())
        out << format_double(v.x) << ' ' << format_double(v.y) << ' ' << format_double(v.z) << '\n';
    out << "POLYGONS " << mesh.face_count() << ' ' << 4 * mesh.face_count() << '\n';
    for (const auto& f : mesh.faces()) out << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
    out << "POINT_DATA " << mesh.vertex_count() << "\nSCALARS " << scalar_name << " double 1\nLOOKUP_TABLE default\n";
    for (double v : values) out << format_double(v) << '\n';
}

}  // namespace auricle
