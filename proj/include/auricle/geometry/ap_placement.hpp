#pragma once

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "auricle/core/error.hpp"
#include "auricle/core/text.hpp"
#include "auricle/geometry/mesh.hpp"

namespace auricle {

/// One template entry: a label and a position in the unit cube of the ear's
/// axis-aligned bounding box.
struct TemplatePoint {
    std::string label;
    Vec3 normalized;
};

struct AuricularPoint {
    std::string label;
    Vec3 position;
    std::uint32_t face = 0;
    std::array<double, 3> barycentric{1.0, 0.0, 0.0};
};

struct AuricularPointSet {
    std::vector<AuricularPoint> points;

    std::size_t size() const { return points.size(); }
    const AuricularPoint& operator[](std::size_t i) const { return points[i]; }
};

/// "AP2" < "AP10": compare the alphabetic prefix, then the numeric suffix.
inline bool natural_label_less(const std::string& a, const std::string& b) {
    auto split_label = [](const std::string& s) {
        std::size_t i = s.size();
        while (i > 0 && std::isdigit(static_cast<unsigned char>(s[i - 1]))) --i;
        const std::string digits = s.substr(i);
        return std::pair{s.substr(0, i), digits.empty() ? -1LL : std::stoll(digits)};
    };
    return split_label(a) < split_label(b);
}

/// Parses `label x y z` lines with x, y, z in [0, 1]. Blank lines and `#`
/// comments are skipped.
inline std::vector<TemplatePoint> parse_ap_template(std::istream& in) {
    std::vector<TemplatePoint> out;
    std::set<std::string> seen;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto body = trim(std::string_view(line).substr(0, line.find('#')));
        if (body.empty()) continue;
        const auto tok = split_whitespace(body);
        const auto where = "template line " + std::to_string(line_no) + ": ";
        if (tok.size() != 4) fail(ErrorCode::format, where + "expected 'label x y z'");
        TemplatePoint tp{std::string(tok[0]), {}};
        double* dst[3] = {&tp.normalized.x, &tp.normalized.y, &tp.normalized.z};
        for (int k = 0; k < 3; ++k) {
            const auto v = parse_double(tok[k + 1]);
            if (!v) fail(ErrorCode::format, where + "bad coordinate '" + std::string(tok[k + 1]) + "'");
            if (*v < 0.0 || *v > 1.0) fail(ErrorCode::format, where + "coordinate outside [0, 1]");
            *dst[k] = *v;
        }
        if (!seen.insert(tp.label).second) fail(ErrorCode::format, where + "duplicate label '" + tp.label + "'");
        out.push_back(std::move(tp));
    }
    if (out.empty()) fail(ErrorCode::empty_input, "AP template has no points");
    return out;
}

inline std::vector<TemplatePoint> load_ap_template(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::io, "cannot open template '" + path.string() + "'");
    return parse_ap_template(in);
}

// Illustrative layouts only: no anatomical coordinates are published for the
// measurement points, so these spread the points over the concha, helix and
// lobule regions of a canonical ear bounding box.
inline const char* const default_template_10_text =
    "AP1 0.50 0.45 0.60\n"
    "AP2 0.40 0.55 0.55\n"
    "AP3 0.55 0.65 0.50\n"
    "AP4 0.35 0.75 0.45\n"
    "AP5 0.60 0.82 0.40\n"
    "AP6 0.72 0.70 0.50\n"
    "AP7 0.78 0.50 0.55\n"
    "AP8 0.70 0.30 0.60\n"
    "AP9 0.50 0.20 0.65\n"
    "AP10 0.40 0.10 0.70\n";

inline const char* const default_template_13_text =
    "AP1 0.50 0.45 0.60\n"
    "AP2 0.40 0.55 0.55\n"
    "AP3 0.47 0.60 0.52\n"
    "AP4 0.55 0.65 0.50\n"
    "AP5 0.35 0.75 0.45\n"
    "AP6 0.60 0.82 0.40\n"
    "AP7 0.66 0.76 0.45\n"
    "AP8 0.72 0.70 0.50\n"
    "AP9 0.78 0.50 0.55\n"
    "AP10 0.70 0.30 0.60\n"
    "AP11 0.60 0.25 0.62\n"
    "AP12 0.50 0.20 0.65\n"
    "AP13 0.40 0.10 0.70\n";

inline std::vector<TemplatePoint> default_template(int count) {
    if (count != 10 && count != 13) fail(ErrorCode::parameter, "default templates exist for 10 and 13 points");
    std::istringstream in(count == 10 ? default_template_10_text : default_template_13_text);
    return parse_ap_template(in);
}

/// Maps each template point through the mesh bounding box and projects it to
/// the nearest surface point. Fails when the projection distance exceeds
/// `max_distance_fraction` of the bounding-box diagonal.
inline AuricularPointSet place_aps(const SurfaceMesh& mesh, const std::vector<TemplatePoint>& layout,
                                   double max_distance_fraction = 0.2) {
    const auto& box = mesh.bounds();
    const Vec3 ext = box.extent();
    const double limit = max_distance_fraction * box.diagonal();

    std::set<std::string> labels;
    AuricularPointSet out;
    for (const auto& tp : layout) {
        if (!labels.insert(tp.label).second) fail(ErrorCode::format, "duplicate AP label '" + tp.label + "'");
        const Vec3 target{box.min.x + tp.normalized.x * ext.x, box.min.y + tp.normalized.y * ext.y,
                          box.min.z + tp.normalized.z * ext.z};
        auto sp = mesh.nearest_point(target);
        if (sp.distance > limit)
            fail(ErrorCode::placement, "cannot place " + tp.label + ": nearest surface point is " +
                                           format_double(sp.distance) + " mm away (limit " + format_double(limit) +
                                           " mm)");
        auto& b = sp.barycentric;
        for (auto& c : b) c = std::max(c, 0.0);
        const double s = b[0] + b[1] + b[2];
        for (auto& c : b) c /= s;
        out.points.push_back({tp.label, sp.position, sp.face, b});
    }
    std::stable_sort(out.points.begin(), out.points.end(),
                     [](const auto& a, const auto& b) { return natural_label_less(a.label, b.label); });
    return out;
}

}  // namespace auricle
