#pragma once

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "auricle/acquisition/cohort.hpp"
#include "auricle/acquisition/session.hpp"
#include "auricle/core/error.hpp"
#include "auricle/core/linalg.hpp"
#include "auricle/core/text.hpp"

namespace auricle {

/// M datasets (rows) by N APs (columns), each row labelled.
struct AESRMatrix {
    std::vector<std::string> labels;
    Matrix values;

    std::size_t rows() const { return values.rows(); }
    std::size_t cols() const { return values.cols(); }

    void validate() const {
        if (labels.size() != values.rows()) fail(ErrorCode::format, "label count does not match row count");
        for (std::size_t r = 0; r < values.rows(); ++r)
            for (double v : values.row(r))
                if (!(std::isfinite(v) && v > 0.0))
                    fail(ErrorCode::domain, "row " + std::to_string(r + 1) + " (" + labels[r] + ") has a non-positive value");
    }

    static AESRMatrix from_rows(std::vector<std::string> labels, const std::vector<std::vector<double>>& rows) {
        AESRMatrix m;
        const std::size_t n = rows.empty() ? 0 : rows.front().size();
        m.values = Matrix(rows.size(), n);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].size() != n) fail(ErrorCode::format, "row " + std::to_string(r + 1) + " has the wrong length");
            std::copy(rows[r].begin(), rows[r].end(), m.values.row(r).begin());
        }
        m.labels = std::move(labels);
        m.validate();
        return m;
    }
};

inline AESRMatrix cohort_matrix(const Cohort& cohort) {
    std::vector<std::string> labels;
    std::vector<std::vector<double>> rows;
    for (const auto& r : cohort.rows) {
        labels.push_back(r.label);
        rows.push_back(r.aesr);
    }
    return AESRMatrix::from_rows(std::move(labels), rows);
}

/// Dataset CSV: optional leading '#' comment lines, a header
/// `label,AP1,...,APN`, then one row per dataset.
inline AESRMatrix read_dataset_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    std::size_t n = 0;
    bool header = false;
    std::vector<std::string> labels;
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        ++line_no;
        const auto t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        const auto cells = split(t, ',');
        if (!header) {
            if (cells.size() < 2 || trim(cells[0]) != "label")
                fail(ErrorCode::format, "line " + std::to_string(line_no) + ": expected header 'label,AP1,...'");
            n = cells.size() - 1;
            header = true;
            continue;
        }
        const std::string where = "row " + std::to_string(rows.size() + 1) + " (line " + std::to_string(line_no) + ")";
        if (cells.size() != n + 1)
            fail(ErrorCode::format, where + ": expected " + std::to_string(n + 1) + " cells, got " +
                                        std::to_string(cells.size()));
        std::vector<double> row(n);
        for (std::size_t j = 0; j < n; ++j) {
            const auto v = parse_double(cells[j + 1]);
            if (!v) fail(ErrorCode::format, where + ": cell " + std::to_string(j + 2) + " is not a number");
            if (!(std::isfinite(*v) && *v > 0.0))
                fail(ErrorCode::format, where + ": cell " + std::to_string(j + 2) + " must be positive");
            row[j] = *v;
        }
        labels.emplace_back(trim(cells[0]));
        rows.push_back(std::move(row));
    }
    if (!header) fail(ErrorCode::format, "dataset has no header line");
    if (rows.empty()) fail(ErrorCode::empty_input, "dataset has no rows");
    return AESRMatrix::from_rows(std::move(labels), rows);
}

inline AESRMatrix read_dataset_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::io, "cannot open " + path);
    return read_dataset_csv(in);
}

inline void write_dataset_csv(std::ostream& out, const AESRMatrix& m, const std::vector<std::string>& comments = {}) {
    for (const auto& c : comments) out << "# " << c << '\n';
    out << "label";
    for (std::size_t j = 0; j < m.cols(); ++j) out << ",AP" << (j + 1);
    out << '\n';
    for (std::size_t r = 0; r < m.rows(); ++r) {
        out << m.labels[r];
        for (double v : m.values.row(r)) out << ',' << format_double(v);
        out << '\n';
    }
}

}  // namespace auricle
