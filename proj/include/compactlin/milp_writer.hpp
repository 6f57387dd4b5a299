// Copyright 2026 The compactlin Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#pragma once

#include <cstddef>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "compactlin/milp_model.hpp"
#include "compactlin/rational.hpp"

namespace compactlin {

enum class MilpFormat { Lp, Mps };

namespace detail {

inline std::string number_text(const Rational& r) {
    return is_terminating(r) ? exact_decimal(r) : approx_decimal(r, 12);
}

inline bool row_is_exact(const ModelRow& r) {
    if (!is_terminating(r.rhs)) return false;
    for (const auto& [c, a] : r.terms) {
        if (!is_terminating(a)) return false;
    }
    return true;
}

inline bool model_is_exact(const LinearizedModel& m) {
    for (const auto& [c, a] : m.objective) {
        if (!is_terminating(a)) return false;
    }
    for (const auto& r : m.rows) {
        if (!row_is_exact(r)) return false;
    }
    return true;
}

/// " + 2 x1 - 0.5 y_1_2", wrapped every eight terms.
inline std::string lp_linear(const LinearizedModel& m, const Terms& terms) {
    std::string out;
    std::size_t count = 0;
    for (const auto& [c, a] : terms) {
        if (count > 0 && count % 8 == 0) out += "\n  ";
        out += sgn(a) < 0 ? " - " : (count == 0 ? " " : " + ");
        const Rational mag = abs(a);
        if (mag != 1) out += number_text(mag) + " ";
        out += m.columns[c].name;
        ++count;
    }
    if (count == 0) out += " 0 " + (m.columns.empty() ? std::string("x0") : m.columns.front().name);
    return out;
}

inline const char* lp_sense(RowSense s) {
    switch (s) {
        case RowSense::Eq: return "=";
        case RowSense::Le: return "<=";
        case RowSense::Ge: return ">=";
    }
    return "=";
}

inline std::string exact_comment(const LinearizedModel& m, const std::string& name, const Terms& terms, const Rational& rhs) {
    std::string out = "\\ exact " + name + ":";
    for (const auto& [c, a] : terms) out += " " + a.get_str() + " " + m.columns[c].name;
    out += " | rhs " + rhs.get_str() + "\n";
    return out;
}

}  // namespace detail

/// LP-format text: objective, rows in model order, bounds, binaries. x columns
/// are binary and y columns continuous in [0, 1]. Coefficients without a
/// finite decimal expansion are rounded to 12 significant digits; the header
/// says so and each affected row is preceded by an exact comment.
inline std::string write_lp(const LinearizedModel& m) {
    std::ostringstream os;
    const bool exact = detail::model_is_exact(m);
    os << "\\ compactlin linearized model\n";
    os << "\\ columns " << m.columns.size() << ", rows " << m.rows.size() << "\n";
    if (!exact) os << "\\ WARNING: some coefficients are rounded decimals; see the 'exact' comments for the true values\n";
    os << "Minimize\n";
    Terms obj(m.objective.begin(), m.objective.end());
    std::erase_if(obj, [](const auto& t) { return sgn(t.second) == 0; });
    for (const auto& [c, a] : obj) {
        if (!is_terminating(a)) {
            os << detail::exact_comment(m, "obj", obj, 0);
            break;
        }
    }
    os << " obj:" << detail::lp_linear(m, obj) << "\n";
    os << "Subject To\n";
    for (const auto& r : m.rows) {
        if (!detail::row_is_exact(r)) os << detail::exact_comment(m, r.name, r.terms, r.rhs);
        os << " " << r.name << ":" << detail::lp_linear(m, r.terms) << " " << detail::lp_sense(r.sense) << " "
           << detail::number_text(r.rhs) << "\n";
    }
    os << "Bounds\n";
    for (const auto& col : m.columns) {
        if (col.kind == ColumnKind::Y) os << " " << detail::number_text(col.lo) << " <= " << col.name << " <= " << detail::number_text(col.hi) << "\n";
    }
    os << "Binaries\n";
    std::size_t on_line = 0;
    for (const auto& col : m.columns) {
        if (col.kind != ColumnKind::X) continue;
        os << " " << col.name;
        if (++on_line == 10) {
            os << "\n";
            on_line = 0;
        }
    }
    if (on_line != 0) os << "\n";
    os << "End\n";
    return os.str();
}

/// Fixed-layout MPS with integer markers around the x columns.
inline std::string write_mps(const LinearizedModel& m) {
    std::ostringstream os;
    if (!detail::model_is_exact(m)) os << "* WARNING: some coefficients are rounded to 12 significant digits\n";
    os << "NAME          COMPACTLIN\n";
    os << "ROWS\n";
    os << " N  obj\n";
    for (const auto& r : m.rows) {
        const char* s = r.sense == RowSense::Eq ? "E" : r.sense == RowSense::Le ? "L" : "G";
        os << " " << s << "  " << r.name << "\n";
    }
    // Column-major entries.
    std::vector<std::vector<std::pair<std::string, Rational>>> by_col(m.columns.size());
    for (const auto& [c, a] : m.objective) {
        if (sgn(a) != 0) by_col[c].emplace_back("obj", a);
    }
    for (const auto& r : m.rows) {
        for (const auto& [c, a] : r.terms) by_col[c].emplace_back(r.name, a);
    }
    os << "COLUMNS\n";
    bool in_int = false;
    for (std::size_t c = 0; c < m.columns.size(); ++c) {
        const bool is_x = m.columns[c].kind == ColumnKind::X;
        if (is_x && !in_int) {
            os << "    MARKER                 'MARKER'                 'INTORG'\n";
            in_int = true;
        } else if (!is_x && in_int) {
            os << "    MARKER                 'MARKER'                 'INTEND'\n";
            in_int = false;
        }
        if (by_col[c].empty()) os << "    " << m.columns[c].name << "  obj  0\n";
        for (const auto& [row, a] : by_col[c]) os << "    " << m.columns[c].name << "  " << row << "  " << detail::number_text(a) << "\n";
    }
    if (in_int) os << "    MARKER                 'MARKER'                 'INTEND'\n";
    os << "RHS\n";
    for (const auto& r : m.rows) {
        if (sgn(r.rhs) != 0) os << "    RHS  " << r.name << "  " << detail::number_text(r.rhs) << "\n";
    }
    os << "BOUNDS\n";
    for (const auto& col : m.columns) {
        if (col.kind == ColumnKind::X) {
            os << " BV BND  " << col.name << "\n";
        } else {
            os << " UP BND  " << col.name << "  " << detail::number_text(col.hi) << "\n";
        }
    }
    os << "ENDATA\n";
    return os.str();
}

inline std::string write_milp(const LinearizedModel& m, MilpFormat f) { return f == MilpFormat::Lp ? write_lp(m) : write_mps(m); }

}  // namespace compactlin
