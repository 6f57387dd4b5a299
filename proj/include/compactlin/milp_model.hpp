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

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "compactlin/bqp_model.hpp"

namespace compactlin {

enum class ColumnKind { X, Y };

struct ModelColumn {
    std::string name;
    ColumnKind kind = ColumnKind::X;
    ProductPair pair{};  // x columns use pair.i == pair.j == variable
    Rational lo = 0;
    Rational hi = 1;
};

enum class RowOrigin {
    Original,       // a constraint of K
    CompactE,       // equation k multiplied by x_j
    CompactIPlus,   // inequality k multiplied by x_j
    CompactIMinus,  // inequality k multiplied by (1 - x_j)
    GW1,            // y_ij <= x_i
    GW2,            // y_ij <= x_j
    GW3,            // y_ij >= x_i + x_j - 1
    Passthrough,
};

inline bool is_compact(RowOrigin o) {
    return o == RowOrigin::CompactE || o == RowOrigin::CompactIPlus || o == RowOrigin::CompactIMinus;
}
inline bool is_glover_woolsey(RowOrigin o) { return o == RowOrigin::GW1 || o == RowOrigin::GW2 || o == RowOrigin::GW3; }
/// Rows that define the y variables (as opposed to the original problem).
inline bool is_linearization(RowOrigin o) { return is_compact(o) || is_glover_woolsey(o); }

using Terms = std::vector<std::pair<std::size_t, Rational>>;

struct ModelRow {
    std::string name;
    RowOrigin origin = RowOrigin::Original;
    int k = 0;          // originating constraint, compact and original rows
    VarIndex j = 0;     // multiplier, compact rows
    ProductPair pair{};  // linearized product, GW rows
    Terms terms;        // column index -> coefficient, sorted by column
    RowSense sense = RowSense::Eq;
    Rational rhs = 0;
};

/// Affine function over model columns.
struct LinearExpr {
    Terms terms;
    Rational constant = 0;
};

/// A MILP over binary x and continuous y in [0,1]. Columns 0..n-1 are x_1..x_n
/// in order; y columns follow in ascending pair order.
struct LinearizedModel {
    int n = 0;
    std::vector<ModelColumn> columns;
    std::vector<ModelRow> rows;
    std::map<std::size_t, Rational> objective;
    std::map<ProductPair, std::size_t> y_index;

    std::size_t x_col(VarIndex v) const { return static_cast<std::size_t>(v - 1); }

    std::optional<std::size_t> y_col(const ProductPair& p) const {
        auto it = y_index.find(p);
        if (it == y_index.end()) return std::nullopt;
        return it->second;
    }

    std::size_t count(RowOrigin o) const {
        return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [o](const ModelRow& r) { return r.origin == o; }));
    }
    std::size_t count_compact() const {
        return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const ModelRow& r) { return is_compact(r.origin); }));
    }
    std::size_t count_glover_woolsey() const {
        return static_cast<std::size_t>(
            std::count_if(rows.begin(), rows.end(), [](const ModelRow& r) { return is_glover_woolsey(r.origin); }));
    }
    std::size_t num_y() const { return y_index.size(); }

    const ModelRow* find_row(const std::string& name) const {
        for (const auto& r : rows) {
            if (r.name == name) return &r;
        }
        return nullptr;
    }

    /// Value of a row's left-hand side minus its right-hand side at `point`.
    Rational row_slack(const ModelRow& r, const std::vector<Rational>& point) const {
        Rational lhs = 0;
        for (const auto& [c, a] : r.terms) lhs += a * point[c];
        return lhs - r.rhs;
    }

    bool row_satisfied(const ModelRow& r, const std::vector<Rational>& point) const {
        const Rational d = row_slack(r, point);
        switch (r.sense) {
            case RowSense::Eq: return sgn(d) == 0;
            case RowSense::Le: return sgn(d) <= 0;
            case RowSense::Ge: return sgn(d) >= 0;
        }
        return false;
    }
};

namespace detail {
/// Merges duplicate columns and drops zeros; result sorted by column.
inline Terms normalize_terms(std::map<std::size_t, Rational> acc) {
    Terms out;
    for (auto& [c, a] : acc) {
        if (sgn(a) != 0) out.emplace_back(c, std::move(a));
    }
    return out;
}
}  // namespace detail

}  // namespace compactlin
