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
#include <functional>
#include <map>
#include <vector>

#include "compactlin/exact_lp.hpp"
#include "compactlin/milp_model.hpp"

namespace compactlin {

using RowFilter = std::function<bool(const ModelRow&)>;

inline bool all_rows(const ModelRow&) { return true; }

inline lp::RowSense to_lp_sense(RowSense s) {
    switch (s) {
        case RowSense::Eq: return lp::RowSense::Eq;
        case RowSense::Le: return lp::RowSense::Le;
        case RowSense::Ge: return lp::RowSense::Ge;
    }
    return lp::RowSense::Eq;
}

/// Continuous relaxation: every column in its [lo, hi] box, the selected rows,
/// and optional fixings column -> value.
inline lp::LpProblem relaxation(const LinearizedModel& m, const RowFilter& keep = all_rows,
                                const std::map<std::size_t, Rational>& fixed = {}) {
    lp::LpProblem p;
    for (std::size_t c = 0; c < m.columns.size(); ++c) {
        auto it = fixed.find(c);
        if (it != fixed.end()) {
            p.add_column(it->second, it->second);
        } else {
            p.add_column(m.columns[c].lo, m.columns[c].hi);
        }
    }
    for (const auto& r : m.rows) {
        if (!keep(r)) continue;
        p.add_row(r.terms, to_lp_sense(r.sense), r.rhs);
    }
    return p;
}

struct ViolationResult {
    lp::Status status = lp::Status::Infeasible;
    Rational value;               // max of the expression; meaningful when Optimal
    std::vector<Rational> point;  // maximizer over model columns
    bool implied() const { return status == lp::Status::Optimal && sgn(value) <= 0; }
};

/// Maximum of `expr` over the LP relaxation of `m`. A value <= 0 certifies that
/// expr <= 0 is implied by the relaxation; an Infeasible status means the
/// implication holds vacuously.
inline ViolationResult maximize_violation(const LinearizedModel& m, const LinearExpr& expr, const RowFilter& keep = all_rows,
                                          const std::map<std::size_t, Rational>& fixed = {}) {
    auto p = relaxation(m, keep, fixed);
    p.sense = lp::ObjectiveSense::Maximize;
    for (const auto& [c, a] : expr.terms) p.objective[c] += a;
    const auto out = lp::solve(p);
    ViolationResult res;
    res.status = out.status;
    if (out.status == lp::Status::Optimal) {
        res.value = out.value + expr.constant;
        res.point = out.point;
    }
    return res;
}

}  // namespace compactlin
