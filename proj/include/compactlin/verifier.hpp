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
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "compactlin/bqp_model.hpp"
#include "compactlin/exact_lp.hpp"
#include "compactlin/linearizer.hpp"
#include "compactlin/milp_model.hpp"
#include "compactlin/relaxation.hpp"

namespace compactlin {

inline constexpr int kDefaultBruteForceCap = 16;

class CapExceeded : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

/// Every x in {0,1}^n satisfying the constraints of K, as bit masks (bit i-1
/// is x_i). Throws CapExceeded when n > cap.
inline std::vector<std::uint32_t> feasible_binary_points(const BqpInstance& inst, int cap = kDefaultBruteForceCap) {
    if (inst.n > cap || inst.n > 30) {
        throw CapExceeded("n = " + std::to_string(inst.n) + " exceeds the brute-force cap " + std::to_string(cap));
    }
    std::vector<std::uint32_t> out;
    const std::uint32_t limit = std::uint32_t{1} << inst.n;
    for (std::uint32_t mask = 0; mask < limit; ++mask) {
        bool ok = true;
        for (const auto& c : inst.constraints) {
            Rational lhs = 0;
            for (const auto& [v, a] : c.terms) {
                if (mask >> (v - 1) & 1U) lhs += a;
            }
            if (c.sense == Sense::Eq ? lhs != c.rhs : lhs > c.rhs) {
                ok = false;
                break;
            }
        }
        if (ok) out.push_back(mask);
    }
    return out;
}

enum class ConsistencyStatus { UniqueAndCorrect, Ambiguous, Wrong, NoSolution };

inline const char* to_string(ConsistencyStatus s) {
    switch (s) {
        case ConsistencyStatus::UniqueAndCorrect: return "unique";
        case ConsistencyStatus::Ambiguous: return "ambiguous";
        case ConsistencyStatus::Wrong: return "wrong";
        case ConsistencyStatus::NoSolution: return "no-solution";
    }
    return "?";
}

struct ConsistencyEntry {
    std::uint32_t x = 0;  // bit mask
    ConsistencyStatus status = ConsistencyStatus::UniqueAndCorrect;
    std::optional<ProductPair> pair;  // offending product
    Rational lo, hi;                  // its range given x
    std::vector<Rational> y;          // a feasible y contradicting the product (model column order)
};

struct ConsistencyReport {
    std::vector<ConsistencyEntry> entries;  // one per K-feasible x
    bool pass() const {
        for (const auto& e : entries) {
            if (e.status != ConsistencyStatus::UniqueAndCorrect) return false;
        }
        return true;
    }
    const ConsistencyEntry* first_failure() const {
        for (const auto& e : entries) {
            if (e.status != ConsistencyStatus::UniqueAndCorrect) return &e;
        }
        return nullptr;
    }
};

namespace detail {

/// The linearization rows of `m` with x fixed to `mask`, as an LP over the
/// y columns only. Returns nullopt when an x-only row is violated.
struct FixedXProblem {
    lp::LpProblem lp;
    std::vector<std::size_t> y_cols;  // LP column -> model column
};

inline std::optional<FixedXProblem> fix_x(const LinearizedModel& m, std::uint32_t mask) {
    FixedXProblem out;
    std::map<std::size_t, std::size_t> to_lp;
    for (std::size_t c = 0; c < m.columns.size(); ++c) {
        if (m.columns[c].kind != ColumnKind::Y) continue;
        to_lp[c] = out.lp.add_column(m.columns[c].lo, m.columns[c].hi);
        out.y_cols.push_back(c);
    }
    for (const auto& r : m.rows) {
        if (!is_linearization(r.origin)) continue;
        Rational rhs = r.rhs;
        std::vector<std::pair<std::size_t, Rational>> terms;
        for (const auto& [c, a] : r.terms) {
            if (m.columns[c].kind == ColumnKind::X) {
                if (mask >> (m.columns[c].pair.i - 1) & 1U) rhs -= a;
            } else {
                terms.emplace_back(to_lp.at(c), a);
            }
        }
        if (terms.empty()) {
            const int s = sgn(rhs);  // 0 (sense) rhs
            const bool ok = r.sense == RowSense::Eq ? s == 0 : r.sense == RowSense::Le ? s >= 0 : s <= 0;
            if (!ok) return std::nullopt;
            continue;
        }
        out.lp.add_row(std::move(terms), to_lp_sense(r.sense), rhs);
    }
    return out;
}

inline int product_value(const ProductPair& p, std::uint32_t mask) {
    return (mask >> (p.i - 1) & 1U) && (mask >> (p.j - 1) & 1U) ? 1 : 0;
}

}  // namespace detail

/// For every x in {0,1}^n feasible for K, decides whether the linearization
/// rows of `model` force each y_ij to x_i x_j. With f(y) = sum_{x_i x_j = 0}
/// y_ij - sum_{x_i x_j = 1} y_ij and y in [0,1], f >= -#{x_i x_j = 1} with
/// equality only at the product values, so y is forced exactly when both the
/// minimum and the maximum of f equal that bound. Ranges are computed only for
/// the first offending product.
inline ConsistencyReport verify_integer_consistency(const BqpInstance& inst, const LinearizedModel& model,
                                                    int cap = kDefaultBruteForceCap) {
    ConsistencyReport rep;
    for (std::uint32_t mask : feasible_binary_points(inst, cap)) {
        ConsistencyEntry e;
        e.x = mask;
        auto fixed = detail::fix_x(model, mask);
        if (!fixed) {
            e.status = ConsistencyStatus::NoSolution;
            rep.entries.push_back(std::move(e));
            continue;
        }
        auto& lp = fixed->lp;
        std::vector<Rational> target(lp.columns.size());
        long ones = 0;
        for (std::size_t t = 0; t < lp.columns.size(); ++t) {
            const int v = detail::product_value(model.columns[fixed->y_cols[t]].pair, mask);
            target[t] = v;
            lp.objective[t] = v ? -1 : 1;
            ones += v;
        }
        lp.sense = lp::ObjectiveSense::Minimize;
        auto out = lp::solve(lp);
        if (out.status != lp::Status::Optimal) {
            e.status = ConsistencyStatus::NoSolution;
            rep.entries.push_back(std::move(e));
            continue;
        }
        if (out.value == Rational(-ones)) {
            lp.sense = lp::ObjectiveSense::Maximize;
            out = lp::solve(lp);
            if (out.value == Rational(-ones)) {
                rep.entries.push_back(std::move(e));
                continue;
            }
        }
        // Locate an offending column and its exact range.
        std::size_t bad = 0;
        for (std::size_t t = 0; t < target.size(); ++t) {
            if (out.point[t] != target[t]) {
                bad = t;
                break;
            }
        }
        auto range_lp = lp;
        std::fill(range_lp.objective.begin(), range_lp.objective.end(), Rational(0));
        range_lp.objective[bad] = 1;
        range_lp.sense = lp::ObjectiveSense::Minimize;
        const Rational lo = lp::solve(range_lp).value;
        range_lp.sense = lp::ObjectiveSense::Maximize;
        const Rational hi = lp::solve(range_lp).value;
        e.pair = model.columns[fixed->y_cols[bad]].pair;
        e.lo = lo;
        e.hi = hi;
        e.status = (lo <= target[bad] && target[bad] <= hi) ? ConsistencyStatus::Ambiguous : ConsistencyStatus::Wrong;
        e.y.assign(model.columns.size(), Rational(0));
        for (VarIndex v = 1; v <= inst.n; ++v) e.y[model.x_col(v)] = (mask >> (v - 1) & 1U) ? 1 : 0;
        for (std::size_t t = 0; t < out.point.size(); ++t) e.y[fixed->y_cols[t]] = out.point[t];
        rep.entries.push_back(std::move(e));
    }
    return rep;
}

enum class DominanceCase { Assignment = 2, Knapsack = 3, DoubleSelection = 4 };

inline const char* to_string(DominanceCase c) {
    switch (c) {
        case DominanceCase::Assignment: return "assignment";
        case DominanceCase::Knapsack: return "knapsack";
        case DominanceCase::DoubleSelection: return "double-selection";
    }
    return "?";
}

class HypothesisMismatch : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

/// Throws HypothesisMismatch unless every constraint has unit coefficients,
/// the case's sense and right-hand side (1, 1, 2), and for double selection
/// B^E_k = A_k.
inline void check_dominance_hypotheses(const BqpInstance& inst, const MultiplierAssignment& b, DominanceCase which) {
    if (inst.constraints.empty()) throw HypothesisMismatch("no constraints");
    const Sense want_sense = which == DominanceCase::Knapsack ? Sense::Le : Sense::Eq;
    const Rational want_rhs = which == DominanceCase::DoubleSelection ? 2 : 1;
    for (const auto& c : inst.constraints) {
        const std::string where = "constraint " + std::to_string(c.id);
        if (c.sense != want_sense) {
            throw HypothesisMismatch(where + (want_sense == Sense::Eq ? " is not an equation" : " is not an inequality"));
        }
        for (const auto& [v, a] : c.terms) {
            if (a != 1) throw HypothesisMismatch(where + " has coefficient " + to_string(a) + " on x" + std::to_string(v));
        }
        if (c.rhs != want_rhs) {
            throw HypothesisMismatch(where + " has right-hand side " + to_string(c.rhs) + ", expected " + to_string(want_rhs));
        }
        if (which == DominanceCase::DoubleSelection) {
            const auto support = c.support();
            const std::set<VarIndex> a(support.begin(), support.end());
            if (b.at(c.id).eq != a) throw HypothesisMismatch(where + " multiplier set differs from its support");
        }
    }
}

/// Detects which dominance case an instance/design pair fits, if any.
inline std::optional<DominanceCase> detect_dominance_case(const BqpInstance& inst, const MultiplierAssignment& b) {
    for (auto c : {DominanceCase::Assignment, DominanceCase::Knapsack, DominanceCase::DoubleSelection}) {
        try {
            check_dominance_hypotheses(inst, b, c);
            return c;
        } catch (const HypothesisMismatch&) {
        }
    }
    return std::nullopt;
}

struct DominanceCell {
    ProductPair pair;
    int inequality = 1;  // 1: y <= x_i, 2: y <= x_j, 3: y >= x_i + x_j - 1
    lp::Status status = lp::Status::Optimal;
    Rational max_violation;
    std::vector<Rational> point;  // maximizer over model columns
};

struct DominanceReport {
    DominanceCase which = DominanceCase::Assignment;
    std::vector<DominanceCell> cells;

    bool pass() const {
        for (const auto& c : cells) {
            if (c.status == lp::Status::Optimal && sgn(c.max_violation) > 0) return false;
        }
        return true;
    }
    const DominanceCell* worst() const {
        const DominanceCell* w = nullptr;
        for (const auto& c : cells) {
            if (c.status != lp::Status::Optimal) continue;
            if (!w || c.max_violation > w->max_violation) w = &c;
        }
        return w;
    }
};

inline bool original_or_compact(const ModelRow& r) { return r.origin == RowOrigin::Original || is_compact(r.origin); }

/// Maximizes each standard inequality's violation over the continuous
/// relaxation (original rows plus compact rows, x and y in [0,1]). Passes when
/// every maximum is <= 0, which proves the inequalities are implied.
inline DominanceReport verify_dominance(const BqpInstance& inst, const MultiplierAssignment& b, DominanceCase which,
                                        bool enforce_hypotheses = true) {
    if (enforce_hypotheses) check_dominance_hypotheses(inst, b, which);
    const auto model = compact_linearize(inst, b);
    DominanceReport rep;
    rep.which = which;
    for (const auto& [pair, ycol] : model.y_index) {
        const std::size_t xi = model.x_col(pair.i), xj = model.x_col(pair.j);
        const LinearExpr exprs[3] = {
            {{{xi, Rational(-1)}, {ycol, Rational(1)}}, 0},
            {{{xj, Rational(-1)}, {ycol, Rational(1)}}, 0},
            {{{xi, Rational(1)}, {xj, Rational(1)}, {ycol, Rational(-1)}}, Rational(-1)},
        };
        for (int w = 0; w < 3; ++w) {
            auto res = maximize_violation(model, exprs[w], original_or_compact);
            DominanceCell cell;
            cell.pair = pair;
            cell.inequality = w + 1;
            cell.status = res.status;
            cell.max_violation = res.value;
            cell.point = std::move(res.point);
            rep.cells.push_back(std::move(cell));
        }
    }
    return rep;
}

struct SamplingResult {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::size_t violations = 0;
};

/// Secondary sanity layer for dominance: x is a random convex combination of
/// K-feasible binary points, y comes from an LP with a random objective over
/// the compact rows with x fixed, and the standard inequalities are checked
/// at the resulting point.
inline SamplingResult sample_dominance(const BqpInstance& inst, const LinearizedModel& model, std::size_t samples,
                                       std::uint64_t seed, int cap = kDefaultBruteForceCap) {
    SamplingResult res;
    const auto points = feasible_binary_points(inst, cap);
    if (points.empty()) return res;
    std::mt19937_64 rng(seed);
    auto draw = [&](std::uint64_t bound) { return rng() % bound; };
    for (std::size_t s = 0; s < samples; ++s) {
        std::map<std::size_t, Rational> fixed;
        std::vector<Rational> x(static_cast<std::size_t>(inst.n), Rational(0));
        const std::size_t parts = 1 + draw(3);
        std::vector<long> weights(parts);
        long total = 0;
        for (auto& w : weights) total += (w = static_cast<long>(1 + draw(7)));
        for (std::size_t t = 0; t < parts; ++t) {
            const std::uint32_t mask = points[draw(points.size())];
            for (int v = 0; v < inst.n; ++v) {
                if (mask >> v & 1U) x[static_cast<std::size_t>(v)] += make_rational(weights[t], total);
            }
        }
        for (VarIndex v = 1; v <= inst.n; ++v) fixed[model.x_col(v)] = x[static_cast<std::size_t>(v - 1)];
        LinearExpr obj;
        for (const auto& [pair, col] : model.y_index) obj.terms.emplace_back(col, Rational(static_cast<long>(draw(5)) - 2));
        auto r = maximize_violation(model, obj, original_or_compact, fixed);
        if (r.status != lp::Status::Optimal) {
            ++res.rejected;
            continue;
        }
        ++res.accepted;
        for (const auto& [pair, col] : model.y_index) {
            const Rational& y = r.point[col];
            const Rational& xi = r.point[model.x_col(pair.i)];
            const Rational& xj = r.point[model.x_col(pair.j)];
            if (y > xi || y > xj || y < xi + xj - 1) {
                ++res.violations;
                break;
            }
        }
    }
    return res;
}

enum class StrictStatus { Found, NoneFound, NotApplicable };

struct StrictWitness {
    std::string row;               // violated compact row
    Rational violation;            // |lhs - rhs| at the point
    std::vector<Rational> point;   // over the standard-linearization model's columns
};

struct StrictResult {
    StrictStatus status = StrictStatus::NotApplicable;
    std::string reason;
    std::optional<StrictWitness> witness;
};

/// Precondition for the strict-dominance search: a design using only
/// equations whose induced off-diagonal products are exactly those of P.
inline std::optional<std::string> strict_not_applicable(const BqpInstance& inst, const MultiplierAssignment& b) {
    for (const auto& m : b.memberships()) {
        if (m.kind != MultiplierKind::Eq) return "design multiplies inequalities";
    }
    if (b.empty()) return "empty design";
    const auto q = induce_products(inst, b);
    std::set<ProductPair> p_off;
    for (const auto& p : linearizable_products(inst)) {
        if (!p.is_square()) p_off.insert(p);
    }
    const auto q_off_vec = q.off_diagonal();
    const std::set<ProductPair> q_off(q_off_vec.begin(), q_off_vec.end());
    if (q_off != p_off) return "Q differs from P after square elimination";
    return std::nullopt;
}

/// Searches the standard linearization's relaxation (original rows plus the
/// three inequalities per product) for a point that violates some compact
/// equation. The returned point is re-checked by substitution.
inline StrictResult find_strict_dominance_witness(const BqpInstance& inst, const MultiplierAssignment& b) {
    StrictResult res;
    if (auto why = strict_not_applicable(inst, b)) {
        res.reason = *why;
        return res;
    }
    const auto compact = compact_linearize(inst, b);
    const auto gw = glover_woolsey(inst);
    auto keep = [](const ModelRow& r) { return r.origin == RowOrigin::Original || is_glover_woolsey(r.origin); };
    res.status = StrictStatus::NoneFound;
    for (const auto& row : compact.rows) {
        if (!is_compact(row.origin)) continue;
        LinearExpr diff;
        for (const auto& [c, a] : row.terms) {
            const auto& col = compact.columns[c];
            const std::size_t target = col.kind == ColumnKind::X ? gw.x_col(col.pair.i) : *gw.y_col(col.pair);
            diff.terms.emplace_back(target, a);
        }
        diff.constant = -row.rhs;
        for (int sign : {1, -1}) {
            if (row.sense != RowSense::Eq && sign < 0) continue;
            LinearExpr e = diff;
            for (auto& t : e.terms) t.second *= sign;
            e.constant *= sign;
            auto r = maximize_violation(gw, e, keep);
            if (r.status != lp::Status::Optimal || sgn(r.value) <= 0) continue;
            // Substitution check on both memberships.
            for (const auto& gr : gw.rows) {
                if (keep(gr) && !gw.row_satisfied(gr, r.point)) throw std::logic_error("witness violates the standard relaxation");
            }
            Rational lhs = 0;
            for (const auto& [c, a] : e.terms) lhs += a * r.point[c];
            if (lhs + e.constant != r.value) throw std::logic_error("witness violation mismatch");
            res.status = StrictStatus::Found;
            res.witness = StrictWitness{row.name, r.value, r.point};
            return res;
        }
    }
    return res;
}

}  // namespace compactlin
