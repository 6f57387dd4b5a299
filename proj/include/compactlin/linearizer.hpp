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
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "compactlin/bqp_model.hpp"
#include "compactlin/milp_model.hpp"
#include "compactlin/multipliers.hpp"

namespace compactlin {

/// One way a product got into Q: constraint k multiplied by (a function of)
/// x_j contributes the term alpha_i x_i x_j.
struct Induction {
    int k = 0;
    MultiplierKind kind = MultiplierKind::Eq;
    VarIndex j = 0;
    VarIndex i = 0;

    friend auto operator<=>(const Induction&, const Induction&) = default;
};

struct InducedProducts {
    std::set<ProductPair> pairs;
    std::map<ProductPair, std::vector<Induction>> provenance;

    bool contains(const ProductPair& p) const { return pairs.count(p) != 0; }
    std::size_t size() const { return pairs.size(); }

    std::vector<ProductPair> squares() const {
        std::vector<ProductPair> out;
        for (const auto& p : pairs) {
            if (p.is_square()) out.push_back(p);
        }
        return out;
    }
    std::vector<ProductPair> off_diagonal() const {
        std::vector<ProductPair> out;
        for (const auto& p : pairs) {
            if (!p.is_square()) out.push_back(p);
        }
        return out;
    }
};

/// Q = {(i,j) ordered : some k has i in A_k and j in B_k (or vice versa)}.
inline InducedProducts induce_products(const BqpInstance& inst, const MultiplierAssignment& b) {
    InducedProducts q;
    for (const auto& m : b.memberships()) {
        const auto& c = inst.constraint(m.k);
        for (const auto& [i, alpha] : c.terms) {
            const auto p = ProductPair::ordered(i, m.j);
            q.pairs.insert(p);
            q.provenance[p].push_back({m.k, m.kind, m.j, i});
        }
    }
    return q;
}

struct ConditionWitness {
    int k = 0;
    MultiplierKind kind = MultiplierKind::Eq;
    /// For condition 3: true when the membership multiplies the constraint
    /// containing pair.i by pair.j (the "k" side), false for the "l" side.
    bool first_side = true;
};

struct PairConditions {
    ProductPair pair;
    std::optional<ConditionWitness> c1, c2, c3;

    /// Condition 3 comes for free because an equation witnesses it.
    bool c3_implied() const { return c3 && c3->kind == MultiplierKind::Eq; }
    bool ok() const { return c1 && c2 && c3; }
    int first_missing() const { return !c1 ? 1 : !c2 ? 2 : !c3 ? 3 : 0; }
};

struct ConditionReport {
    std::vector<PairConditions> pairs;
    /// Linearizable products of P that Q does not contain.
    std::vector<ProductPair> uncovered;

    /// Squares are resolved by substituting x_j for y_jj, so their conditions
    /// are reported but not required.
    bool satisfied() const {
        if (!uncovered.empty()) return false;
        return std::all_of(pairs.begin(), pairs.end(), [](const PairConditions& p) { return p.pair.is_square() || p.ok(); });
    }
    bool satisfied_including_squares() const {
        return uncovered.empty() && std::all_of(pairs.begin(), pairs.end(), [](const PairConditions& p) { return p.ok(); });
    }
    const PairConditions* find(const ProductPair& p) const {
        for (const auto& pc : pairs) {
            if (pc.pair == p) return &pc;
        }
        return nullptr;
    }
    /// First off-diagonal pair missing a condition, if any.
    const PairConditions* first_violation() const {
        for (const auto& pc : pairs) {
            if (!pc.pair.is_square() && !pc.ok()) return &pc;
        }
        return nullptr;
    }
};

namespace detail {
/// Some constraint containing `a` has `b` among the given multiplier kinds;
/// equations are preferred as witnesses.
inline std::optional<ConditionWitness> find_witness(const BqpInstance& inst, const MultiplierAssignment& b, VarIndex a,
                                                    VarIndex mult, MultiplierKind ineq_kind, bool first_side) {
    std::optional<ConditionWitness> best;
    for (const auto& c : inst.constraints) {
        if (!c.contains(a)) continue;
        if (c.sense == Sense::Eq) {
            if (b.contains(c.id, MultiplierKind::Eq, mult)) return ConditionWitness{c.id, MultiplierKind::Eq, first_side};
        } else if (!best && b.contains(c.id, ineq_kind, mult)) {
            best = ConditionWitness{c.id, ineq_kind, first_side};
        }
    }
    return best;
}
}  // namespace detail

inline ConditionReport check_conditions(const BqpInstance& inst, const MultiplierAssignment& b, const InducedProducts& q) {
    ConditionReport rep;
    for (const auto& p : q.pairs) {
        PairConditions pc;
        pc.pair = p;
        pc.c1 = detail::find_witness(inst, b, p.i, p.j, MultiplierKind::IPlus, true);
        pc.c2 = detail::find_witness(inst, b, p.j, p.i, MultiplierKind::IPlus, false);
        auto side_k = detail::find_witness(inst, b, p.i, p.j, MultiplierKind::IMinus, true);
        auto side_l = detail::find_witness(inst, b, p.j, p.i, MultiplierKind::IMinus, false);
        if (side_k && side_k->kind == MultiplierKind::Eq) {
            pc.c3 = side_k;
        } else if (side_l && side_l->kind == MultiplierKind::Eq) {
            pc.c3 = side_l;
        } else {
            pc.c3 = side_k ? side_k : side_l;
        }
        rep.pairs.push_back(pc);
    }
    for (const auto& p : linearizable_products(inst)) {
        if (!q.contains(p)) rep.uncovered.push_back(p);
    }
    return rep;
}

/// Thrown when a design does not satisfy the consistency conditions for some
/// product (condition 0 means a product of P is not induced at all).
class ConditionViolation : public std::runtime_error {
 public:
    ConditionViolation(ProductPair pair, int condition)
        : std::runtime_error(describe(pair, condition)), pair_(pair), condition_(condition) {}

    const ProductPair& pair() const { return pair_; }
    int condition() const { return condition_; }

 private:
    static std::string describe(const ProductPair& p, int c) {
        if (c == 0) return "product " + to_string(p) + " of P is not induced by the design";
        return "product " + to_string(p) + " violates Condition " + std::to_string(c);
    }
    ProductPair pair_;
    int condition_;
};

inline std::string compact_row_name(RowOrigin o, int k, VarIndex j) {
    const char* tag = o == RowOrigin::CompactE ? "E" : o == RowOrigin::CompactIPlus ? "Ip" : "Im";
    return std::string("CL_") + tag + "_k" + std::to_string(k) + "_j" + std::to_string(j);
}

inline std::string gw_row_name(int which, const ProductPair& p) {
    return "GW" + std::to_string(which) + "_i" + std::to_string(p.i) + "_j" + std::to_string(p.j);
}

inline std::string y_name(const ProductPair& p) { return "y_" + std::to_string(p.i) + "_" + std::to_string(p.j); }

namespace detail {

class ModelBuilder {
 public:
    ModelBuilder(const BqpInstance& inst, const std::set<ProductPair>& y_pairs) : inst_(inst) {
        model_.n = inst.n;
        for (VarIndex v = 1; v <= inst.n; ++v) {
            model_.columns.push_back({"x" + std::to_string(v), ColumnKind::X, {v, v}, 0, 1});
        }
        for (const auto& p : y_pairs) {
            if (p.is_square()) continue;
            model_.y_index[p] = model_.columns.size();
            model_.columns.push_back({y_name(p), ColumnKind::Y, p, 0, 1});
        }
    }

    /// Column carrying the value of x_i x_j: x_i itself for squares.
    std::size_t product_col(const ProductPair& p) const {
        if (p.is_square()) return model_.x_col(p.i);
        auto c = model_.y_col(p);
        if (!c) throw std::logic_error("no column for product " + to_string(p));
        return *c;
    }

    void add_original_rows() {
        for (const auto& c : inst_.constraints) {
            std::map<std::size_t, Rational> acc;
            for (const auto& [v, a] : c.terms) acc[model_.x_col(v)] += a;
            ModelRow row;
            row.name = (c.sense == Sense::Eq ? "K_E_k" : "K_I_k") + std::to_string(c.id);
            row.origin = RowOrigin::Original;
            row.k = c.id;
            row.terms = normalize_terms(std::move(acc));
            row.sense = c.sense == Sense::Eq ? RowSense::Eq : RowSense::Le;
            row.rhs = c.rhs;
            model_.rows.push_back(std::move(row));
        }
    }

    void add_gw_rows(const ProductPair& p) {
        if (p.is_square()) return;
        const std::size_t y = product_col(p);
        const std::size_t xi = model_.x_col(p.i), xj = model_.x_col(p.j);
        push({gw_row_name(1, p), RowOrigin::GW1, 0, 0, p, {{xi, Rational(-1)}, {y, Rational(1)}}, RowSense::Le, Rational(0)});
        push({gw_row_name(2, p), RowOrigin::GW2, 0, 0, p, {{xj, Rational(-1)}, {y, Rational(1)}}, RowSense::Le, Rational(0)});
        push({gw_row_name(3, p), RowOrigin::GW3, 0, 0, p, {{xi, Rational(-1)}, {xj, Rational(-1)}, {y, Rational(1)}},
              RowSense::Ge, Rational(-1)});
    }

    void add_compact_row(const SideConstraint& c, MultiplierKind kind, VarIndex j) {
        std::map<std::size_t, Rational> acc;
        ModelRow row;
        row.k = c.id;
        row.j = j;
        const std::size_t xj = model_.x_col(j);
        if (kind == MultiplierKind::IMinus) {
            // sum alpha_i (x_i - y_ij) <= beta (1 - x_j); the i == j term vanishes.
            for (const auto& [i, a] : c.terms) {
                if (i == j) continue;
                acc[model_.x_col(i)] += a;
                acc[product_col(ProductPair::ordered(i, j))] -= a;
            }
            acc[xj] += c.rhs;
            row.origin = RowOrigin::CompactIMinus;
            row.sense = RowSense::Le;
            row.rhs = c.rhs;
        } else {
            // sum alpha_i y_ij - beta x_j (=|<=) 0, with y_jj read as x_j.
            for (const auto& [i, a] : c.terms) acc[product_col(ProductPair::ordered(i, j))] += a;
            acc[xj] -= c.rhs;
            row.origin = kind == MultiplierKind::Eq ? RowOrigin::CompactE : RowOrigin::CompactIPlus;
            row.sense = kind == MultiplierKind::Eq ? RowSense::Eq : RowSense::Le;
            row.rhs = 0;
        }
        row.name = compact_row_name(row.origin, c.id, j);
        row.terms = normalize_terms(std::move(acc));
        if (!has_y(row) && trivially_satisfied(row)) return;
        push(std::move(row));
    }

    void add_passthrough_rows() {
        for (std::size_t r = 0; r < inst_.passthrough.size(); ++r) {
            const auto& pt = inst_.passthrough[r];
            std::map<std::size_t, Rational> acc;
            for (const auto& [v, a] : pt.x_terms) acc[model_.x_col(v)] += a;
            for (const auto& [p, a] : pt.y_terms) acc[product_col(p)] += a;
            ModelRow row;
            row.name = pt.name.empty() ? "PT_" + std::to_string(r + 1) : pt.name;
            row.origin = RowOrigin::Passthrough;
            row.terms = normalize_terms(std::move(acc));
            row.sense = pt.sense;
            row.rhs = pt.rhs;
            push(std::move(row));
        }
    }

    void add_objective() {
        std::map<std::size_t, Rational> acc;
        for (const auto& [v, c] : inst_.objective.linear) acc[model_.x_col(v)] += c;
        for (const auto& [p, d] : inst_.objective.quadratic) acc[product_col(p)] += d;
        for (auto& [c, a] : acc) {
            if (sgn(a) != 0) model_.objective[c] = a;
        }
    }

    LinearizedModel take() { return std::move(model_); }

 private:
    void push(ModelRow row) { model_.rows.push_back(std::move(row)); }

    bool has_y(const ModelRow& row) const {
        return std::any_of(row.terms.begin(), row.terms.end(),
                           [&](const auto& t) { return model_.columns[t.first].kind == ColumnKind::Y; });
    }

    /// Holds for every x in [0,1]^n.
    static bool trivially_satisfied(const ModelRow& row) {
        Rational lo = 0, hi = 0;
        for (const auto& [c, a] : row.terms) (sgn(a) > 0 ? hi : lo) += a;
        switch (row.sense) {
            case RowSense::Eq: return row.terms.empty() && sgn(row.rhs) == 0;
            case RowSense::Le: return hi <= row.rhs;
            case RowSense::Ge: return lo >= row.rhs;
        }
        return false;
    }

    const BqpInstance& inst_;
    LinearizedModel model_;
};

}  // namespace detail

/// Rows for every membership of B (one per (k, j, kind)), original K rows,
/// standard inequalities for products no constraint covers, and pass-through
/// rows. Squares never become columns. Throws ConditionViolation when the
/// design is not consistent.
inline LinearizedModel compact_linearize(const BqpInstance& inst, const MultiplierAssignment& b) {
    check_assignment(inst, b);
    const auto q = induce_products(inst, b);
    const auto report = check_conditions(inst, b, q);
    if (!report.uncovered.empty()) throw ConditionViolation(report.uncovered.front(), 0);
    if (const auto* bad = report.first_violation()) throw ConditionViolation(bad->pair, bad->first_missing());

    const auto fallback = validate(inst).unlinearizable;
    std::set<ProductPair> y_pairs = q.pairs;
    y_pairs.insert(fallback.begin(), fallback.end());

    detail::ModelBuilder builder(inst, y_pairs);
    builder.add_original_rows();
    for (const auto& m : b.memberships()) builder.add_compact_row(inst.constraint(m.k), m.kind, m.j);
    for (const auto& p : fallback) builder.add_gw_rows(p);
    builder.add_passthrough_rows();
    builder.add_objective();
    return builder.take();
}

/// Compact rows for B without the consistency precondition. Used to study
/// broken designs; everything else matches compact_linearize.
inline LinearizedModel compact_linearize_unchecked(const BqpInstance& inst, const MultiplierAssignment& b) {
    check_assignment(inst, b);
    const auto q = induce_products(inst, b);
    std::set<ProductPair> y_pairs = q.pairs;
    std::vector<ProductPair> fallback;
    for (const auto& p : inst.products) {
        if (!q.contains(p) && !p.is_square()) fallback.push_back(p);
    }
    y_pairs.insert(fallback.begin(), fallback.end());

    detail::ModelBuilder builder(inst, y_pairs);
    builder.add_original_rows();
    for (const auto& m : b.memberships()) builder.add_compact_row(inst.constraint(m.k), m.kind, m.j);
    for (const auto& p : fallback) builder.add_gw_rows(p);
    builder.add_passthrough_rows();
    builder.add_objective();
    return builder.take();
}

/// y_ij <= x_i, y_ij <= x_j, y_ij >= x_i + x_j - 1 for each i < j in P.
inline LinearizedModel glover_woolsey(const BqpInstance& inst) {
    std::set<ProductPair> y_pairs(inst.products.begin(), inst.products.end());
    detail::ModelBuilder builder(inst, y_pairs);
    builder.add_original_rows();
    for (const auto& p : y_pairs) builder.add_gw_rows(p);
    builder.add_passthrough_rows();
    builder.add_objective();
    return builder.take();
}

}  // namespace compactlin
