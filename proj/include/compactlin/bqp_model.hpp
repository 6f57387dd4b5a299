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
#include <compare>
#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "compactlin/rational.hpp"

namespace compactlin {

/// 1-based index of a binary variable x_i.
using VarIndex = int;

enum class Sense { Eq, Le };

/// An original linear constraint sum_{i in A_k} alpha_i x_i (=|<=) beta with
/// positive coefficients. `terms` is keyed by variable, so A_k is its key set.
struct SideConstraint {
    int id = 0;
    Sense sense = Sense::Eq;
    std::map<VarIndex, Rational> terms;
    Rational rhs;

    std::vector<VarIndex> support() const {
        std::vector<VarIndex> out;
        out.reserve(terms.size());
        for (const auto& [v, a] : terms) out.push_back(v);
        return out;
    }
    bool contains(VarIndex v) const { return terms.count(v) != 0; }
    const Rational& coef(VarIndex v) const { return terms.at(v); }

    friend bool operator==(const SideConstraint&, const SideConstraint&) = default;
};

/// A product x_i x_j with i <= j. Squares (i == j) are legal.
struct ProductPair {
    VarIndex i = 0;
    VarIndex j = 0;

    static ProductPair ordered(VarIndex a, VarIndex b) { return a <= b ? ProductPair{a, b} : ProductPair{b, a}; }
    bool is_square() const { return i == j; }

    friend auto operator<=>(const ProductPair&, const ProductPair&) = default;
};

inline std::string to_string(const ProductPair& p) {
    return "(" + std::to_string(p.i) + "," + std::to_string(p.j) + ")";
}

/// Checked construction; the aggregate itself stays open so that parsed input
/// can carry defects for validate() to report.
inline SideConstraint make_constraint(int id, Sense sense, std::map<VarIndex, Rational> terms, Rational rhs) {
    if (terms.empty()) throw std::invalid_argument("constraint " + std::to_string(id) + " has no terms");
    for (const auto& [v, a] : terms) {
        if (sgn(a) <= 0) throw std::invalid_argument("constraint " + std::to_string(id) + " has a non-positive coefficient");
    }
    if (sgn(rhs) <= 0) throw std::invalid_argument("constraint " + std::to_string(id) + " has a non-positive right-hand side");
    return SideConstraint{id, sense, std::move(terms), std::move(rhs)};
}

enum class RowSense { Eq, Le, Ge };

/// An already-linear row over x and y (the C x + D y >= e block). Stored
/// verbatim and re-emitted without taking part in cover selection.
struct PassthroughRow {
    std::string name;
    std::map<VarIndex, Rational> x_terms;
    std::map<ProductPair, Rational> y_terms;
    RowSense sense = RowSense::Ge;
    Rational rhs;

    friend bool operator==(const PassthroughRow&, const PassthroughRow&) = default;
};

struct Objective {
    std::map<VarIndex, Rational> linear;
    std::map<ProductPair, Rational> quadratic;

    friend bool operator==(const Objective&, const Objective&) = default;
};

struct BqpInstance {
    int n = 0;
    std::vector<SideConstraint> constraints;
    std::vector<ProductPair> products;
    Objective objective;
    std::vector<PassthroughRow> passthrough;

    const SideConstraint* find_constraint(int id) const {
        for (const auto& c : constraints) {
            if (c.id == id) return &c;
        }
        return nullptr;
    }
    const SideConstraint& constraint(int id) const {
        const auto* c = find_constraint(id);
        if (!c) throw std::out_of_range("no constraint with id " + std::to_string(id));
        return *c;
    }
    bool has_equations() const {
        return std::any_of(constraints.begin(), constraints.end(), [](const auto& c) { return c.sense == Sense::Eq; });
    }
    bool has_inequalities() const {
        return std::any_of(constraints.begin(), constraints.end(), [](const auto& c) { return c.sense == Sense::Le; });
    }
    std::size_t max_support() const {
        std::size_t m = 0;
        for (const auto& c : constraints) m = std::max(m, c.terms.size());
        return m;
    }

    friend bool operator==(const BqpInstance&, const BqpInstance&) = default;
};

/// Structural defects that make an instance meaningless (dangling variable
/// references, bad sizes). Distinct from the soft findings of validate().
class ModelError : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

enum class IssueKind {
    NonPositiveCoefficient,
    NonPositiveRhs,
    EmptyConstraint,
    DuplicateConstraintId,
    UnorderedProduct,
    DuplicateProduct,
    ObjectiveProductNotInP,
    PassthroughProductNotInP,
};

inline const char* to_string(IssueKind k) {
    switch (k) {
        case IssueKind::NonPositiveCoefficient: return "non-positive coefficient";
        case IssueKind::NonPositiveRhs: return "non-positive right-hand side";
        case IssueKind::EmptyConstraint: return "empty constraint";
        case IssueKind::DuplicateConstraintId: return "duplicate constraint id";
        case IssueKind::UnorderedProduct: return "product with i > j";
        case IssueKind::DuplicateProduct: return "duplicate product";
        case IssueKind::ObjectiveProductNotInP: return "objective product not in P";
        case IssueKind::PassthroughProductNotInP: return "pass-through product not in P";
    }
    return "?";
}

struct Issue {
    IssueKind kind;
    int constraint_id = 0;   // for constraint-level issues
    VarIndex variable = 0;   // for coefficient issues
    ProductPair product{};   // for product-level issues
    std::string message;

    friend bool operator==(const Issue&, const Issue&) = default;
};

struct ValidationReport {
    std::vector<Issue> issues;
    /// Products x_i x_j where i or j occurs in no constraint; they cannot be
    /// linearized by multiplying constraints and fall back to the three
    /// standard inequalities.
    std::vector<ProductPair> unlinearizable;

    bool clean() const { return issues.empty(); }
    bool all_linearizable() const { return unlinearizable.empty(); }

    friend bool operator==(const ValidationReport&, const ValidationReport&) = default;
};

namespace detail {
inline void check_var(const BqpInstance& inst, VarIndex v, const std::string& where) {
    if (v < 1 || v > inst.n) {
        throw ModelError("variable " + std::to_string(v) + " out of range 1.." + std::to_string(inst.n) + " in " + where);
    }
}
}  // namespace detail

/// Throws ModelError on dangling variable references; everything else is
/// reported, not thrown.
inline ValidationReport validate(const BqpInstance& inst) {
    if (inst.n < 0) throw ModelError("negative variable count");
    ValidationReport rep;
    std::set<int> ids;
    std::set<VarIndex> covered;
    for (const auto& c : inst.constraints) {
        const std::string where = "constraint " + std::to_string(c.id);
        if (!ids.insert(c.id).second) {
            rep.issues.push_back({IssueKind::DuplicateConstraintId, c.id, 0, {}, where + " id repeated"});
        }
        if (c.terms.empty()) {
            rep.issues.push_back({IssueKind::EmptyConstraint, c.id, 0, {}, where + " has no terms"});
        }
        for (const auto& [v, a] : c.terms) {
            detail::check_var(inst, v, where);
            covered.insert(v);
            if (sgn(a) <= 0) {
                rep.issues.push_back({IssueKind::NonPositiveCoefficient, c.id, v, {},
                                      where + ": coefficient of x" + std::to_string(v) + " is " + to_string(a)});
            }
        }
        if (sgn(c.rhs) <= 0) {
            rep.issues.push_back({IssueKind::NonPositiveRhs, c.id, 0, {}, where + ": right-hand side is " + to_string(c.rhs)});
        }
    }
    std::set<ProductPair> seen;
    for (const auto& p : inst.products) {
        detail::check_var(inst, p.i, "product " + to_string(p));
        detail::check_var(inst, p.j, "product " + to_string(p));
        if (p.i > p.j) {
            rep.issues.push_back({IssueKind::UnorderedProduct, 0, 0, p, "product " + to_string(p) + " is not ordered"});
        }
        if (!seen.insert(p).second) {
            rep.issues.push_back({IssueKind::DuplicateProduct, 0, 0, p, "product " + to_string(p) + " listed twice"});
        }
        if (!covered.count(p.i) || !covered.count(p.j)) rep.unlinearizable.push_back(p);
    }
    for (const auto& [v, c] : inst.objective.linear) detail::check_var(inst, v, "objective");
    for (const auto& [p, d] : inst.objective.quadratic) {
        detail::check_var(inst, p.i, "objective");
        detail::check_var(inst, p.j, "objective");
        if (!seen.count(p)) {
            rep.issues.push_back({IssueKind::ObjectiveProductNotInP, 0, 0, p, "objective term on " + to_string(p) + " not in P"});
        }
    }
    for (const auto& row : inst.passthrough) {
        for (const auto& [v, c] : row.x_terms) detail::check_var(inst, v, "pass-through row " + row.name);
        for (const auto& [p, c] : row.y_terms) {
            detail::check_var(inst, p.i, "pass-through row " + row.name);
            detail::check_var(inst, p.j, "pass-through row " + row.name);
            if (!seen.count(p)) {
                rep.issues.push_back({IssueKind::PassthroughProductNotInP, 0, 0, p,
                                      "pass-through row " + row.name + " uses " + to_string(p) + " not in P"});
            }
        }
    }
    return rep;
}

/// Products of P that satisfy the prerequisite (both factors occur in K).
inline std::vector<ProductPair> linearizable_products(const BqpInstance& inst) {
    const auto rep = validate(inst);
    std::set<ProductPair> bad(rep.unlinearizable.begin(), rep.unlinearizable.end());
    std::vector<ProductPair> out;
    for (const auto& p : inst.products) {
        if (!bad.count(p)) out.push_back(p);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Deterministic form: constraints sorted by id, P sorted, zero objective
/// entries dropped, pass-through rows named. Requires a clean validation.
inline BqpInstance canonicalize(const BqpInstance& inst) {
    const auto rep = validate(inst);
    if (!rep.clean()) throw ModelError("cannot canonicalize: " + rep.issues.front().message);
    BqpInstance out = inst;
    std::stable_sort(out.constraints.begin(), out.constraints.end(),
                     [](const SideConstraint& a, const SideConstraint& b) { return a.id < b.id; });
    std::sort(out.products.begin(), out.products.end());
    std::erase_if(out.objective.linear, [](const auto& kv) { return sgn(kv.second) == 0; });
    std::erase_if(out.objective.quadratic, [](const auto& kv) { return sgn(kv.second) == 0; });
    for (std::size_t r = 0; r < out.passthrough.size(); ++r) {
        auto& row = out.passthrough[r];
        if (row.name.empty()) row.name = "PT_" + std::to_string(r + 1);
        std::erase_if(row.x_terms, [](const auto& kv) { return sgn(kv.second) == 0; });
        std::erase_if(row.y_terms, [](const auto& kv) { return sgn(kv.second) == 0; });
    }
    return out;
}

/// Keeps only the constraints with the given ids in K; the others move to the
/// pass-through block so they still appear in emitted models.
inline BqpInstance select_constraints(const BqpInstance& inst, const std::set<int>& keep) {
    BqpInstance out = inst;
    out.constraints.clear();
    for (const auto& c : inst.constraints) {
        if (keep.count(c.id)) {
            out.constraints.push_back(c);
            continue;
        }
        PassthroughRow row;
        row.name = "K_k" + std::to_string(c.id);
        row.x_terms = c.terms;
        row.sense = c.sense == Sense::Eq ? RowSense::Eq : RowSense::Le;
        row.rhs = c.rhs;
        out.passthrough.push_back(std::move(row));
    }
    for (int id : keep) {
        if (!inst.find_constraint(id)) throw ModelError("selected constraint " + std::to_string(id) + " does not exist");
    }
    return out;
}

}  // namespace compactlin
