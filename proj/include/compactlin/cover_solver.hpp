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
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "compactlin/bqp_model.hpp"
#include "compactlin/exact_lp.hpp"
#include "compactlin/linearizer.hpp"
#include "compactlin/multipliers.hpp"

namespace compactlin {

struct CoverWeights {
    Rational eq = 1;
    Rational plus = 1;
    Rational minus = 1;
    Rational q = 1;

    /// w_Q = 1 and every membership weight max_k |A_k| + 1, so that the number
    /// of multiplications is minimized before |Q|.
    static CoverWeights defaults(const BqpInstance& inst) {
        const Rational w = static_cast<long>(inst.max_support() + 1);
        return {w, w, w, Rational(1)};
    }

    const Rational& of(MultiplierKind k) const {
        switch (k) {
            case MultiplierKind::Eq: return eq;
            case MultiplierKind::IPlus: return plus;
            case MultiplierKind::IMinus: return minus;
        }
        return eq;
    }

    void check() const {
        if (sgn(eq) <= 0 || sgn(plus) <= 0 || sgn(minus) <= 0 || sgn(q) <= 0) {
            throw std::invalid_argument("cover weights must be positive");
        }
    }
};

/// Binary z: membership of variable `i` in the multiplier set of kind `kind`
/// of constraint `k`.
struct CoverVar {
    int k = 0;
    MultiplierKind kind = MultiplierKind::Eq;
    VarIndex i = 0;
    std::size_t col = 0;
};

enum class CoverRowKind { FixProduct, Induce, Condition1, Condition2, Condition3 };

struct CoverRowTag {
    CoverRowKind kind = CoverRowKind::FixProduct;
    ProductPair pair{};
    std::size_t z = 0;  // Induce rows: the inducing z variable (index into CoverModel::z)
};

/// The auxiliary MIP selecting multiplier sets. Column layout: z variables in
/// canonical order (constraint, kind, variable), then f_ij for 1 <= i <= j <= n.
struct CoverModel {
    BqpInstance instance;
    CoverWeights weights;
    std::vector<ProductPair> demanded;
    std::vector<ProductPair> excluded;  // products failing the prerequisite
    std::vector<CoverVar> z;
    std::map<ProductPair, std::size_t> f_col;
    lp::LpProblem lp;
    std::vector<CoverRowTag> row_tags;

    std::size_t num_z() const { return z.size(); }

    MultiplierAssignment decode(const std::vector<int>& zvals) const {
        MultiplierAssignment b;
        for (std::size_t t = 0; t < z.size(); ++t) {
            if (zvals.at(t)) b.add(z[t].k, z[t].kind, z[t].i);
        }
        return b;
    }

    std::vector<int> encode(const MultiplierAssignment& b) const {
        std::vector<int> out(z.size(), 0);
        for (std::size_t t = 0; t < z.size(); ++t) out[t] = b.contains(z[t].k, z[t].kind, z[t].i) ? 1 : 0;
        return out;
    }
};

class CoverInfeasible : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

namespace detail {
inline std::vector<MultiplierKind> kinds_for(Sense s) {
    if (s == Sense::Eq) return {MultiplierKind::Eq};
    return {MultiplierKind::IPlus, MultiplierKind::IMinus};
}
}  // namespace detail

/// Builds the cover MIP for the products in `demanded` (default: every
/// product of P satisfying the prerequisite). Throws CoverInfeasible if an
/// explicitly demanded product fails the prerequisite.
inline CoverModel build_cover_model(const BqpInstance& inst, const CoverWeights& weights,
                                    std::optional<std::vector<ProductPair>> demanded = std::nullopt) {
    weights.check();
    CoverModel m;
    m.instance = inst;
    m.weights = weights;
    const auto rep = validate(inst);
    const std::set<ProductPair> bad(rep.unlinearizable.begin(), rep.unlinearizable.end());
    if (demanded) {
        for (const auto& p : *demanded) {
            if (bad.count(p)) throw CoverInfeasible("product " + to_string(p) + " occurs in no constraint and cannot be covered");
        }
        m.demanded = *demanded;
        std::sort(m.demanded.begin(), m.demanded.end());
        m.demanded.erase(std::unique(m.demanded.begin(), m.demanded.end()), m.demanded.end());
    } else {
        m.demanded = linearizable_products(inst);
        m.excluded = rep.unlinearizable;
    }

    const int n = inst.n;
    // z[(k, kind, i)] lookup.
    std::map<std::tuple<int, MultiplierKind, VarIndex>, std::size_t> zcol;
    for (const auto& c : inst.constraints) {
        for (MultiplierKind kind : detail::kinds_for(c.sense)) {
            for (VarIndex i = 1; i <= n; ++i) {
                const std::size_t col = m.lp.add_column(0, Rational(1), weights.of(kind));
                zcol[{c.id, kind, i}] = m.z.size();
                m.z.push_back({c.id, kind, i, col});
            }
        }
    }
    for (VarIndex i = 1; i <= n; ++i) {
        for (VarIndex j = i; j <= n; ++j) m.f_col[{i, j}] = m.lp.add_column(0, Rational(1), weights.q);
    }
    auto zc = [&](int k, MultiplierKind kind, VarIndex i) { return m.z[zcol.at({k, kind, i})].col; };

    for (const auto& p : m.demanded) {
        m.lp.add_row({{m.f_col.at(p), Rational(1)}}, lp::RowSense::Eq, 1);
        m.row_tags.push_back({CoverRowKind::FixProduct, p, 0});
    }
    // f_{ij} >= z_{jk} (or f_{ji} when j < i) for i in A_k.
    for (const auto& c : inst.constraints) {
        for (MultiplierKind kind : detail::kinds_for(c.sense)) {
            for (const auto& [i, alpha] : c.terms) {
                for (VarIndex j = 1; j <= n; ++j) {
                    const auto p = ProductPair::ordered(i, j);
                    const std::size_t zi = zcol.at({c.id, kind, j});
                    m.lp.add_row({{m.f_col.at(p), Rational(1)}, {m.z[zi].col, Rational(-1)}}, lp::RowSense::Ge, 0);
                    m.row_tags.push_back({CoverRowKind::Induce, p, zi});
                }
            }
        }
    }
    auto mult_kind = [](const SideConstraint& c, MultiplierKind ineq) { return c.sense == Sense::Eq ? MultiplierKind::Eq : ineq; };
    for (VarIndex i = 1; i <= n; ++i) {
        for (VarIndex j = i; j <= n; ++j) {
            const ProductPair p{i, j};
            const std::size_t f = m.f_col.at(p);
            std::map<std::size_t, Rational> c1, c2, c3;
            for (const auto& c : inst.constraints) {
                if (c.contains(i)) {
                    c1[zc(c.id, mult_kind(c, MultiplierKind::IPlus), j)] += 1;
                    c3[zc(c.id, mult_kind(c, MultiplierKind::IMinus), j)] += 1;
                }
                if (c.contains(j)) {
                    c2[zc(c.id, mult_kind(c, MultiplierKind::IPlus), i)] += 1;
                    c3[zc(c.id, mult_kind(c, MultiplierKind::IMinus), i)] += 1;
                }
            }
            int which = 0;
            for (auto* acc : {&c1, &c2, &c3}) {
                lp::Row row;
                for (auto& [col, a] : *acc) row.terms.emplace_back(col, a);
                row.terms.emplace_back(f, Rational(-1));
                m.lp.add_row(std::move(row.terms), lp::RowSense::Ge, 0);
                const CoverRowKind kinds[] = {CoverRowKind::Condition1, CoverRowKind::Condition2, CoverRowKind::Condition3};
                m.row_tags.push_back({kinds[which++], p, 0});
            }
        }
    }
    return m;
}

struct CoverSolution {
    MultiplierAssignment design;
    std::vector<int> z;
    Rational objective;
    std::size_t nodes = 0;
    std::size_t lp_solves = 0;
    bool root_integral = false;
};

/// Objective of a 0/1 z vector with f forced to its smallest feasible value,
/// or nullopt when some condition row fails.
inline std::optional<Rational> evaluate_cover(const CoverModel& m, const std::vector<int>& zvals) {
    const auto b = m.decode(zvals);
    const auto q = induce_products(m.instance, b);
    std::set<ProductPair> f(q.pairs.begin(), q.pairs.end());
    f.insert(m.demanded.begin(), m.demanded.end());
    Rational obj = 0;
    for (std::size_t t = 0; t < m.z.size(); ++t) {
        if (zvals[t]) obj += m.weights.of(m.z[t].kind);
    }
    obj += m.weights.q * static_cast<long>(f.size());
    // Conditions for every f = 1 pair, squares included.
    for (const auto& p : f) {
        bool c1 = false, c2 = false, c3 = false;
        for (const auto& c : m.instance.constraints) {
            const bool eq = c.sense == Sense::Eq;
            if (c.contains(p.i)) {
                c1 = c1 || b.contains(c.id, eq ? MultiplierKind::Eq : MultiplierKind::IPlus, p.j);
                c3 = c3 || b.contains(c.id, eq ? MultiplierKind::Eq : MultiplierKind::IMinus, p.j);
            }
            if (c.contains(p.j)) {
                c2 = c2 || b.contains(c.id, eq ? MultiplierKind::Eq : MultiplierKind::IPlus, p.i);
                c3 = c3 || b.contains(c.id, eq ? MultiplierKind::Eq : MultiplierKind::IMinus, p.i);
            }
        }
        if (!(c1 && c2 && c3)) return std::nullopt;
    }
    return obj;
}

namespace detail {

class CoverBranchAndBound {
 public:
    explicit CoverBranchAndBound(const CoverModel& m) : m_(m) {}

    struct Node {
        std::map<std::size_t, int> fixed;  // z index -> value
        Rational bound;
    };

    struct NodeResult {
        bool feasible = false;
        Rational value;
        std::vector<Rational> point;
    };

    NodeResult relax(const std::map<std::size_t, int>& fixed) {
        lp::LpProblem p = m_.lp;
        for (const auto& [t, v] : fixed) {
            const std::size_t col = m_.z[t].col;
            p.columns[col].lo = v;
            p.columns[col].hi = Rational(v);
        }
        ++lp_solves;
        const auto out = lp::solve(p);
        NodeResult r;
        if (out.status != lp::Status::Optimal) return r;
        r.feasible = true;
        r.value = out.value;
        r.point = out.point;
        return r;
    }

    /// Index of the most fractional z (closest to 1/2); smallest index on ties.
    std::optional<std::size_t> branch_var(const std::vector<Rational>& point) const {
        std::optional<std::size_t> best;
        Rational best_dist;
        const Rational half(1, 2);
        for (std::size_t t = 0; t < m_.z.size(); ++t) {
            const Rational& v = point[m_.z[t].col];
            if (is_integer(v)) continue;
            Rational d = abs(v - half);
            if (!best || d < best_dist) {
                best = t;
                best_dist = d;
            }
        }
        return best;
    }

    std::vector<int> rounded(const std::vector<Rational>& point) const {
        std::vector<int> z(m_.z.size());
        for (std::size_t t = 0; t < m_.z.size(); ++t) z[t] = point[m_.z[t].col] == 1 ? 1 : 0;
        return z;
    }

    /// Best-first-on-improvement depth-first search. With `cutoff`, returns the
    /// first integral solution whose value is <= cutoff instead of optimizing.
    std::optional<std::pair<Rational, std::vector<int>>> search(const std::map<std::size_t, int>& base,
                                                                 std::optional<Rational> cutoff, bool track_root) {
        std::optional<std::pair<Rational, std::vector<int>>> incumbent;
        std::vector<Node> open;
        open.push_back({base, Rational(0)});
        while (!open.empty()) {
            Node node = std::move(open.back());
            open.pop_back();
            if (incumbent && node.bound >= incumbent->first) continue;
            if (cutoff && node.bound > *cutoff) continue;
            ++nodes;
            const bool is_root = nodes == 1;
            auto r = relax(node.fixed);
            if (!r.feasible) continue;
            if (cutoff && r.value > *cutoff) continue;
            if (incumbent && r.value >= incumbent->first) continue;
            auto var = branch_var(r.point);
            if (is_root && track_root) root_integral = !var.has_value();
            if (!var) {
                incumbent = std::make_pair(r.value, rounded(r.point));
                if (cutoff) return incumbent;
                // Restart from the best open bound after an improvement.
                std::stable_sort(open.begin(), open.end(), [](const Node& a, const Node& b) { return a.bound > b.bound; });
                continue;
            }
            const Rational& v = r.point[m_.z[*var].col];
            const int first_value = v >= Rational(1, 2) ? 1 : 0;
            for (int value : {1 - first_value, first_value}) {  // pushed last is explored first
                Node child{node.fixed, r.value};
                child.fixed[*var] = value;
                open.push_back(std::move(child));
            }
        }
        return incumbent;
    }

    std::size_t nodes = 0;
    std::size_t lp_solves = 0;
    bool root_integral = false;

 private:
    const CoverModel& m_;
};

}  // namespace detail

/// Provably optimal cover by LP-based branch and bound over z (f is implied by
/// z). Among optimal covers the lexicographically smallest z vector wins.
inline CoverSolution solve_cover_exact(const CoverModel& model) {
    detail::CoverBranchAndBound bb(model);
    auto best = bb.search({}, std::nullopt, true);
    if (!best) throw CoverInfeasible("cover model is infeasible");
    const Rational optimum = best->first;
    std::vector<int> z = best->second;

    // Lexicographic tie-break: push each z to 0 when an equally good cover allows it.
    std::map<std::size_t, int> fixed;
    for (std::size_t t = 0; t < z.size(); ++t) {
        if (z[t] == 0) {
            fixed[t] = 0;
            continue;
        }
        auto trial = fixed;
        trial[t] = 0;
        if (auto alt = bb.search(trial, optimum, false)) {
            z = alt->second;
            fixed[t] = 0;
        } else {
            fixed[t] = 1;
        }
    }

    CoverSolution sol;
    sol.z = z;
    sol.design = model.decode(z);
    sol.objective = optimum;
    sol.nodes = bb.nodes;
    sol.lp_solves = bb.lp_solves;
    sol.root_integral = bb.root_integral;
    const auto check = evaluate_cover(model, z);
    if (!check || *check != optimum) throw std::logic_error("branch and bound produced an inconsistent cover");
    return sol;
}

/// LP relaxation of the cover model at the root.
inline lp::LpOutcome solve_cover_relaxation(const CoverModel& model) { return lp::solve(model.lp); }

/// Repairs conditions pair by pair, always taking the cheapest membership
/// (weight plus newly induced products); ties go to the lowest constraint id.
/// Feasible by construction, optimal when each variable lies in exactly one
/// equation.
inline MultiplierAssignment solve_cover_greedy(const BqpInstance& inst, const CoverWeights& weights) {
    weights.check();
    MultiplierAssignment b;
    std::set<ProductPair> q;
    std::deque<ProductPair> work;
    for (const auto& p : linearizable_products(inst)) {
        q.insert(p);
        work.push_back(p);
    }

    auto added_products = [&](const SideConstraint& c, VarIndex mult) {
        long fresh = 0;
        for (const auto& [h, a] : c.terms) fresh += q.count(ProductPair::ordered(h, mult)) ? 0 : 1;
        return fresh;
    };
    auto add = [&](int k, MultiplierKind kind, VarIndex mult) {
        if (b.contains(k, kind, mult)) return;
        b.add(k, kind, mult);
        for (const auto& [h, a] : inst.constraint(k).terms) {
            const auto p = ProductPair::ordered(h, mult);
            if (q.insert(p).second) work.push_back(p);
        }
    };
    struct Option {
        int k;
        MultiplierKind kind;
        VarIndex mult;
    };
    auto cheapest = [&](const std::vector<Option>& opts) {
        std::optional<Option> best;
        Rational best_cost;
        for (const auto& o : opts) {
            Rational cost = weights.of(o.kind) + weights.q * added_products(inst.constraint(o.k), o.mult);
            if (!best || cost < best_cost) {
                best = o;
                best_cost = cost;
            }
        }
        if (!best) throw CoverInfeasible("no constraint can supply a required multiplication");
        add(best->k, best->kind, best->mult);
    };
    // Memberships that multiply a constraint containing `in` by `mult`.
    auto options = [&](VarIndex in, VarIndex mult, MultiplierKind ineq, bool include_eq) {
        std::vector<Option> out;
        for (const auto& c : inst.constraints) {
            if (!c.contains(in)) continue;
            if (c.sense == Sense::Eq) {
                if (include_eq) out.push_back({c.id, MultiplierKind::Eq, mult});
            } else {
                out.push_back({c.id, ineq, mult});
            }
        }
        return out;
    };

    while (!work.empty()) {
        const ProductPair p = work.front();
        work.pop_front();
        if (!detail::find_witness(inst, b, p.i, p.j, MultiplierKind::IPlus, true)) {
            cheapest(options(p.i, p.j, MultiplierKind::IPlus, true));
        }
        if (!detail::find_witness(inst, b, p.j, p.i, MultiplierKind::IPlus, false)) {
            cheapest(options(p.j, p.i, MultiplierKind::IPlus, true));
        }
        if (!detail::find_witness(inst, b, p.i, p.j, MultiplierKind::IMinus, true) &&
            !detail::find_witness(inst, b, p.j, p.i, MultiplierKind::IMinus, false)) {
            auto opts = options(p.i, p.j, MultiplierKind::IMinus, true);
            auto more = options(p.j, p.i, MultiplierKind::IMinus, true);
            opts.insert(opts.end(), more.begin(), more.end());
            cheapest(opts);
        }
    }
    return b;
}

/// Objective of a design under the cover MIP's weights (memberships plus w_Q
/// per product of Q union P).
inline Rational cover_cost(const BqpInstance& inst, const MultiplierAssignment& b, const CoverWeights& w) {
    Rational cost = 0;
    for (const auto& m : b.memberships()) cost += w.of(m.kind);
    auto q = induce_products(inst, b).pairs;
    for (const auto& p : linearizable_products(inst)) q.insert(p);
    return cost + w.q * static_cast<long>(q.size());
}

}  // namespace compactlin
