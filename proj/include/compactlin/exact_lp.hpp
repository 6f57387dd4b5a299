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
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "compactlin/rational.hpp"

namespace compactlin::lp {

enum class RowSense { Eq, Le, Ge };
enum class ObjectiveSense { Minimize, Maximize };
enum class Status { Optimal, Infeasible, Unbounded };

struct Column {
    Rational lo = 0;
    std::optional<Rational> hi;  // nullopt is +infinity
};

struct Row {
    std::vector<std::pair<std::size_t, Rational>> terms;
    RowSense sense = RowSense::Le;
    Rational rhs = 0;
};

struct LpProblem {
    std::vector<Column> columns;
    std::vector<Row> rows;
    std::vector<Rational> objective;  // one entry per column; missing entries are zero
    ObjectiveSense sense = ObjectiveSense::Minimize;

    std::size_t add_column(Rational lo, std::optional<Rational> hi, Rational cost = 0) {
        columns.push_back({std::move(lo), std::move(hi)});
        objective.resize(columns.size());
        objective.back() = std::move(cost);
        return columns.size() - 1;
    }

    void add_row(std::vector<std::pair<std::size_t, Rational>> terms, RowSense s, Rational rhs) {
        rows.push_back({std::move(terms), s, std::move(rhs)});
    }
};

struct LpOutcome {
    Status status = Status::Infeasible;
    Rational value;               // objective at `point` in the problem's own sense
    std::vector<Rational> point;  // structural columns
    std::vector<Rational> duals;  // one per row; certificate multipliers for the stated sense
    std::size_t iterations = 0;
};

/// Throws std::invalid_argument when the problem references missing columns
/// or has an empty bound interval.
inline void check_well_formed(const LpProblem& p) {
    for (const auto& c : p.columns) {
        if (c.hi && *c.hi < c.lo) throw std::invalid_argument("column with lo > hi");
    }
    if (p.objective.size() > p.columns.size()) {
        throw std::invalid_argument("objective longer than column list");
    }
    for (const auto& r : p.rows) {
        for (const auto& [col, coef] : r.terms) {
            if (col >= p.columns.size()) throw std::invalid_argument("row references missing column");
        }
    }
}

/// Exact primal feasibility of `point` (bounds and rows, zero residual).
inline bool is_feasible_point(const LpProblem& p, const std::vector<Rational>& point) {
    if (point.size() != p.columns.size()) return false;
    for (std::size_t j = 0; j < p.columns.size(); ++j) {
        if (point[j] < p.columns[j].lo) return false;
        if (p.columns[j].hi && point[j] > *p.columns[j].hi) return false;
    }
    for (const auto& r : p.rows) {
        Rational lhs = 0;
        for (const auto& [col, coef] : r.terms) lhs += coef * point[col];
        switch (r.sense) {
            case RowSense::Eq: if (lhs != r.rhs) return false; break;
            case RowSense::Le: if (lhs > r.rhs) return false; break;
            case RowSense::Ge: if (lhs < r.rhs) return false; break;
        }
    }
    return true;
}

inline Rational objective_value(const LpProblem& p, const std::vector<Rational>& point) {
    Rational v = 0;
    for (std::size_t j = 0; j < p.objective.size() && j < point.size(); ++j) v += p.objective[j] * point[j];
    return v;
}

/// Checks the row multipliers in `outcome.duals` prove that no feasible point
/// beats `outcome.value`. The bound is y'b plus, per column, the reduced cost
/// times whichever bound makes it valid; it must equal the primal value.
inline bool verify_dual_certificate(const LpProblem& p, const LpOutcome& outcome) {
    if (outcome.status != Status::Optimal || outcome.duals.size() != p.rows.size()) return false;
    // Work in minimization form.
    const bool maximize = p.sense == ObjectiveSense::Maximize;
    std::vector<Rational> reduced(p.columns.size());
    for (std::size_t j = 0; j < p.objective.size(); ++j) reduced[j] = maximize ? Rational(-p.objective[j]) : p.objective[j];
    Rational bound = 0;
    for (std::size_t i = 0; i < p.rows.size(); ++i) {
        const Rational y = maximize ? Rational(-outcome.duals[i]) : outcome.duals[i];
        const auto& row = p.rows[i];
        if (row.sense == RowSense::Le && sgn(y) > 0) return false;
        if (row.sense == RowSense::Ge && sgn(y) < 0) return false;
        bound += y * row.rhs;
        for (const auto& [col, coef] : row.terms) reduced[col] -= y * coef;
    }
    for (std::size_t j = 0; j < p.columns.size(); ++j) {
        const int s = sgn(reduced[j]);
        if (s > 0) {
            bound += reduced[j] * p.columns[j].lo;
        } else if (s < 0) {
            if (!p.columns[j].hi) return false;
            bound += reduced[j] * *p.columns[j].hi;
        }
    }
    const Rational primal = maximize ? Rational(-outcome.value) : outcome.value;
    return bound == primal;
}

namespace detail {

/// Dense bounded-variable tableau simplex. Column layout: structural, then
/// one slack per inequality row, then one artificial per row.
class BoundedSimplex {
 public:
    explicit BoundedSimplex(const LpProblem& p) : problem_(p) { setup(); }

    LpOutcome run() {
        LpOutcome out;
        // Phase 1: minimize the sum of artificials.
        std::vector<Rational> phase1(ncols_, Rational(0));
        for (std::size_t i = 0; i < m_; ++i) phase1[art_begin_ + i] = 1;
        set_costs(phase1);
        iterate(out.iterations);
        Rational infeas = 0;
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] >= art_begin_) infeas += xb_[i];
        }
        if (sgn(infeas) > 0) {
            out.status = Status::Infeasible;
            return out;
        }
        for (std::size_t i = 0; i < m_; ++i) hi_[art_begin_ + i] = Rational(0);

        std::vector<Rational> phase2(ncols_, Rational(0));
        const bool maximize = problem_.sense == ObjectiveSense::Maximize;
        for (std::size_t j = 0; j < problem_.objective.size(); ++j) {
            phase2[j] = maximize ? Rational(-problem_.objective[j]) : problem_.objective[j];
        }
        set_costs(phase2);
        if (!iterate(out.iterations)) {
            out.status = Status::Unbounded;
            return out;
        }

        out.status = Status::Optimal;
        std::vector<Rational> values = current_values();
        out.point.assign(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(n_));
        out.value = objective_value(problem_, out.point);
        // Row multipliers recovered from artificial reduced costs.
        out.duals.resize(m_);
        for (std::size_t i = 0; i < m_; ++i) {
            Rational y = -reduced_[art_begin_ + i] * art_sign_[i];
            out.duals[i] = maximize ? Rational(-y) : y;
        }
        return out;
    }

 private:
    enum class At { Lower, Upper, Basic };

    void setup() {
        n_ = problem_.columns.size();
        m_ = problem_.rows.size();
        std::size_t nslack = 0;
        for (const auto& r : problem_.rows) {
            if (r.sense != RowSense::Eq) ++nslack;
        }
        art_begin_ = n_ + nslack;
        ncols_ = art_begin_ + m_;
        lo_.assign(ncols_, Rational(0));
        hi_.assign(ncols_, std::nullopt);
        for (std::size_t j = 0; j < n_; ++j) {
            lo_[j] = problem_.columns[j].lo;
            hi_[j] = problem_.columns[j].hi;
        }
        state_.assign(ncols_, At::Lower);
        tab_.assign(m_, std::vector<Rational>(ncols_, Rational(0)));
        xb_.assign(m_, Rational(0));
        basis_.assign(m_, 0);
        art_sign_.assign(m_, 1);

        std::size_t slack = n_;
        for (std::size_t i = 0; i < m_; ++i) {
            const auto& r = problem_.rows[i];
            Rational resid = r.rhs;
            for (const auto& [col, coef] : r.terms) {
                tab_[i][col] += coef;
                resid -= coef * lo_[col];
            }
            std::optional<std::size_t> slack_col;
            int slack_sign = 0;
            if (r.sense == RowSense::Le) slack_sign = 1;
            if (r.sense == RowSense::Ge) slack_sign = -1;
            if (slack_sign != 0) {
                slack_col = slack++;
                tab_[i][*slack_col] = slack_sign;
            }
            art_sign_[i] = sgn(resid) >= 0 ? 1 : -1;
            tab_[i][art_begin_ + i] = art_sign_[i];
            // Prefer the slack as the starting basic variable when it lands at
            // a non-negative value; otherwise the artificial absorbs the residual.
            std::size_t basic = art_begin_ + i;
            int basic_sign = art_sign_[i];
            if (slack_col && sgn(resid) * slack_sign >= 0) {
                basic = *slack_col;
                basic_sign = slack_sign;
                hi_[art_begin_ + i] = Rational(0);
            }
            if (basic_sign < 0) {
                for (auto& v : tab_[i]) v = -v;
                resid = -resid;
            }
            basis_[i] = basic;
            state_[basic] = At::Basic;
            xb_[i] = resid;
        }
    }

    void set_costs(const std::vector<Rational>& cost) {
        cost_ = cost;
        reduced_ = cost;
        for (std::size_t i = 0; i < m_; ++i) {
            const Rational& cb = cost_[basis_[i]];
            if (sgn(cb) == 0) continue;
            for (std::size_t j = 0; j < ncols_; ++j) {
                if (sgn(tab_[i][j]) != 0) reduced_[j] -= cb * tab_[i][j];
            }
        }
    }

    bool fixed(std::size_t j) const { return hi_[j] && *hi_[j] == lo_[j]; }

    /// Returns false on unboundedness.
    bool iterate(std::size_t& iterations) {
        for (;;) {
            // Bland: lowest-index improving column.
            std::size_t enter = ncols_;
            for (std::size_t j = 0; j < ncols_; ++j) {
                if (state_[j] == At::Basic || fixed(j)) continue;
                const int s = sgn(reduced_[j]);
                if ((state_[j] == At::Lower && s < 0) || (state_[j] == At::Upper && s > 0)) {
                    enter = j;
                    break;
                }
            }
            if (enter == ncols_) return true;
            ++iterations;
            const int dir = state_[enter] == At::Lower ? 1 : -1;

            std::optional<Rational> best;
            std::size_t leave_row = m_;  // m_ means bound flip
            std::size_t leave_index = ncols_;
            bool leave_to_upper = false;
            if (hi_[enter]) {
                best = *hi_[enter] - lo_[enter];
                leave_index = enter;
            }
            for (std::size_t i = 0; i < m_; ++i) {
                const Rational& a = tab_[i][enter];
                const int s = sgn(a) * dir;
                if (s == 0) continue;
                const std::size_t b = basis_[i];
                Rational limit;
                bool to_upper = false;
                if (s > 0) {
                    limit = (xb_[i] - lo_[b]) / abs(a);
                } else {
                    if (!hi_[b]) continue;
                    limit = (*hi_[b] - xb_[i]) / abs(a);
                    to_upper = true;
                }
                if (!best || limit < *best || (limit == *best && b < leave_index)) {
                    best = limit;
                    leave_row = i;
                    leave_index = b;
                    leave_to_upper = to_upper;
                }
            }
            if (!best) return false;
            const Rational step = *best;

            if (sgn(step) != 0) {
                for (std::size_t i = 0; i < m_; ++i) {
                    if (sgn(tab_[i][enter]) != 0) xb_[i] -= dir * step * tab_[i][enter];
                }
            }
            if (leave_row == m_) {
                state_[enter] = state_[enter] == At::Lower ? At::Upper : At::Lower;
                continue;
            }
            const std::size_t leaving = basis_[leave_row];
            const Rational entering_value = (state_[enter] == At::Lower ? lo_[enter] : *hi_[enter]) + dir * step;
            state_[leaving] = leave_to_upper ? At::Upper : At::Lower;
            pivot(leave_row, enter);
            state_[enter] = At::Basic;
            xb_[leave_row] = entering_value;
        }
    }

    void pivot(std::size_t r, std::size_t col) {
        auto& prow = tab_[r];
        const Rational inv = 1 / prow[col];
        std::vector<std::size_t> nz;
        for (std::size_t j = 0; j < ncols_; ++j) {
            if (sgn(prow[j]) != 0) {
                prow[j] *= inv;
                nz.push_back(j);
            }
        }
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == r) continue;
            const Rational f = tab_[i][col];
            if (sgn(f) == 0) continue;
            for (std::size_t j : nz) tab_[i][j] -= f * prow[j];
        }
        const Rational fr = reduced_[col];
        if (sgn(fr) != 0) {
            for (std::size_t j : nz) reduced_[j] -= fr * prow[j];
        }
        basis_[r] = col;
    }

    std::vector<Rational> current_values() const {
        std::vector<Rational> v(ncols_);
        for (std::size_t j = 0; j < ncols_; ++j) {
            if (state_[j] == At::Lower) v[j] = lo_[j];
            if (state_[j] == At::Upper) v[j] = *hi_[j];
        }
        for (std::size_t i = 0; i < m_; ++i) v[basis_[i]] = xb_[i];
        return v;
    }

    const LpProblem& problem_;
    std::size_t n_ = 0, m_ = 0, art_begin_ = 0, ncols_ = 0;
    std::vector<Rational> lo_;
    std::vector<std::optional<Rational>> hi_;
    std::vector<At> state_;
    std::vector<std::vector<Rational>> tab_;
    std::vector<Rational> xb_;
    std::vector<std::size_t> basis_;
    std::vector<int> art_sign_;
    std::vector<Rational> cost_, reduced_;
};

}  // namespace detail

/// Solves `p` exactly with a two-phase bounded primal simplex under Bland's
/// rule. An Optimal outcome carries a primal point and row multipliers whose
/// certificate has been checked against the reported value.
inline LpOutcome solve(const LpProblem& p) {
    check_well_formed(p);
    // GMP arithmetic assumes canonical operands; mpq_class(a, b) does not
    // reduce on construction.
    LpProblem q = p;
    for (auto& c : q.columns) {
        c.lo.canonicalize();
        if (c.hi) c.hi->canonicalize();
    }
    for (auto& r : q.rows) {
        r.rhs.canonicalize();
        for (auto& t : r.terms) t.second.canonicalize();
    }
    for (auto& c : q.objective) c.canonicalize();
    LpOutcome out = detail::BoundedSimplex(q).run();
    if (out.status == Status::Optimal) {
        if (!is_feasible_point(q, out.point)) throw std::logic_error("simplex returned an infeasible point");
        if (!verify_dual_certificate(q, out)) throw std::logic_error("simplex dual certificate mismatch");
    }
    return out;
}

}  // namespace compactlin::lp
