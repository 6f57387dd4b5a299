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
#include <array>
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
#include "compactlin/multipliers.hpp"

namespace compactlin {

/// Portable random source: mt19937_64 output is fixed by the standard, and we
/// avoid the library-specific distribution classes.
class Rng {
 public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform-ish integer in [lo, hi].
    long uniform(long lo, long hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo + 1);
        return lo + static_cast<long>(engine_() % span);
    }
    /// True with probability `p` (resolution 1e-6).
    bool chance(double p) {
        const auto threshold = static_cast<std::uint64_t>(p * 1000000.0 + 0.5);
        return engine_() % 1000000 < threshold;
    }
    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[static_cast<std::size_t>(uniform(0, static_cast<long>(i) - 1))]);
    }

 private:
    std::mt19937_64 engine_;
};

// ---------------------------------------------------------------------------
// Quadratic assignment

enum class QapPreset { FriezeYadegar, MostCompact, GWBaseline };

struct QapSpec {
    int n = 3;
    QapPreset preset = QapPreset::MostCompact;
    /// Identify y_jqip with y_ipjq (i < j). Without it, the most compact design
    /// needs two equation families instead of one.
    bool identify = true;
    long max_cost = 9;
    /// Optional explicit costs; empty means drawn from the seed.
    std::map<std::pair<int, int>, Rational> linear;                // (i, p) -> c_ip
    std::map<std::array<int, 4>, Rational> quadratic;              // (i, p, j, q) -> d, i < j, p != q
};

/// Index of x_ip (facility i at location p), both 1-based.
inline VarIndex qap_var(int n, int i, int p) { return (i - 1) * n + p; }

/// Constraint ids: 1..n are "location p takes one facility" (sum_i x_ip = 1),
/// n+1..2n are "facility i takes one location" (sum_p x_ip = 1).
inline std::pair<BqpInstance, std::optional<MultiplierAssignment>> gen_qap(const QapSpec& spec, std::uint64_t seed) {
    const int n = spec.n;
    if (n < 2) throw std::invalid_argument("QAP size must be at least 2");
    if (spec.max_cost < 0) throw std::invalid_argument("max_cost must be nonnegative");
    Rng rng(seed);
    BqpInstance inst;
    inst.n = n * n;
    for (int p = 1; p <= n; ++p) {
        std::map<VarIndex, Rational> terms;
        for (int i = 1; i <= n; ++i) terms[qap_var(n, i, p)] = 1;
        inst.constraints.push_back(make_constraint(p, Sense::Eq, std::move(terms), 1));
    }
    for (int i = 1; i <= n; ++i) {
        std::map<VarIndex, Rational> terms;
        for (int p = 1; p <= n; ++p) terms[qap_var(n, i, p)] = 1;
        inst.constraints.push_back(make_constraint(n + i, Sense::Eq, std::move(terms), 1));
    }
    for (int i = 1; i <= n; ++i) {
        for (int p = 1; p <= n; ++p) {
            auto it = spec.linear.find({i, p});
            Rational c = it != spec.linear.end() ? it->second : Rational(rng.uniform(0, spec.max_cost));
            if (sgn(c) != 0) inst.objective.linear[qap_var(n, i, p)] = c;
        }
    }
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            for (int p = 1; p <= n; ++p) {
                for (int q = 1; q <= n; ++q) {
                    if (p == q) continue;
                    const ProductPair pair{qap_var(n, i, p), qap_var(n, j, q)};
                    inst.products.push_back(pair);
                    auto it = spec.quadratic.find({i, p, j, q});
                    Rational d = it != spec.quadratic.end() ? it->second : Rational(rng.uniform(0, spec.max_cost));
                    if (sgn(d) != 0) inst.objective.quadratic[pair] = d;
                }
            }
        }
    }
    std::sort(inst.products.begin(), inst.products.end());

    std::optional<MultiplierAssignment> design;
    switch (spec.preset) {
        case QapPreset::GWBaseline:
            break;
        case QapPreset::FriezeYadegar: {
            MultiplierAssignment b;
            for (const auto& c : inst.constraints) {
                for (VarIndex v = 1; v <= inst.n; ++v) b.add(c.id, MultiplierKind::Eq, v);
            }
            design = std::move(b);
            break;
        }
        case QapPreset::MostCompact: {
            MultiplierAssignment b;
            // Facility rows multiplied by every x_jq of another facility.
            for (int i = 1; i <= n; ++i) {
                for (int j = 1; j <= n; ++j) {
                    if (j == i) continue;
                    for (int q = 1; q <= n; ++q) b.add(n + i, MultiplierKind::Eq, qap_var(n, j, q));
                }
            }
            if (!spec.identify) {
                // Location columns multiplied by every x_jq at another location.
                for (int p = 1; p <= n; ++p) {
                    for (int q = 1; q <= n; ++q) {
                        if (q == p) continue;
                        for (int j = 1; j <= n; ++j) b.add(p, MultiplierKind::Eq, qap_var(n, j, q));
                    }
                }
            }
            design = std::move(b);
            break;
        }
    }
    return {std::move(inst), std::move(design)};
}

// ---------------------------------------------------------------------------
// Symmetric quadratic TSP

struct QtspSpec {
    int nodes = 5;
    bool include_subtour = false;
    long max_cost = 9;
};

/// Edge {a, b} (a < b) in lexicographic order, 1-based.
inline VarIndex qtsp_edge(int nodes, int a, int b) {
    if (a > b) std::swap(a, b);
    int idx = 0;
    for (int u = 1; u < a; ++u) idx += nodes - u;
    return idx + (b - a);
}

/// Degree equations (one per vertex, rhs 2) as K, products of adjacent edges
/// as P, design B_v = A_v. Subtour rows go to the pass-through block.
inline std::pair<BqpInstance, MultiplierAssignment> gen_qtsp(const QtspSpec& spec, std::uint64_t seed) {
    const int nv = spec.nodes;
    if (nv < 4) throw std::invalid_argument("QTSP needs at least 4 nodes");
    if (spec.max_cost < 1) throw std::invalid_argument("QTSP max_cost must be at least 1");
    Rng rng(seed);
    BqpInstance inst;
    inst.n = nv * (nv - 1) / 2;
    MultiplierAssignment design;
    for (int v = 1; v <= nv; ++v) {
        std::map<VarIndex, Rational> terms;
        for (int u = 1; u <= nv; ++u) {
            if (u != v) terms[qtsp_edge(nv, u, v)] = 1;
        }
        for (const auto& [e, a] : terms) design.add(v, MultiplierKind::Eq, e);
        inst.constraints.push_back(make_constraint(v, Sense::Eq, std::move(terms), 2));
    }
    for (int j = 1; j <= nv; ++j) {
        for (int i = 1; i <= nv; ++i) {
            for (int k = i + 1; k <= nv; ++k) {
                if (i == j || k == j) continue;
                const auto pair = ProductPair::ordered(qtsp_edge(nv, i, j), qtsp_edge(nv, j, k));
                inst.products.push_back(pair);
                Rational c = rng.uniform(1, spec.max_cost);
                inst.objective.quadratic[pair] = c;
            }
        }
    }
    std::sort(inst.products.begin(), inst.products.end());
    if (spec.include_subtour && nv <= 10) {
        for (std::uint32_t w = 0; w < (1U << nv); ++w) {
            const int size = __builtin_popcount(w);
            if (size < 2 || size > nv - 2) continue;
            PassthroughRow row;
            row.name = "SEC_W" + std::to_string(w);
            for (int a = 1; a <= nv; ++a) {
                for (int b = a + 1; b <= nv; ++b) {
                    if ((w >> (a - 1) & 1U) && (w >> (b - 1) & 1U)) row.x_terms[qtsp_edge(nv, a, b)] = 1;
                }
            }
            row.sense = RowSense::Le;
            row.rhs = size - 1;
            inst.passthrough.push_back(std::move(row));
        }
    }
    return {std::move(inst), std::move(design)};
}

// ---------------------------------------------------------------------------
// Random instances

struct RandomSpec {
    int n = 6;
    int num_eq = 1;
    int num_ineq = 1;
    double density = 0.5;
    int max_support = 4;
    bool unit_coefficients = false;  // alpha = 1
    bool unit_rhs = false;           // beta = 1 (with unit coefficients)
    bool disjoint = false;           // pairwise disjoint supports
    long max_cost = 5;               // costs drawn from [-max_cost, max_cost]
};

inline BqpInstance gen_random(const RandomSpec& spec, std::uint64_t seed) {
    if (spec.n < 1 || spec.num_eq < 0 || spec.num_ineq < 0 || spec.num_eq + spec.num_ineq < 1) {
        throw std::invalid_argument("random instance needs n >= 1 and at least one constraint");
    }
    if (!(spec.density > 0.0 && spec.density <= 1.0)) throw std::invalid_argument("density must lie in (0, 1]");
    if (spec.max_cost < 0) throw std::invalid_argument("max_cost must be nonnegative");
    Rng rng(seed);
    BqpInstance inst;
    inst.n = spec.n;
    const int total = spec.num_eq + spec.num_ineq;
    const int max_support = std::max(1, std::min(spec.max_support, spec.n));

    std::vector<VarIndex> pool;
    for (VarIndex v = 1; v <= spec.n; ++v) pool.push_back(v);
    rng.shuffle(pool);
    std::size_t next_free = 0;

    for (int k = 1; k <= total; ++k) {
        const Sense sense = k <= spec.num_eq ? Sense::Eq : Sense::Le;
        std::vector<VarIndex> support;
        if (spec.disjoint) {
            const auto left = static_cast<long>(pool.size() - next_free);
            if (left <= 0) break;
            const long remaining_constraints = total - k + 1;
            long size = rng.uniform(std::min(2L, left), std::min<long>(max_support, left));
            if (remaining_constraints > 1) size = std::min(size, std::max(1L, left - (remaining_constraints - 1)));
            for (long t = 0; t < size; ++t) support.push_back(pool[next_free++]);
        } else {
            std::vector<VarIndex> all(pool);
            rng.shuffle(all);
            const long size = rng.uniform(std::min(2, max_support), max_support);
            support.assign(all.begin(), all.begin() + size);
        }
        std::sort(support.begin(), support.end());
        std::map<VarIndex, Rational> terms;
        for (VarIndex v : support) {
            if (spec.unit_coefficients) {
                terms[v] = 1;
                continue;
            }
            const long num = rng.uniform(1, 4);
            const long den = rng.uniform(1, 2);
            terms[v] = make_rational(num, den);
        }
        Rational rhs = 0;
        if (spec.unit_coefficients && spec.unit_rhs) {
            rhs = 1;
        } else {
            // A random nonempty subset sum keeps the row satisfiable on its own.
            for (const auto& [v, a] : terms) {
                if (rng.chance(0.5)) rhs += a;
            }
            if (sgn(rhs) == 0) rhs = terms.begin()->second;
        }
        inst.constraints.push_back(make_constraint(k, sense, std::move(terms), rhs));
    }

    std::set<VarIndex> covered;
    for (const auto& c : inst.constraints) {
        for (const auto& [v, a] : c.terms) covered.insert(v);
    }
    std::vector<ProductPair> candidates;
    for (VarIndex i : covered) {
        for (VarIndex j : covered) {
            if (i < j) candidates.push_back({i, j});
        }
    }
    for (const auto& p : candidates) {
        if (rng.chance(spec.density)) inst.products.push_back(p);
    }
    if (inst.products.empty() && !candidates.empty()) {
        inst.products.push_back(candidates[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(candidates.size()) - 1))]);
    }
    for (VarIndex v = 1; v <= spec.n; ++v) {
        const long c = rng.uniform(-spec.max_cost, spec.max_cost);
        if (c != 0) inst.objective.linear[v] = c;
    }
    for (const auto& p : inst.products) {
        const long d = rng.uniform(-spec.max_cost, spec.max_cost);
        if (d != 0) inst.objective.quadratic[p] = d;
    }
    return inst;
}

inline BqpInstance gen_random(int n, int num_eq, int num_ineq, double density, std::uint64_t seed) {
    RandomSpec spec;
    spec.n = n;
    spec.num_eq = num_eq;
    spec.num_ineq = num_ineq;
    spec.density = density;
    return gen_random(spec, seed);
}

}  // namespace compactlin
