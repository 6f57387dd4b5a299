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


#include <catch_amalgamated.hpp>

#include "oracles.hpp"

using namespace compactlin;

namespace {

BqpInstance assignment_pair() {
    BqpInstance inst;
    inst.n = 2;
    inst.constraints.push_back(make_constraint(1, Sense::Eq, {{1, 1}, {2, 1}}, 1));
    inst.products = {{1, 2}};
    return inst;
}

BqpInstance knapsack_three() {
    BqpInstance inst;
    inst.n = 3;
    inst.constraints.push_back(make_constraint(1, Sense::Le, {{1, 1}, {2, 1}, {3, 1}}, 1));
    inst.products = {{1, 2}};
    return inst;
}

std::size_t count_kind(const CoverModel& m, MultiplierKind kind) {
    return static_cast<std::size_t>(std::count_if(m.z.begin(), m.z.end(), [&](const CoverVar& v) { return v.kind == kind; }));
}

}  // namespace

TEST_CASE("cover model of the assignment toy", "[cover]") {
    const auto m = build_cover_model(assignment_pair(), CoverWeights::defaults(assignment_pair()));
    REQUIRE(m.num_z() == 2);
    CHECK(m.z[0].k == 1);
    CHECK(m.z[0].i == 1);
    CHECK(m.z[1].i == 2);
    CHECK(count_kind(m, MultiplierKind::Eq) == 2);
    CHECK(m.f_col.size() == 3);
    CHECK(m.f_col.count({1, 1}));
    CHECK(m.f_col.count({1, 2}));
    CHECK(m.f_col.count({2, 2}));
    // Objective: w_E on each z, w_Q on each f.
    CHECK(m.lp.objective[m.z[0].col] == 3);
    CHECK(m.lp.objective[m.f_col.at({1, 2})] == 1);
    // One fixing row, one condition row of each kind per pair.
    std::size_t fix = 0, c1 = 0, c2 = 0, c3 = 0;
    for (const auto& t : m.row_tags) {
        fix += t.kind == CoverRowKind::FixProduct;
        c1 += t.kind == CoverRowKind::Condition1;
        c2 += t.kind == CoverRowKind::Condition2;
        c3 += t.kind == CoverRowKind::Condition3;
    }
    CHECK(fix == 1);
    CHECK(c1 == 3);
    CHECK(c2 == 3);
    CHECK(c3 == 3);
}

TEST_CASE("pure equations have no inequality memberships", "[cover]") {
    auto inst = gen_random(5, 2, 0, 0.6, 9);
    const auto m = build_cover_model(inst, CoverWeights::defaults(inst));
    CHECK(count_kind(m, MultiplierKind::IPlus) == 0);
    CHECK(count_kind(m, MultiplierKind::IMinus) == 0);
}

TEST_CASE("an inequality gets both membership kinds", "[cover]") {
    const auto inst = knapsack_three();
    const auto m = build_cover_model(inst, CoverWeights::defaults(inst));
    CHECK(count_kind(m, MultiplierKind::IPlus) == 3);
    CHECK(count_kind(m, MultiplierKind::IMinus) == 3);
}

TEST_CASE("demanding an uncoverable product is infeasible", "[cover]") {
    BqpInstance inst = assignment_pair();
    inst.n = 3;
    inst.products = {{1, 3}};
    CHECK_THROWS_AS(build_cover_model(inst, CoverWeights::defaults(inst), std::vector<ProductPair>{{1, 3}}), CoverInfeasible);
    // By default it is excluded and reported.
    const auto m = build_cover_model(inst, CoverWeights::defaults(inst));
    CHECK(m.demanded.empty());
    CHECK(m.excluded == std::vector<ProductPair>{{1, 3}});
}

TEST_CASE("exact cover of the assignment toy", "[cover]") {
    const auto inst = assignment_pair();
    const auto w = CoverWeights::defaults(inst);
    const auto sol = solve_cover_exact(build_cover_model(inst, w));
    CHECK(sol.design.at(1).eq == std::set<VarIndex>{1, 2});
    CHECK(sol.objective == 2 * w.eq + 3 * w.q);
    CHECK(induce_products(inst, sol.design).pairs == std::set<ProductPair>{{1, 1}, {1, 2}, {2, 2}});
    CHECK(oracle::enumerate_cover(build_cover_model(inst, w)).best == sol.objective);
}

TEST_CASE("exact cover of the knapsack example", "[cover]") {
    const auto inst = knapsack_three();
    const auto w = CoverWeights::defaults(inst);
    const auto model = build_cover_model(inst, w);
    const auto sol = solve_cover_exact(model);
    // (1,3) enters Q through x1 in A, so Condition 1 pulls x3 into B+ as well.
    // The cover model also demands Condition 3 on squares, which fills B-.
    CHECK(sol.design.at(1).plus == std::set<VarIndex>{1, 2, 3});
    CHECK(sol.design.at(1).minus == std::set<VarIndex>{1, 2, 3});
    CHECK(induce_products(inst, sol.design).pairs.size() == 6);
    CHECK(sol.objective == 6 * w.of(MultiplierKind::IPlus) + 6 * w.q);
    const auto brute = oracle::enumerate_cover(model);
    CHECK(brute.best == sol.objective);
    CHECK(brute.lex_first == sol.z);
}

TEST_CASE("QAP of size two selects a single equation family", "[cover]") {
    QapSpec spec;
    spec.n = 2;
    auto [inst, preset] = gen_qap(spec, 5);
    const auto w = CoverWeights::defaults(inst);
    const auto sol = solve_cover_exact(build_cover_model(inst, w));
    const auto m = compact_linearize(inst, sol.design);
    CHECK(m.count(RowOrigin::CompactE) == 4);
    CHECK(sol.design.size() == 4);
    CHECK(sol.objective == cover_cost(inst, *preset, w));
}

TEST_CASE("branch and bound matches enumeration and picks the lexicographic optimum", "[cover][oracle]") {
    int cases = 0;
    for (std::uint64_t seed = 1; cases < 60; ++seed) {
        RandomSpec spec;
        spec.n = 2 + static_cast<int>(seed % 4);
        spec.num_eq = static_cast<int>(seed % 2);
        spec.num_ineq = 1 - spec.num_eq + static_cast<int>(seed % 3 == 0);
        spec.density = 0.5;
        const auto inst = gen_random(spec, seed);
        const auto model = build_cover_model(inst, CoverWeights::defaults(inst));
        if (model.num_z() > 12) continue;
        ++cases;
        const auto sol = solve_cover_exact(model);
        const auto brute = oracle::enumerate_cover(model);
        REQUIRE(brute.best);
        CHECK(sol.objective == *brute.best);
        CHECK(sol.z == brute.lex_first);
        CHECK(oracle::cover_cost(inst, model.weights, sol.design) == sol.objective);
    }
}

TEST_CASE("greedy covers are feasible", "[cover]") {
    for (std::uint64_t seed = 1; seed <= 80; ++seed) {
        RandomSpec spec;
        spec.n = 3 + static_cast<int>(seed % 6);
        spec.num_eq = static_cast<int>(seed % 3);
        spec.num_ineq = 1 + static_cast<int>(seed % 2);
        const auto inst = gen_random(spec, seed);
        const auto w = CoverWeights::defaults(inst);
        const auto b = solve_cover_greedy(inst, w);
        const auto rep = check_conditions(inst, b, induce_products(inst, b));
        CHECK(rep.satisfied_including_squares());
        CHECK(oracle::cover_cost(inst, w, b).has_value());
        CHECK(solve_cover_greedy(inst, w) == b);
    }
}

TEST_CASE("greedy is optimal on disjoint equations", "[cover]") {
    CHECK(solve_cover_greedy(assignment_pair(), CoverWeights::defaults(assignment_pair())).at(1).eq == std::set<VarIndex>{1, 2});
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        RandomSpec spec;
        spec.n = 4 + static_cast<int>(seed % 5);
        spec.num_eq = 2 + static_cast<int>(seed % 2);
        spec.num_ineq = 0;
        spec.disjoint = true;
        spec.unit_coefficients = seed % 2 == 0;
        const auto inst = gen_random(spec, seed);
        const auto w = CoverWeights::defaults(inst);
        const auto exact = solve_cover_exact(build_cover_model(inst, w));
        CHECK(cover_cost(inst, solve_cover_greedy(inst, w), w) == exact.objective);
    }
}

TEST_CASE("cover relaxation is integral on disjoint equations", "[cover]") {
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
        RandomSpec spec;
        spec.n = 4 + static_cast<int>(seed % 4);
        spec.num_eq = 2;
        spec.num_ineq = 0;
        spec.disjoint = true;
        const auto inst = gen_random(spec, 100 + seed);
        const auto model = build_cover_model(inst, CoverWeights::defaults(inst));
        const auto relax = solve_cover_relaxation(model);
        REQUIRE(relax.status == lp::Status::Optimal);
        for (const auto& z : model.z) CHECK(is_integer(relax.point[z.col]));
        CHECK(solve_cover_exact(model).root_integral);
    }
}

TEST_CASE("enlarging P never lowers the optimum", "[cover]") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        RandomSpec spec;
        spec.n = 4;
        spec.num_eq = 1;
        spec.num_ineq = 1;
        spec.density = 1.0;
        const auto full = gen_random(spec, seed);
        auto part = full;
        part.products.resize((full.products.size() + 1) / 2);
        part.objective.quadratic.clear();
        const auto w = CoverWeights::defaults(full);
        const auto a = solve_cover_exact(build_cover_model(part, w)).objective;
        const auto b = solve_cover_exact(build_cover_model(full, w)).objective;
        CHECK(a <= b);
    }
}

TEST_CASE("weights must be positive", "[cover]") {
    CoverWeights w;
    w.q = 0;
    CHECK_THROWS_AS(build_cover_model(assignment_pair(), w), std::invalid_argument);
}

TEST_CASE("design cost counts memberships and products", "[cover]") {
    const auto inst = knapsack_three();
    const CoverWeights w{2, 3, 5, 1};
    MultiplierAssignment b;
    b.add(1, MultiplierKind::IPlus, 1);
    b.add(1, MultiplierKind::IMinus, 2);
    // Q = {(1,1),(1,2),(1,3),(2,2),(2,3)}
    CHECK(cover_cost(inst, b, w) == 3 + 5 + 5);
}

TEST_CASE("default weights minimize memberships first, then induced pairs", "[cover][oracle]") {
    int tested = 0;
    for (int s = 0; s < 200 && tested < 60; ++s) {
        RandomSpec spec;
        spec.n = 3 + s % 3;
        spec.num_eq = 1 + s % 2;
        spec.num_ineq = s % 2;
        const auto inst = gen_random(spec, 3000 + static_cast<std::uint64_t>(s));
        const auto w = CoverWeights::defaults(inst);
        const auto m = build_cover_model(inst, w);
        if (m.num_z() > 14) continue;
        std::optional<std::pair<std::size_t, std::size_t>> lex;
        std::vector<int> z(m.num_z());
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << z.size()); ++mask) {
            for (std::size_t t = 0; t < z.size(); ++t) z[t] = static_cast<int>(mask >> t & 1U);
            const auto b = m.decode(z);
            if (!oracle::cover_cost(inst, w, b)) continue;
            const std::pair<std::size_t, std::size_t> key{b.size(), oracle::induced(inst, b).size()};
            if (!lex || key < *lex) lex = key;
        }
        REQUIRE(lex);
        const auto sol = solve_cover_exact(m);
        CHECK(sol.design.size() == lex->first);
        CHECK(oracle::induced(inst, sol.design).size() == lex->second);
        ++tested;
    }
    CHECK(tested >= 30);
}
