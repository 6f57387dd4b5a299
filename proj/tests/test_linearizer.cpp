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

/// Every membership of every constraint switched on with probability 1/2.
MultiplierAssignment random_design(const BqpInstance& inst, Rng& rng) {
    MultiplierAssignment b;
    for (const auto& c : inst.constraints) {
        const auto kinds = c.sense == Sense::Eq ? std::vector<MultiplierKind>{MultiplierKind::Eq}
                                                : std::vector<MultiplierKind>{MultiplierKind::IPlus, MultiplierKind::IMinus};
        for (auto kind : kinds) {
            for (VarIndex v = 1; v <= inst.n; ++v) {
                if (rng.chance(0.4)) b.add(c.id, kind, v);
            }
        }
    }
    return b;
}

std::string row_text(const LinearizedModel& m, const ModelRow& r) {
    std::string s = r.name + ":";
    for (const auto& [c, a] : r.terms) s += " " + a.get_str() + "*" + m.columns[c].name;
    s += r.sense == RowSense::Eq ? " = " : r.sense == RowSense::Le ? " <= " : " >= ";
    return s + r.rhs.get_str();
}

}  // namespace

TEST_CASE("induced products of the assignment toy", "[linearizer]") {
    const auto inst = assignment_pair();
    MultiplierAssignment b;
    b.add(1, MultiplierKind::Eq, 1);
    b.add(1, MultiplierKind::Eq, 2);
    const auto q = induce_products(inst, b);
    CHECK(q.pairs == std::set<ProductPair>{{1, 1}, {1, 2}, {2, 2}});
    CHECK(q.squares().size() == 2);
    CHECK(q.provenance.at({1, 2}).size() == 2);
    CHECK(induce_products(inst, MultiplierAssignment{}).pairs.empty());
}

TEST_CASE("induced products of the knapsack example", "[linearizer]") {
    const auto inst = knapsack_three();
    MultiplierAssignment b;
    b.add(1, MultiplierKind::IPlus, 1);
    b.add(1, MultiplierKind::IPlus, 2);
    b.add(1, MultiplierKind::IMinus, 1);
    const std::set<ProductPair> want{{1, 1}, {1, 2}, {1, 3}, {2, 2}, {2, 3}};
    CHECK(induce_products(inst, b).pairs == want);
    CHECK(oracle::induced(inst, b) == want);
}

TEST_CASE("induced products and conditions agree with the literal definitions", "[linearizer][oracle]") {
    Rng rng(77);
    for (int t = 0; t < 150; ++t) {
        RandomSpec spec;
        spec.n = 2 + t % 5;
        spec.num_eq = t % 3;
        spec.num_ineq = 1 + t % 2;
        const auto inst = gen_random(spec, 1000 + t);
        const auto b = random_design(inst, rng);
        const auto q = induce_products(inst, b);
        REQUIRE(q.pairs == oracle::induced(inst, b));
        const auto rep = check_conditions(inst, b, q);
        for (const auto& pc : rep.pairs) {
            const auto want = oracle::conditions(inst, b, pc.pair);
            CHECK(pc.c1.has_value() == want[0]);
            CHECK(pc.c2.has_value() == want[1]);
            CHECK(pc.c3.has_value() == want[2]);
        }
    }
}

TEST_CASE("conditions on the assignment toy hold with k equal to l", "[linearizer]") {
    const auto inst = assignment_pair();
    MultiplierAssignment b;
    b.add(1, MultiplierKind::Eq, 1);
    b.add(1, MultiplierKind::Eq, 2);
    const auto rep = check_conditions(inst, b, induce_products(inst, b));
    const auto* pc = rep.find({1, 2});
    REQUIRE(pc);
    REQUIRE(pc->ok());
    CHECK(pc->c1->k == 1);
    CHECK(pc->c2->k == 1);
    CHECK(pc->c3_implied());
    CHECK(rep.satisfied());
}

TEST_CASE("knapsack without complement multipliers loses condition 3", "[linearizer]") {
    const auto inst = knapsack_three();
    MultiplierAssignment b;
    b.add(1, MultiplierKind::IPlus, 1);
    b.add(1, MultiplierKind::IPlus, 2);
    const auto rep = check_conditions(inst, b, induce_products(inst, b));
    const auto* pc = rep.find({1, 2});
    REQUIRE(pc);
    CHECK(pc->c1);
    CHECK(pc->c2);
    CHECK_FALSE(pc->c3);
    CHECK_FALSE(rep.satisfied());
    try {
        compact_linearize(inst, b);
        FAIL("expected ConditionViolation");
    } catch (const ConditionViolation& e) {
        CHECK(e.condition() == 3);
    }
}

TEST_CASE("an uninduced product of P is a violation", "[linearizer]") {
    const auto inst = assignment_pair();
    MultiplierAssignment b;
    try {
        compact_linearize(inst, b);
        FAIL("expected ConditionViolation");
    } catch (const ConditionViolation& e) {
        CHECK(e.condition() == 0);
        CHECK(e.pair() == ProductPair{1, 2});
    }
}

TEST_CASE("assignment toy forces the product to zero", "[linearizer]") {
    const auto inst = assignment_pair();
    MultiplierAssignment b;
    b.add(1, MultiplierKind::Eq, 1);
    b.add(1, MultiplierKind::Eq, 2);
    const auto m = compact_linearize(inst, b);
    REQUIRE(m.rows.size() == 3);
    CHECK(row_text(m, m.rows[0]) == "K_E_k1: 1*x1 1*x2 = 1");
    // x1 * (x1 + x2 - 1) = 0 becomes x1 + y12 - x1 = 0.
    CHECK(row_text(m, m.rows[1]) == "CL_E_k1_j1: 1*y_1_2 = 0");
    CHECK(row_text(m, m.rows[2]) == "CL_E_k1_j2: 1*y_1_2 = 0");
    CHECK(m.num_y() == 1);
}

TEST_CASE("knapsack rows follow the three printed forms", "[linearizer]") {
    const auto inst = knapsack_three();
    MultiplierAssignment b;
    b.add(1, MultiplierKind::IPlus, 1);
    b.add(1, MultiplierKind::IPlus, 2);
    b.add(1, MultiplierKind::IPlus, 3);
    b.add(1, MultiplierKind::IMinus, 1);
    b.add(1, MultiplierKind::IMinus, 2);
    const auto m = compact_linearize(inst, b);
    REQUIRE(m.find_row("CL_Ip_k1_j1"));
    REQUIRE(m.find_row("CL_Im_k1_j1"));
    CHECK(row_text(m, *m.find_row("CL_Ip_k1_j1")) == "CL_Ip_k1_j1: 1*y_1_2 1*y_1_3 <= 0");
    CHECK(row_text(m, *m.find_row("CL_Ip_k1_j2")) == "CL_Ip_k1_j2: 1*y_1_2 1*y_2_3 <= 0");
    CHECK(row_text(m, *m.find_row("CL_Ip_k1_j3")) == "CL_Ip_k1_j3: 1*y_1_3 1*y_2_3 <= 0");
    // x2 + x3 - y12 - y13 <= 1 - x1
    CHECK(row_text(m, *m.find_row("CL_Im_k1_j1")) == "CL_Im_k1_j1: 1*x1 1*x2 1*x3 -1*y_1_2 -1*y_1_3 <= 1");
}

TEST_CASE("compact rows re-expand to the multiplied constraints", "[linearizer][oracle]") {
    Rng rng(4242);
    int checked = 0;
    for (int t = 0; t < 120; ++t) {
        RandomSpec spec;
        spec.n = 3 + t % 4;
        spec.num_eq = 1 + t % 2;
        spec.num_ineq = t % 3;
        const auto inst = gen_random(spec, 500 + t);
        const auto b = random_design(inst, rng);
        const auto m = compact_linearize_unchecked(inst, b);
        std::size_t compact_rows = 0;
        for (const auto& row : m.rows) {
            if (!is_compact(row.origin)) continue;
            ++compact_rows;
            const auto& c = inst.constraint(row.k);
            const auto want = oracle::expected_polynomial(c, row.j, row.origin == RowOrigin::CompactIMinus);
            CHECK(oracle::row_polynomial(m, row) == want);
            ++checked;
        }
        // One row per membership unless it vanished over the unit box.
        CHECK(compact_rows <= b.size());
    }
    CHECK(checked > 200);
}

TEST_CASE("row count matches the design when no row degenerates", "[linearizer]") {
    for (int n = 2; n <= 5; ++n) {
        QapSpec spec;
        spec.n = n;
        spec.preset = QapPreset::FriezeYadegar;
        auto [inst, b] = gen_qap(spec, 3);
        const auto m = compact_linearize(inst, *b);
        CHECK(m.count_compact() == b->size());
    }
}

TEST_CASE("singleton constraints degenerate after square elimination", "[linearizer]") {
    BqpInstance inst;
    inst.n = 2;
    inst.constraints.push_back(make_constraint(1, Sense::Eq, {{1, 1}}, 1));
    inst.constraints.push_back(make_constraint(2, Sense::Eq, {{2, 2}}, 1));
    inst.products = {{1, 2}};
    MultiplierAssignment b;
    b.add(1, MultiplierKind::Eq, 1);  // x1 = x1: dropped
    b.add(1, MultiplierKind::Eq, 2);
    b.add(2, MultiplierKind::Eq, 1);
    b.add(2, MultiplierKind::Eq, 2);  // 2 x2 = x2: kept, forces x2 = 0
    const auto m = compact_linearize(inst, b);
    CHECK_FALSE(m.find_row("CL_E_k1_j1"));
    REQUIRE(m.find_row("CL_E_k2_j2"));
    CHECK(row_text(m, *m.find_row("CL_E_k2_j2")) == "CL_E_k2_j2: 1*x2 = 0");
}

TEST_CASE("standard linearization emits three rows per product", "[linearizer]") {
    auto inst = assignment_pair();
    auto m = glover_woolsey(inst);
    CHECK(m.count_glover_woolsey() == 3);
    CHECK(row_text(m, *m.find_row("GW1_i1_j2")) == "GW1_i1_j2: -1*x1 1*y_1_2 <= 0");
    CHECK(row_text(m, *m.find_row("GW2_i1_j2")) == "GW2_i1_j2: -1*x2 1*y_1_2 <= 0");
    CHECK(row_text(m, *m.find_row("GW3_i1_j2")) == "GW3_i1_j2: -1*x1 -1*x2 1*y_1_2 >= -1");

    inst.products = {{1, 1}};
    inst.objective.quadratic[{1, 1}] = 7;
    m = glover_woolsey(inst);
    CHECK(m.count_glover_woolsey() == 0);
    CHECK(m.num_y() == 0);
    CHECK(m.objective.at(m.x_col(1)) == 7);
}

TEST_CASE("standard linearization of QAP", "[linearizer]") {
    const std::size_t want[] = {54, 216, 600};
    for (int n = 3; n <= 5; ++n) {
        QapSpec spec;
        spec.n = n;
        spec.preset = QapPreset::GWBaseline;
        auto [inst, b] = gen_qap(spec, 1);
        CHECK_FALSE(b.has_value());
        CHECK(glover_woolsey(inst).count_glover_woolsey() == want[n - 3]);
    }
}

TEST_CASE("products failing the prerequisite fall back to standard rows", "[linearizer]") {
    BqpInstance inst;
    inst.n = 3;
    inst.constraints.push_back(make_constraint(1, Sense::Eq, {{1, 1}, {2, 1}}, 1));
    inst.products = {{1, 2}, {1, 3}};
    MultiplierAssignment b;
    b.add(1, MultiplierKind::Eq, 1);
    b.add(1, MultiplierKind::Eq, 2);
    const auto m = compact_linearize(inst, b);
    CHECK(m.count_glover_woolsey() == 3);
    CHECK(m.find_row("GW3_i1_j3"));
    CHECK(m.count_compact() == 2);
}

TEST_CASE("objective coefficients move onto the product columns", "[linearizer]") {
    auto inst = assignment_pair();
    inst.objective.linear[1] = 2;
    inst.objective.quadratic[{1, 2}] = Rational(-3, 2);
    MultiplierAssignment b;
    b.add(1, MultiplierKind::Eq, 1);
    b.add(1, MultiplierKind::Eq, 2);
    const auto m = compact_linearize(inst, b);
    CHECK(m.objective.at(m.x_col(1)) == 2);
    CHECK(m.objective.at(*m.y_col({1, 2})) == Rational(-3, 2));
}
