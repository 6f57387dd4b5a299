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

#include "compactlin/bqp_model.hpp"

using namespace compactlin;

namespace {
BqpInstance assignment_pair() {
    BqpInstance inst;
    inst.n = 2;
    inst.constraints.push_back(make_constraint(1, Sense::Eq, {{1, 1}, {2, 1}}, 1));
    inst.products = {{1, 2}};
    return inst;
}
}  // namespace

TEST_CASE("a single equation covering both factors is clean", "[model]") {
    const auto rep = validate(assignment_pair());
    CHECK(rep.clean());
    CHECK(rep.all_linearizable());
}

TEST_CASE("negative coefficients and right-hand sides are reported", "[model]") {
    auto inst = assignment_pair();
    inst.constraints[0].terms[1] = -1;
    inst.constraints[0].rhs = 0;
    const auto rep = validate(inst);
    REQUIRE(rep.issues.size() == 2);
    CHECK(rep.issues[0].kind == IssueKind::NonPositiveCoefficient);
    CHECK(rep.issues[0].constraint_id == 1);
    CHECK(rep.issues[0].variable == 1);
    CHECK(rep.issues[1].kind == IssueKind::NonPositiveRhs);
}

TEST_CASE("checked construction refuses bad constraints", "[model]") {
    CHECK_THROWS_AS(make_constraint(1, Sense::Eq, {}, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_constraint(1, Sense::Eq, {{1, -1}}, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_constraint(1, Sense::Le, {{1, 1}}, 0), std::invalid_argument);
}

TEST_CASE("a factor outside every constraint makes the product unlinearizable", "[model]") {
    BqpInstance inst;
    inst.n = 3;
    inst.constraints.push_back(make_constraint(1, Sense::Eq, {{1, 1}, {2, 1}}, 1));
    inst.products = {{1, 3}};
    const auto rep = validate(inst);
    CHECK(rep.clean());
    REQUIRE(rep.unlinearizable.size() == 1);
    CHECK(rep.unlinearizable[0] == ProductPair{1, 3});
    CHECK(linearizable_products(inst).empty());
}

TEST_CASE("ordering, duplicates and dangling products", "[model]") {
    auto inst = assignment_pair();
    inst.products = {{2, 1}, {1, 2}, {1, 2}};
    inst.objective.quadratic[{1, 1}] = 3;
    const auto rep = validate(inst);
    std::vector<IssueKind> kinds;
    for (const auto& i : rep.issues) kinds.push_back(i.kind);
    CHECK(kinds == std::vector<IssueKind>{IssueKind::UnorderedProduct, IssueKind::DuplicateProduct, IssueKind::ObjectiveProductNotInP});

    auto dangling = assignment_pair();
    dangling.products = {{1, 5}};
    CHECK_THROWS_AS(validate(dangling), ModelError);
}

TEST_CASE("validation is pure", "[model]") {
    auto inst = assignment_pair();
    inst.constraints[0].terms[2] = 0;
    CHECK(validate(inst) == validate(inst));
}

TEST_CASE("canonical form is idempotent and order independent", "[model]") {
    BqpInstance a;
    a.n = 4;
    a.constraints.push_back(make_constraint(2, Sense::Le, {{4, 2}, {3, 1}}, 2));
    a.constraints.push_back(make_constraint(1, Sense::Eq, {{2, 1}, {1, 1}}, 1));
    a.products = {{3, 4}, {1, 2}, {2, 3}};
    a.objective.linear[1] = 0;
    a.objective.linear[2] = 5;

    BqpInstance b;
    b.n = 4;
    b.constraints.push_back(make_constraint(1, Sense::Eq, {{1, 1}, {2, 1}}, 1));
    b.constraints.push_back(make_constraint(2, Sense::Le, {{3, 1}, {4, 2}}, 2));
    b.products = {{2, 3}, {3, 4}, {1, 2}};
    b.objective.linear[2] = 5;

    const auto ca = canonicalize(a);
    CHECK(ca == canonicalize(b));
    CHECK(canonicalize(ca) == ca);
    CHECK(ca.constraints.front().id == 1);
    CHECK(ca.products == std::vector<ProductPair>{{1, 2}, {2, 3}, {3, 4}});
    CHECK(ca.objective.linear.size() == 1);
}

TEST_CASE("canonicalize refuses reported defects", "[model]") {
    auto inst = assignment_pair();
    inst.products.push_back({1, 2});
    CHECK_THROWS_AS(canonicalize(inst), ModelError);
}

TEST_CASE("unselected constraints become pass-through rows", "[model]") {
    BqpInstance inst;
    inst.n = 3;
    inst.constraints.push_back(make_constraint(1, Sense::Eq, {{1, 1}, {2, 1}}, 1));
    inst.constraints.push_back(make_constraint(2, Sense::Le, {{2, 1}, {3, 1}}, 1));
    inst.products = {{1, 2}};
    const auto sel = select_constraints(inst, {1});
    REQUIRE(sel.constraints.size() == 1);
    CHECK(sel.constraints[0].id == 1);
    REQUIRE(sel.passthrough.size() == 1);
    CHECK(sel.passthrough[0].name == "K_k2");
    CHECK(sel.passthrough[0].sense == RowSense::Le);
    CHECK_THROWS_AS(select_constraints(inst, {7}), ModelError);
}
