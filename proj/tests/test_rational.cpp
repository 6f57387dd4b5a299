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

#include "compactlin/rational.hpp"

using compactlin::Rational;

TEST_CASE("rationals are kept in lowest terms", "[rational]") {
    const auto r = compactlin::make_rational(6, -4);
    CHECK(r.get_num() == -3);
    CHECK(r.get_den() == 2);
    CHECK_THROWS_AS(compactlin::make_rational(1, 0), std::invalid_argument);
}

TEST_CASE("parse accepts integers and fractions", "[rational]") {
    CHECK(compactlin::parse_rational("7") == 7);
    CHECK(compactlin::parse_rational("-3/9") == Rational(-1, 3));
    CHECK_THROWS(compactlin::parse_rational(""));
    CHECK_THROWS(compactlin::parse_rational("1/0"));
    CHECK_THROWS(compactlin::parse_rational("abc"));
}

TEST_CASE("terminating decimals are exact", "[rational]") {
    CHECK(compactlin::is_terminating(Rational(3, 8)));
    CHECK(compactlin::is_terminating(Rational(7, 50)));
    CHECK_FALSE(compactlin::is_terminating(Rational(1, 3)));
    CHECK(compactlin::exact_decimal(Rational(3, 8)) == "0.375");
    CHECK(compactlin::exact_decimal(Rational(-9, 4)) == "-2.25");
    CHECK(compactlin::exact_decimal(Rational(12)) == "12");
    CHECK_THROWS(compactlin::exact_decimal(Rational(1, 3)));
}

TEST_CASE("approximate decimals use twelve significant digits", "[rational]") {
    CHECK(compactlin::approx_decimal(Rational(1, 3)) == "0.333333333333");
    CHECK(compactlin::approx_decimal(Rational(-2, 3)) == "-0.666666666667");
    CHECK(compactlin::approx_decimal(Rational(100, 3)) == "33.3333333333");
    CHECK(compactlin::approx_decimal(Rational(0)) == "0");
}
