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

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace compactlin {

/// Exact arbitrary-precision rational. GMP keeps every result in lowest
/// terms with a positive denominator.
using Rational = mpq_class;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational r{mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den))};
    r.canonicalize();
    return r;
}

/// Parses "p", "-p" or "p/q".
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    Rational r;
    if (s.empty() || r.set_str(s, 10) != 0) {
        throw std::invalid_argument("malformed rational '" + s + "'");
    }
    if (r.get_den() == 0) throw std::invalid_argument("rational with zero denominator");
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

/// True when the value has a finite decimal expansion (denominator 2^a 5^b).
inline bool is_terminating(const Rational& r) {
    mpz_class d = r.get_den();
    while (mpz_divisible_ui_p(d.get_mpz_t(), 2)) d /= 2;
    while (mpz_divisible_ui_p(d.get_mpz_t(), 5)) d /= 5;
    return d == 1;
}

/// Exact decimal text for a terminating rational ("3", "-0.25", "1.125").
inline std::string exact_decimal(const Rational& r) {
    if (!is_terminating(r)) throw std::invalid_argument("non-terminating rational " + r.get_str());
    mpz_class num = abs(r.get_num());
    mpz_class den = r.get_den();
    mpz_class whole = num / den;
    mpz_class rem = num % den;
    std::string out = (sgn(r) < 0 ? "-" : "") + whole.get_str();
    if (rem != 0) {
        out += '.';
        while (rem != 0) {
            rem *= 10;
            mpz_class digit = rem / den;
            out += digit.get_str();
            rem %= den;
        }
    }
    return out;
}

/// Decimal rounded to `digits` significant digits, in plain or exponent form.
inline std::string approx_decimal(const Rational& r, int digits = 12) {
    if (sgn(r) == 0) return "0";
    mpf_class f(r, 256);
    mp_exp_t exp = 0;
    std::string mant = f.get_str(exp, 10, static_cast<std::size_t>(digits));
    bool neg = !mant.empty() && mant[0] == '-';
    if (neg) mant.erase(0, 1);
    std::string out;
    if (exp > 0 && exp <= 15) {
        if (static_cast<std::size_t>(exp) >= mant.size()) {
            out = mant + std::string(static_cast<std::size_t>(exp) - mant.size(), '0');
        } else {
            out = mant.substr(0, static_cast<std::size_t>(exp)) + "." + mant.substr(static_cast<std::size_t>(exp));
        }
    } else if (exp <= 0 && exp > -6) {
        out = "0." + std::string(static_cast<std::size_t>(-exp), '0') + mant;
    } else {
        out = mant.substr(0, 1);
        if (mant.size() > 1) out += "." + mant.substr(1);
        out += "e" + std::to_string(exp - 1);
    }
    return neg ? "-" + out : out;
}

}  // namespace compactlin
