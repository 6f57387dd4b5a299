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
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "compactlin/bqp_model.hpp"
#include "compactlin/linearizer.hpp"
#include "compactlin/multipliers.hpp"
#include "compactlin/verifier.hpp"

namespace compactlin::io {

using json = nlohmann::ordered_json;

class FormatError : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline Rational rational_from_parts(const json& num, const json& den, const std::string& where) {
    if (!num.is_number_integer() || !den.is_number_integer()) throw FormatError(where + ": expected integer numerator and denominator");
    const auto d = den.get<std::int64_t>();
    if (d == 0) throw FormatError(where + ": zero denominator");
    return make_rational(num.get<std::int64_t>(), d);
}

/// Accepts [num, den], a bare integer, or a "p/q" string.
inline Rational read_rational(const json& v, const std::string& where) {
    if (v.is_array() && v.size() == 2) return rational_from_parts(v[0], v[1], where);
    if (v.is_number_integer()) return Rational(v.get<long>());
    if (v.is_string()) {
        try {
            return parse_rational(v.get<std::string>());
        } catch (const std::exception&) {
            throw FormatError(where + ": bad rational '" + v.get<std::string>() + "'");
        }
    }
    throw FormatError(where + ": expected a rational");
}

/// Numerator and denominator as JSON integers when they fit in 64 bits,
/// otherwise the exact "p/q" string.
inline json write_rational(const Rational& r) {
    if (r.get_num().fits_slong_p() && r.get_den().fits_slong_p()) {
        return json::array({r.get_num().get_si(), r.get_den().get_si()});
    }
    return r.get_str();
}

/// A term [var, num, den] or [var, "p/q"].
inline std::pair<VarIndex, Rational> read_term(const json& t, const std::string& where) {
    if (!t.is_array() || t.empty() || !t[0].is_number_integer()) throw FormatError(where + ": expected [var, num, den]");
    const VarIndex v = t[0].get<int>();
    if (t.size() == 3) return {v, rational_from_parts(t[1], t[2], where)};
    if (t.size() == 2) return {v, read_rational(t[1], where)};
    throw FormatError(where + ": expected [var, num, den]");
}

inline json write_term(VarIndex v, const Rational& a) {
    json r = write_rational(a);
    if (r.is_array()) return json::array({v, r[0], r[1]});
    return json::array({v, r});
}

inline ProductPair read_pair(const json& p, const std::string& where) {
    if (!p.is_array() || p.size() < 2 || !p[0].is_number_integer() || !p[1].is_number_integer()) {
        throw FormatError(where + ": expected [i, j]");
    }
    return {p[0].get<int>(), p[1].get<int>()};
}

inline const char* sense_name(RowSense s) {
    switch (s) {
        case RowSense::Eq: return "eq";
        case RowSense::Le: return "le";
        case RowSense::Ge: return "ge";
    }
    return "eq";
}

inline RowSense read_row_sense(const json& s, const std::string& where) {
    const auto v = s.is_string() ? s.get<std::string>() : std::string{};
    if (v == "eq") return RowSense::Eq;
    if (v == "le") return RowSense::Le;
    if (v == "ge") return RowSense::Ge;
    throw FormatError(where + ": sense must be eq, le or ge");
}

}  // namespace detail

/// Parses the instance schema. Constraint ids default to their 1-based
/// position. The result is not validated; callers run validate().
inline BqpInstance instance_from_json(const json& j) {
    if (!j.is_object()) throw FormatError("instance: expected an object");
    if (!j.contains("n") || !j["n"].is_number_integer()) throw FormatError("instance: missing integer n");
    BqpInstance inst;
    inst.n = j["n"].get<int>();
    if (j.contains("constraints")) {
        int pos = 0;
        for (const auto& c : j["constraints"]) {
            ++pos;
            const std::string where = "constraint " + std::to_string(pos);
            SideConstraint sc;
            sc.id = c.contains("id") ? c["id"].get<int>() : pos;
            const auto sense = c.value("sense", std::string{});
            if (sense == "eq") {
                sc.sense = Sense::Eq;
            } else if (sense == "le") {
                sc.sense = Sense::Le;
            } else {
                throw FormatError(where + ": sense must be eq or le");
            }
            if (!c.contains("terms") || !c["terms"].is_array()) throw FormatError(where + ": missing terms");
            for (const auto& t : c["terms"]) {
                auto [v, a] = detail::read_term(t, where);
                if (sc.terms.count(v)) throw FormatError(where + ": variable " + std::to_string(v) + " repeated");
                sc.terms.emplace(v, a);
            }
            if (!c.contains("rhs")) throw FormatError(where + ": missing rhs");
            sc.rhs = detail::read_rational(c["rhs"], where);
            inst.constraints.push_back(std::move(sc));
        }
    }
    if (j.contains("products")) {
        for (const auto& p : j["products"]) inst.products.push_back(detail::read_pair(p, "products"));
    }
    if (j.contains("objective")) {
        const auto& o = j["objective"];
        if (o.contains("linear")) {
            for (const auto& t : o["linear"]) {
                auto [v, a] = detail::read_term(t, "objective");
                inst.objective.linear[v] += a;
            }
        }
        if (o.contains("quadratic")) {
            for (const auto& t : o["quadratic"]) {
                if (!t.is_array() || t.size() < 3) throw FormatError("objective: expected [i, j, num, den]");
                const auto pair = ProductPair::ordered(t[0].get<int>(), t[1].get<int>());
                const Rational a = t.size() == 4 ? detail::rational_from_parts(t[2], t[3], "objective")
                                                 : detail::read_rational(t[2], "objective");
                inst.objective.quadratic[pair] += a;
            }
        }
    }
    if (j.contains("passthrough")) {
        for (const auto& r : j["passthrough"]) {
            PassthroughRow row;
            row.name = r.value("name", std::string{});
            row.sense = detail::read_row_sense(r.value("sense", json{}), "passthrough");
            if (r.contains("x")) {
                for (const auto& t : r["x"]) {
                    auto [v, a] = detail::read_term(t, "passthrough");
                    row.x_terms[v] += a;
                }
            }
            if (r.contains("y")) {
                for (const auto& t : r["y"]) {
                    if (!t.is_array() || t.size() < 3) throw FormatError("passthrough: expected [i, j, num, den]");
                    const auto pair = ProductPair::ordered(t[0].get<int>(), t[1].get<int>());
                    row.y_terms[pair] += t.size() == 4 ? detail::rational_from_parts(t[2], t[3], "passthrough")
                                                       : detail::read_rational(t[2], "passthrough");
                }
            }
            if (!r.contains("rhs")) throw FormatError("passthrough: missing rhs");
            row.rhs = detail::read_rational(r["rhs"], "passthrough");
            inst.passthrough.push_back(std::move(row));
        }
    }
    return inst;
}

inline json instance_to_json(const BqpInstance& inst) {
    json j;
    j["n"] = inst.n;
    json cons = json::array();
    for (const auto& c : inst.constraints) {
        json t = json::array();
        for (const auto& [v, a] : c.terms) t.push_back(detail::write_term(v, a));
        cons.push_back({{"id", c.id}, {"sense", c.sense == Sense::Eq ? "eq" : "le"}, {"terms", t}, {"rhs", detail::write_rational(c.rhs)}});
    }
    j["constraints"] = cons;
    json prods = json::array();
    for (const auto& p : inst.products) prods.push_back({p.i, p.j});
    j["products"] = prods;
    json lin = json::array();
    for (const auto& [v, a] : inst.objective.linear) lin.push_back(detail::write_term(v, a));
    json quad = json::array();
    for (const auto& [p, a] : inst.objective.quadratic) {
        json r = detail::write_rational(a);
        quad.push_back(r.is_array() ? json::array({p.i, p.j, r[0], r[1]}) : json::array({p.i, p.j, r}));
    }
    j["objective"] = {{"linear", lin}, {"quadratic", quad}};
    json pt = json::array();
    for (const auto& row : inst.passthrough) {
        json x = json::array();
        for (const auto& [v, a] : row.x_terms) x.push_back(detail::write_term(v, a));
        json y = json::array();
        for (const auto& [p, a] : row.y_terms) {
            json r = detail::write_rational(a);
            y.push_back(r.is_array() ? json::array({p.i, p.j, r[0], r[1]}) : json::array({p.i, p.j, r}));
        }
        pt.push_back({{"name", row.name}, {"sense", detail::sense_name(row.sense)}, {"x", x}, {"y", y}, {"rhs", detail::write_rational(row.rhs)}});
    }
    j["passthrough"] = pt;
    return j;
}

namespace detail {
inline void pretty(std::string& out, const json& j, int depth) {
    const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
    const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
    if (j.is_object() && !j.empty()) {
        out += "{\n";
        std::size_t i = 0;
        for (auto it = j.begin(); it != j.end(); ++it, ++i) {
            out += pad + json(it.key()).dump() + ": ";
            pretty(out, it.value(), depth + 1);
            out += i + 1 < j.size() ? ",\n" : "\n";
        }
        out += close_pad + "}";
        return;
    }
    if (j.is_array() && !j.empty()) {
        const bool flat = std::none_of(j.begin(), j.end(), [](const json& e) { return e.is_structured(); });
        if (flat) {
            out += "[";
            for (std::size_t i = 0; i < j.size(); ++i) out += (i ? ", " : "") + j[i].dump();
            out += "]";
            return;
        }
        out += "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
            out += pad;
            pretty(out, j[i], depth + 1);
            out += i + 1 < j.size() ? ",\n" : "\n";
        }
        out += close_pad + "]";
        return;
    }
    out += j.dump();
}
}  // namespace detail

/// Stable text form: two-space indent, arrays of scalars on one line, and a
/// trailing newline.
inline std::string dump(const json& j) {
    std::string out;
    detail::pretty(out, j, 0);
    return out + "\n";
}

inline BqpInstance parse_instance(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("instance: ") + e.what());
    } catch (const json::type_error& e) {
        throw FormatError(std::string("instance: ") + e.what());
    }
    try {
        return instance_from_json(j);
    } catch (const json::exception& e) {
        throw FormatError(std::string("instance: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// Designs: [{"k": id, "BE": [...], "BI+": [...], "BI-": [...]}]

inline json design_to_json(const MultiplierAssignment& b) {
    json out = json::array();
    for (const auto& [k, sets] : b.by_constraint()) {
        json e;
        e["k"] = k;
        e["BE"] = json(std::vector<VarIndex>(sets.eq.begin(), sets.eq.end()));
        e["BI+"] = json(std::vector<VarIndex>(sets.plus.begin(), sets.plus.end()));
        e["BI-"] = json(std::vector<VarIndex>(sets.minus.begin(), sets.minus.end()));
        out.push_back(e);
    }
    return out;
}

inline MultiplierAssignment design_from_json(const json& j) {
    if (!j.is_array()) throw FormatError("design: expected an array");
    MultiplierAssignment b;
    for (const auto& e : j) {
        if (!e.contains("k") || !e["k"].is_number_integer()) throw FormatError("design: entry without integer k");
        const int k = e["k"].get<int>();
        const std::pair<const char*, MultiplierKind> keys[] = {
            {"BE", MultiplierKind::Eq}, {"BI+", MultiplierKind::IPlus}, {"BI-", MultiplierKind::IMinus}};
        for (const auto& [key, kind] : keys) {
            if (!e.contains(key)) continue;
            for (const auto& v : e[key]) {
                if (!v.is_number_integer()) throw FormatError("design: non-integer member");
                b.add(k, kind, v.get<int>());
            }
        }
    }
    return b;
}

inline MultiplierAssignment parse_design(const std::string& text) {
    try {
        return design_from_json(json::parse(text));
    } catch (const json::exception& e) {
        throw FormatError(std::string("design: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// Reports

inline json pair_json(const ProductPair& p) { return json::array({p.i, p.j}); }

inline json rational_list(const std::vector<Rational>& v) {
    json out = json::array();
    for (const auto& r : v) out.push_back(r.get_str());
    return out;
}

inline json condition_report_json(const ConditionReport& rep) {
    json pairs = json::array();
    for (const auto& pc : rep.pairs) {
        pairs.push_back({{"pair", pair_json(pc.pair)}, {"c1", pc.c1.has_value()}, {"c2", pc.c2.has_value()}, {"c3", pc.c3.has_value()}});
    }
    json unc = json::array();
    for (const auto& p : rep.uncovered) unc.push_back(pair_json(p));
    return {{"satisfied", rep.satisfied()}, {"uncovered", unc}, {"pairs", pairs}};
}

inline std::string mask_string(std::uint32_t mask, int n) {
    std::string s;
    for (int v = 0; v < n; ++v) s.push_back((mask >> v & 1U) ? '1' : '0');
    return s;
}

inline json consistency_json(const ConsistencyReport& rep, const LinearizedModel& model) {
    json failures = json::array();
    for (const auto& e : rep.entries) {
        if (e.status == ConsistencyStatus::UniqueAndCorrect) continue;
        json f{{"x", mask_string(e.x, model.n)}, {"status", to_string(e.status)}};
        if (e.pair) {
            f["pair"] = pair_json(*e.pair);
            f["range"] = json::array({e.lo.get_str(), e.hi.get_str()});
        }
        if (!e.y.empty()) {
            json y = json::object();
            for (const auto& [p, c] : model.y_index) y[y_name(p)] = e.y[c].get_str();
            f["y"] = y;
        }
        failures.push_back(f);
    }
    return {{"pass", rep.pass()}, {"points", rep.entries.size()}, {"failures", failures}};
}

inline json dominance_json(const DominanceReport& rep) {
    json cells = json::array();
    for (const auto& c : rep.cells) {
        json cell{{"pair", pair_json(c.pair)}, {"inequality", c.inequality}};
        cell["status"] = c.status == lp::Status::Optimal ? "optimal" : c.status == lp::Status::Infeasible ? "infeasible" : "unbounded";
        if (c.status == lp::Status::Optimal) cell["max_violation"] = c.max_violation.get_str();
        cells.push_back(cell);
    }
    return {{"case", static_cast<int>(rep.which)}, {"pass", rep.pass()}, {"cells", cells}};
}

inline json strict_json(const StrictResult& res) {
    json out;
    out["status"] = res.status == StrictStatus::Found ? "found" : res.status == StrictStatus::NoneFound ? "none_found" : "not_applicable";
    if (!res.reason.empty()) out["reason"] = res.reason;
    if (res.witness) {
        out["row"] = res.witness->row;
        out["violation"] = res.witness->violation.get_str();
        out["point"] = rational_list(res.witness->point);
    }
    return out;
}

}  // namespace compactlin::io
