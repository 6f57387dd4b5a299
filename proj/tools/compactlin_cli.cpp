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

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "compactlin/compactlin.hpp"

namespace cl = compactlin;
using cl::io::json;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitCondition = 3;
constexpr int kExitCheck = 4;

/// Ends the command with an exit code after printing `msg` to stderr.
struct Exit {
    int code;
    std::string msg;
};

std::string read_input(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Exit{kExitValidation, "cannot read " + path};
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class OutputSet {
 public:
    explicit OutputSet(bool force) : force_(force) {}

    /// Refuses before anything is written if some target exists and --force
    /// is absent.
    void plan(const std::string& path) {
        if (!force_ && std::filesystem::exists(path)) throw Exit{kExitUsage, path + " exists; pass --force to overwrite"};
    }
    static void write(const std::string& path, const std::string& text) {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw Exit{kExitUsage, "cannot write " + path};
        out << text;
    }

 private:
    bool force_;
};

/// Writes to `path`, or stdout when the path is empty or "-".
void emit(const std::string& path, const std::string& text, bool force) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    OutputSet out(force);
    out.plan(path);
    OutputSet::write(path, text);
}

int brute_force_cap() {
    if (const char* env = std::getenv("COMPACTLIN_BRUTE_CAP")) {
        try {
            const int cap = std::stoi(env);
            if (cap < 1 || cap > 31) throw std::out_of_range("cap");
            return cap;
        } catch (const std::exception&) {
            throw Exit{kExitUsage, "COMPACTLIN_BRUTE_CAP must be an integer in [1, 31]"};
        }
    }
    return cl::kDefaultBruteForceCap;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

cl::BqpInstance load_instance(const std::string& path, const std::string& constraints) {
    cl::BqpInstance inst;
    try {
        inst = cl::io::parse_instance(read_input(path));
    } catch (const cl::io::FormatError& e) {
        throw Exit{kExitValidation, e.what()};
    }
    cl::ValidationReport rep;
    try {
        rep = cl::validate(inst);
    } catch (const cl::ModelError& e) {
        throw Exit{kExitValidation, std::string("invalid instance: ") + e.what()};
    }
    if (!rep.clean()) {
        std::string msg = "invalid instance:";
        for (const auto& issue : rep.issues) msg += "\n  " + issue.message;
        throw Exit{kExitValidation, msg};
    }
    for (const auto& p : rep.unlinearizable) {
        std::cerr << "note: product " << cl::to_string(p) << " fails the prerequisite and gets standard rows\n";
    }
    inst = cl::canonicalize(inst);
    if (!constraints.empty()) {
        std::set<int> keep;
        for (const auto& tok : split(constraints, ',')) {
            try {
                keep.insert(std::stoi(tok));
            } catch (const std::exception&) {
                throw Exit{kExitUsage, "bad constraint id '" + tok + "'"};
            }
        }
        try {
            inst = cl::select_constraints(inst, keep);
        } catch (const cl::ModelError& e) {
            throw Exit{kExitUsage, e.what()};
        }
    }
    return inst;
}

cl::CoverWeights parse_weights(const std::string& text, const cl::BqpInstance& inst) {
    if (text.empty()) return cl::CoverWeights::defaults(inst);
    const auto parts = split(text, ',');
    if (parts.size() != 4) throw Exit{kExitUsage, "--weights expects wE,wI+,wI-,wQ"};
    cl::CoverWeights w;
    try {
        w.eq = cl::parse_rational(parts[0]);
        w.plus = cl::parse_rational(parts[1]);
        w.minus = cl::parse_rational(parts[2]);
        w.q = cl::parse_rational(parts[3]);
        w.check();
    } catch (const std::invalid_argument& e) {
        throw Exit{kExitUsage, std::string("--weights: ") + e.what()};
    }
    return w;
}

cl::MultiplierAssignment load_design(const std::string& path, const cl::BqpInstance& inst) {
    cl::MultiplierAssignment b;
    try {
        b = cl::io::parse_design(read_input(path));
        cl::check_assignment(inst, b);
    } catch (const cl::io::FormatError& e) {
        throw Exit{kExitValidation, e.what()};
    } catch (const cl::ModelError& e) {
        throw Exit{kExitValidation, std::string("invalid design: ") + e.what()};
    }
    return b;
}

struct CoverChoice {
    cl::MultiplierAssignment design;
    json info;
};

CoverChoice choose_cover(const cl::BqpInstance& inst, const std::string& mode, const std::string& design_path,
                         const cl::CoverWeights& w) {
    CoverChoice out;
    if (mode == "file") {
        if (design_path.empty()) throw Exit{kExitUsage, "--cover file needs --design"};
        out.design = load_design(design_path, inst);
        out.info = {{"mode", "file"}, {"cost", cl::cover_cost(inst, out.design, w).get_str()}};
        return out;
    }
    if (mode == "greedy") {
        out.design = cl::solve_cover_greedy(inst, w);
        out.info = {{"mode", "greedy"}, {"cost", cl::cover_cost(inst, out.design, w).get_str()}};
        return out;
    }
    try {
        const auto model = cl::build_cover_model(inst, w);
        const auto sol = cl::solve_cover_exact(model);
        out.design = sol.design;
        out.info = {{"mode", "exact"}, {"cost", sol.objective.get_str()}, {"nodes", sol.nodes}, {"root_integral", sol.root_integral}};
    } catch (const cl::CoverInfeasible& e) {
        throw Exit{kExitValidation, e.what()};
    }
    return out;
}

json model_counts(const cl::LinearizedModel& m) {
    return {{"columns", m.columns.size()},
            {"y", m.num_y()},
            {"rows", m.rows.size()},
            {"original", m.count(cl::RowOrigin::Original)},
            {"compact_eq", m.count(cl::RowOrigin::CompactE)},
            {"compact_iplus", m.count(cl::RowOrigin::CompactIPlus)},
            {"compact_iminus", m.count(cl::RowOrigin::CompactIMinus)},
            {"standard", m.count_glover_woolsey()},
            {"passthrough", m.count(cl::RowOrigin::Passthrough)}};
}

void print_counts(std::ostream& os, const json& c) {
    os << "  rows: " << c["rows"].get<std::size_t>() << " (original " << c["original"].get<std::size_t>() << ", compact E "
       << c["compact_eq"].get<std::size_t>() << ", I+ " << c["compact_iplus"].get<std::size_t>() << ", I- "
       << c["compact_iminus"].get<std::size_t>() << ", standard " << c["standard"].get<std::size_t>() << ", pass-through "
       << c["passthrough"].get<std::size_t>() << ")\n";
    os << "  product variables: " << c["y"].get<std::size_t>() << "\n";
}

// ---------------------------------------------------------------------------

struct LinearizeArgs {
    std::string instance;
    std::string method = "compact";
    std::string cover = "exact";
    std::string design;
    std::string weights;
    std::string constraints;
    std::string format = "lp";
    std::string out;
    bool force = false;
};

int cmd_linearize(const LinearizeArgs& a) {
    const auto inst = load_instance(a.instance, a.constraints);
    const auto w = parse_weights(a.weights, inst);
    const std::string ext = a.format == "mps" ? ".mps" : ".lp";

    // "--out -" sends the MILP to stdout and the summary to stderr.
    const bool to_stdout = a.out == "-";
    OutputSet outputs(a.force);
    if (!a.out.empty() && !to_stdout) {
        outputs.plan(a.out + ext);
        outputs.plan(a.out + ".summary.json");
        if (a.method == "compact") outputs.plan(a.out + ".design.json");
    }

    json summary;
    summary["method"] = a.method;
    summary["n"] = inst.n;
    summary["P"] = inst.products.size();
    cl::LinearizedModel model;
    std::optional<cl::MultiplierAssignment> design;
    if (a.method == "gw") {
        model = cl::glover_woolsey(inst);
    } else {
        auto choice = choose_cover(inst, a.cover, a.design, w);
        summary["cover"] = choice.info;
        const auto q = cl::induce_products(inst, choice.design);
        const auto cond = cl::check_conditions(inst, choice.design, q);
        summary["Q"] = q.pairs.size();
        summary["Q_offdiagonal"] = q.off_diagonal().size();
        summary["conditions"] = cl::io::condition_report_json(cond);
        try {
            model = cl::compact_linearize(inst, choice.design);
        } catch (const cl::ConditionViolation& e) {
            throw Exit{kExitCondition, e.what()};
        }
        design = std::move(choice.design);
    }
    summary["counts"] = model_counts(model);
    summary["equations"] = model.count(cl::RowOrigin::CompactE);

    std::ostringstream human;
    human << "method: " << a.method << "\n";
    if (summary.contains("cover")) {
        human << "  cover: " << summary["cover"]["mode"].get<std::string>() << ", cost " << summary["cover"]["cost"].get<std::string>()
              << "\n";
        human << "  |P| = " << inst.products.size() << ", |Q| = " << summary["Q"].get<std::size_t>() << " ("
              << summary["Q_offdiagonal"].get<std::size_t>() << " off-diagonal)\n";
        human << "  conditions: " << (summary["conditions"]["satisfied"].get<bool>() ? "satisfied" : "violated") << "\n";
    }
    print_counts(human, summary["counts"]);
    human << "  compact equations: " << summary["equations"].get<std::size_t>() << "\n";

    const std::string milp = cl::write_milp(model, a.format == "mps" ? cl::MilpFormat::Mps : cl::MilpFormat::Lp);
    if (a.out.empty()) {
        std::cout << human.str();
        return 0;
    }
    if (to_stdout) {
        std::cout << milp;
        std::cerr << human.str();
        return 0;
    }
    OutputSet::write(a.out + ext, milp);
    OutputSet::write(a.out + ".summary.json", cl::io::dump(summary));
    if (design) OutputSet::write(a.out + ".design.json", cl::io::dump(cl::io::design_to_json(*design)));
    std::cout << human.str();
    return 0;
}

// ---------------------------------------------------------------------------

struct CompareArgs {
    std::string instance;
    std::string cover = "exact";
    std::string design;
    std::string weights;
    std::string constraints;
};

int cmd_compare(const CompareArgs& a) {
    const auto inst = load_instance(a.instance, a.constraints);
    const auto w = parse_weights(a.weights, inst);
    auto choice = choose_cover(inst, a.cover, a.design, w);
    cl::LinearizedModel compact;
    try {
        compact = cl::compact_linearize(inst, choice.design);
    } catch (const cl::ConditionViolation& e) {
        throw Exit{kExitCondition, e.what()};
    }
    const auto gw = cl::glover_woolsey(inst);
    const auto cc = model_counts(compact);
    const auto gc = model_counts(gw);
    std::cout << "compact (" << choice.info["mode"].get<std::string>() << " cover):\n";
    print_counts(std::cout, cc);
    std::cout << "standard:\n";
    print_counts(std::cout, gc);
    const auto lin_compact = compact.rows.size() - cc["original"].get<std::size_t>() - cc["passthrough"].get<std::size_t>();
    const auto lin_gw = gc["standard"].get<std::size_t>();
    std::cout << "linearization rows: compact " << lin_compact << " vs standard " << lin_gw << "\n";
    if (auto which = cl::detect_dominance_case(inst, choice.design)) {
        std::cout << "dominance case: " << cl::to_string(*which) << "\n";
    } else {
        std::cout << "dominance case: none detected\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
    std::string instance;
    std::string design;
    std::string checks = "consistency,dominance,strict";
    std::string which = "auto";
    std::string constraints;
    std::string out;
    bool force = false;
};

int cmd_verify(const VerifyArgs& a) {
    const auto inst = load_instance(a.instance, a.constraints);
    std::set<std::string> checks;
    for (const auto& c : split(a.checks, ',')) {
        if (c != "consistency" && c != "dominance" && c != "strict") throw Exit{kExitUsage, "unknown check '" + c + "'"};
        checks.insert(c);
    }
    std::optional<cl::DominanceCase> forced;
    if (a.which != "auto") {
        if (a.which == "2") forced = cl::DominanceCase::Assignment;
        else if (a.which == "3") forced = cl::DominanceCase::Knapsack;
        else if (a.which == "4") forced = cl::DominanceCase::DoubleSelection;
        else throw Exit{kExitUsage, "--case must be 2, 3, 4 or auto"};
    }
    const int cap = brute_force_cap();
    if (checks.count("consistency") && inst.n > cap) {
        throw Exit{kExitUsage, "n = " + std::to_string(inst.n) + " exceeds the brute-force cap " + std::to_string(cap)};
    }

    OutputSet outputs(a.force);
    if (!a.out.empty()) {
        outputs.plan(a.out + ".report.json");
        outputs.plan(a.out + ".report.txt");
    }

    const bool standard = a.design == "gw";
    cl::MultiplierAssignment b;
    if (!standard) b = load_design(a.design, inst);

    json report;
    std::ostringstream txt;
    bool ok = true;
    report["design"] = standard ? "standard" : "compact";

    cl::LinearizedModel model;
    if (standard) {
        model = cl::glover_woolsey(inst);
        txt << "design: standard linearization\n";
    } else {
        const auto q = cl::induce_products(inst, b);
        const auto cond = cl::check_conditions(inst, b, q);
        report["conditions"] = cl::io::condition_report_json(cond);
        txt << "design: " << b.size() << " memberships, |Q| = " << q.pairs.size() << "\n";
        if (cond.satisfied()) {
            txt << "conditions: satisfied\n";
        } else {
            ok = false;
            for (const auto& p : cond.uncovered) txt << "conditions: product " << cl::to_string(p) << " of P is not induced\n";
            for (const auto& pc : cond.pairs) {
                if (pc.pair.is_square() || pc.ok()) continue;
                txt << "conditions: Condition " << pc.first_missing() << " fails for product " << cl::to_string(pc.pair) << "\n";
            }
        }
        model = cl::compact_linearize_unchecked(inst, b);
    }

    if (checks.count("consistency")) {
        const auto rep = cl::verify_integer_consistency(inst, model, cap);
        report["consistency"] = cl::io::consistency_json(rep, model);
        txt << "consistency: " << (rep.pass() ? "pass" : "FAIL") << " over " << rep.entries.size() << " feasible points\n";
        if (const auto* f = rep.first_failure()) {
            ok = false;
            txt << "  x = " << cl::io::mask_string(f->x, inst.n) << ": " << cl::to_string(f->status);
            if (f->pair) txt << " for " << cl::to_string(*f->pair) << ", range [" << f->lo << ", " << f->hi << "]";
            txt << "\n";
            if (!f->y.empty()) {
                txt << "  witness y:";
                for (const auto& [p, c] : model.y_index) txt << " " << cl::y_name(p) << "=" << f->y[c];
                txt << "\n";
            }
        }
    }

    if (checks.count("dominance")) {
        std::optional<cl::DominanceCase> which = forced;
        std::string note;
        if (standard) {
            note = "not applicable to the standard linearization";
        } else if (!which) {
            which = cl::detect_dominance_case(inst, b);
            if (!which) note = "not applicable: no dominance case matches";
        }
        if (!note.empty() || !which) {
            report["dominance"] = {{"status", "not_applicable"}, {"reason", note}};
            txt << "dominance: " << note << "\n";
        } else {
            try {
                cl::check_dominance_hypotheses(inst, b, *which);
            } catch (const cl::HypothesisMismatch& e) {
                txt << "dominance: note, hypotheses of " << cl::to_string(*which) << " do not hold (" << e.what() << ")\n";
            }
            try {
                const auto rep = cl::verify_dominance(inst, b, *which, false);
                report["dominance"] = cl::io::dominance_json(rep);
                txt << "dominance (" << cl::to_string(*which) << "): " << (rep.pass() ? "pass" : "FAIL") << " over " << rep.cells.size()
                    << " maximizations\n";
                if (!rep.pass()) {
                    ok = false;
                    const auto* worst = rep.worst();
                    txt << "  inequality " << worst->inequality << " for " << cl::to_string(worst->pair) << " violated by "
                        << worst->max_violation << " at";
                    for (std::size_t c = 0; c < worst->point.size(); ++c) {
                        if (sgn(worst->point[c]) != 0) txt << " " << model.columns[c].name << "=" << worst->point[c];
                    }
                    txt << "\n";
                }
            } catch (const cl::ConditionViolation& e) {
                ok = false;
                report["dominance"] = {{"status", "error"}, {"reason", e.what()}};
                txt << "dominance: FAIL, " << e.what() << "\n";
            }
        }
    }

    if (checks.count("strict")) {
        cl::StrictResult res;
        if (standard) {
            res.reason = "not applicable to the standard linearization";
        } else {
            try {
                res = cl::find_strict_dominance_witness(inst, b);
            } catch (const cl::ConditionViolation& e) {
                res.reason = std::string("not applicable: ") + e.what();
            }
        }
        report["strict"] = cl::io::strict_json(res);
        if (res.status == cl::StrictStatus::Found) {
            txt << "strict: witness violates " << res.witness->row << " by " << res.witness->violation << "\n";
        } else if (res.status == cl::StrictStatus::NoneFound) {
            txt << "strict: no witness found\n";
        } else {
            txt << "strict: " << res.reason << "\n";
        }
    }

    report["pass"] = ok;
    txt << (ok ? "result: pass\n" : "result: FAIL\n");
    if (!a.out.empty()) {
        OutputSet::write(a.out + ".report.json", cl::io::dump(report));
        OutputSet::write(a.out + ".report.txt", txt.str());
    }
    std::cout << txt.str();
    return ok ? 0 : kExitCheck;
}

// ---------------------------------------------------------------------------

struct GenArgs {
    std::uint64_t seed = 1;
    std::string out;
    std::string design_out;
    bool force = false;
    std::optional<long> max_cost;
    // qap
    int n = 3;
    std::string preset = "most-compact";
    bool no_identify = false;
    // qtsp
    int nodes = 5;
    bool subtour = false;
    // random
    int rn = 6;
    int eq = 1;
    int ineq = 1;
    double density = 0.5;
    int max_support = 4;
    bool unit = false;
    bool unit_rhs = false;
    bool disjoint = false;
};

void write_generated(const GenArgs& a, const cl::BqpInstance& inst, const std::optional<cl::MultiplierAssignment>& design) {
    if (!a.design_out.empty()) {
        if (!design) throw Exit{kExitUsage, "this preset has no design"};
        OutputSet pre(a.force);
        pre.plan(a.design_out);
        if (!a.out.empty() && a.out != "-") pre.plan(a.out);
    }
    emit(a.out, cl::io::dump(cl::io::instance_to_json(cl::canonicalize(inst))), a.force);
    if (!a.design_out.empty()) OutputSet::write(a.design_out, cl::io::dump(cl::io::design_to_json(*design)));
}

int cmd_gen_qap(const GenArgs& a) {
    cl::QapSpec spec;
    spec.n = a.n;
    spec.identify = !a.no_identify;
    if (a.max_cost) spec.max_cost = *a.max_cost;
    if (a.preset == "most-compact") spec.preset = cl::QapPreset::MostCompact;
    else if (a.preset == "frieze-yadegar") spec.preset = cl::QapPreset::FriezeYadegar;
    else if (a.preset == "gw") spec.preset = cl::QapPreset::GWBaseline;
    else throw Exit{kExitUsage, "--preset must be most-compact, frieze-yadegar or gw"};
    auto [inst, design] = cl::gen_qap(spec, a.seed);
    write_generated(a, inst, design);
    return 0;
}

int cmd_gen_qtsp(const GenArgs& a) {
    cl::QtspSpec spec;
    spec.nodes = a.nodes;
    spec.include_subtour = a.subtour;
    if (a.max_cost) spec.max_cost = *a.max_cost;
    auto [inst, design] = cl::gen_qtsp(spec, a.seed);
    write_generated(a, inst, design);
    return 0;
}

int cmd_gen_random(const GenArgs& a) {
    cl::RandomSpec spec;
    spec.n = a.rn;
    spec.num_eq = a.eq;
    spec.num_ineq = a.ineq;
    spec.density = a.density;
    spec.max_support = a.max_support;
    spec.unit_coefficients = a.unit;
    spec.unit_rhs = a.unit_rhs;
    spec.disjoint = a.disjoint;
    if (a.max_cost) spec.max_cost = *a.max_cost;
    write_generated(a, cl::gen_random(spec, a.seed), std::nullopt);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"compactlin: compact linearization of binary quadratic programs"};
    app.require_subcommand(1);

    LinearizeArgs lin;
    auto* c_lin = app.add_subcommand("linearize", "Linearize an instance and write the MILP");
    c_lin->add_option("instance", lin.instance, "Instance JSON ('-' for stdin)")->required();
    c_lin->add_option("--method", lin.method)->check(CLI::IsMember({"compact", "gw"}));
    c_lin->add_option("--cover", lin.cover)->check(CLI::IsMember({"exact", "greedy", "file"}));
    c_lin->add_option("--design", lin.design, "Design JSON for --cover file");
    c_lin->add_option("--weights", lin.weights, "wE,wI+,wI-,wQ");
    c_lin->add_option("--constraints", lin.constraints, "Comma-separated ids of constraints to multiply");
    c_lin->add_option("--format", lin.format)->check(CLI::IsMember({"lp", "mps"}));
    c_lin->add_option("--out", lin.out, "Output prefix");
    c_lin->add_flag("--force", lin.force);

    CompareArgs cmp;
    auto* c_cmp = app.add_subcommand("compare", "Compare compact and standard linearizations");
    c_cmp->add_option("instance", cmp.instance)->required();
    c_cmp->add_option("--cover", cmp.cover)->check(CLI::IsMember({"exact", "greedy", "file"}));
    c_cmp->add_option("--design", cmp.design);
    c_cmp->add_option("--weights", cmp.weights);
    c_cmp->add_option("--constraints", cmp.constraints);

    VerifyArgs ver;
    auto* c_ver = app.add_subcommand("verify", "Check a design for consistency and dominance");
    c_ver->add_option("instance", ver.instance)->required();
    c_ver->add_option("design", ver.design, "Design JSON, or 'gw' for the standard linearization")->required();
    c_ver->add_option("--checks", ver.checks);
    c_ver->add_option("--case", ver.which, "2, 3, 4 or auto");
    c_ver->add_option("--constraints", ver.constraints);
    c_ver->add_option("--out", ver.out, "Report prefix");
    c_ver->add_flag("--force", ver.force);

    GenArgs gen;
    auto add_common = [&gen](CLI::App* c) {
        c->add_option("--seed", gen.seed);
        c->add_option("--out", gen.out, "Instance path (stdout by default)");
        c->add_option("--max-cost", gen.max_cost)->check(CLI::NonNegativeNumber);
        c->add_flag("--force", gen.force);
    };
    auto* c_qap = app.add_subcommand("gen-qap", "Generate a quadratic assignment instance");
    add_common(c_qap);
    c_qap->add_option("--n", gen.n)->check(CLI::Range(2, 12));
    c_qap->add_option("--preset", gen.preset);
    c_qap->add_flag("--no-identify", gen.no_identify);
    c_qap->add_option("--design-out", gen.design_out);
    auto* c_tsp = app.add_subcommand("gen-qtsp", "Generate a quadratic TSP instance");
    add_common(c_tsp);
    c_tsp->add_option("--nodes", gen.nodes)->check(CLI::Range(4, 30));
    c_tsp->add_flag("--subtour", gen.subtour);
    c_tsp->add_option("--design-out", gen.design_out);
    auto* c_rnd = app.add_subcommand("gen-random", "Generate a random instance");
    add_common(c_rnd);
    c_rnd->add_option("--n", gen.rn)->check(CLI::Range(1, 64));
    c_rnd->add_option("--eq", gen.eq)->check(CLI::NonNegativeNumber);
    c_rnd->add_option("--ineq", gen.ineq)->check(CLI::NonNegativeNumber);
    c_rnd->add_option("--density", gen.density)->check(CLI::Range(0.0, 1.0));
    c_rnd->add_option("--max-support", gen.max_support)->check(CLI::PositiveNumber);
    c_rnd->add_flag("--unit", gen.unit);
    c_rnd->add_flag("--unit-rhs", gen.unit_rhs);
    c_rnd->add_flag("--disjoint", gen.disjoint);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (*c_lin) return cmd_linearize(lin);
        if (*c_cmp) return cmd_compare(cmp);
        if (*c_ver) return cmd_verify(ver);
        if (*c_qap) return cmd_gen_qap(gen);
        if (*c_tsp) return cmd_gen_qtsp(gen);
        if (*c_rnd) return cmd_gen_random(gen);
    } catch (const Exit& e) {
        std::cerr << "error: " << e.msg << "\n";
        return e.code;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const cl::CapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
