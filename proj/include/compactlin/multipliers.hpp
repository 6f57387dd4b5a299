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
#include <map>
#include <set>
#include <string>
#include <vector>

#include "compactlin/bqp_model.hpp"

namespace compactlin {

/// How a constraint is multiplied: equation by x_j, inequality by x_j, or
/// inequality by (1 - x_j).
enum class MultiplierKind { Eq, IPlus, IMinus };

inline const char* to_string(MultiplierKind k) {
    switch (k) {
        case MultiplierKind::Eq: return "E";
        case MultiplierKind::IPlus: return "I+";
        case MultiplierKind::IMinus: return "I-";
    }
    return "?";
}

struct MultiplierSets {
    std::set<VarIndex> eq;
    std::set<VarIndex> plus;
    std::set<VarIndex> minus;

    const std::set<VarIndex>& get(MultiplierKind k) const {
        switch (k) {
            case MultiplierKind::Eq: return eq;
            case MultiplierKind::IPlus: return plus;
            case MultiplierKind::IMinus: return minus;
        }
        return eq;
    }
    std::set<VarIndex>& get(MultiplierKind k) {
        return const_cast<std::set<VarIndex>&>(static_cast<const MultiplierSets&>(*this).get(k));
    }
    bool empty() const { return eq.empty() && plus.empty() && minus.empty(); }

    friend bool operator==(const MultiplierSets&, const MultiplierSets&) = default;
};

struct Membership {
    int k = 0;
    MultiplierKind kind = MultiplierKind::Eq;
    VarIndex j = 0;

    friend auto operator<=>(const Membership&, const Membership&) = default;
};

/// The multiplier sets B^E_k, B^{I+}_k, B^{I-}_k keyed by constraint id.
class MultiplierAssignment {
 public:
    void add(int k, MultiplierKind kind, VarIndex j) { sets_[k].get(kind).insert(j); }

    void remove(int k, MultiplierKind kind, VarIndex j) {
        auto it = sets_.find(k);
        if (it == sets_.end()) return;
        it->second.get(kind).erase(j);
        if (it->second.empty()) sets_.erase(it);
    }

    bool contains(int k, MultiplierKind kind, VarIndex j) const {
        auto it = sets_.find(k);
        return it != sets_.end() && it->second.get(kind).count(j) != 0;
    }

    const MultiplierSets& at(int k) const {
        static const MultiplierSets empty_sets;
        auto it = sets_.find(k);
        return it == sets_.end() ? empty_sets : it->second;
    }

    /// B_k: B^E_k for equations, B^{I+}_k union B^{I-}_k for inequalities.
    std::set<VarIndex> combined(int k) const {
        const auto& s = at(k);
        std::set<VarIndex> out = s.eq;
        out.insert(s.plus.begin(), s.plus.end());
        out.insert(s.minus.begin(), s.minus.end());
        return out;
    }

    /// Canonical order: constraint id, then kind, then variable.
    std::vector<Membership> memberships() const {
        std::vector<Membership> out;
        for (const auto& [k, s] : sets_) {
            for (MultiplierKind kind : {MultiplierKind::Eq, MultiplierKind::IPlus, MultiplierKind::IMinus}) {
                for (VarIndex j : s.get(kind)) out.push_back({k, kind, j});
            }
        }
        return out;
    }

    std::size_t size() const {
        std::size_t total = 0;
        for (const auto& [k, s] : sets_) total += s.eq.size() + s.plus.size() + s.minus.size();
        return total;
    }
    bool empty() const { return sets_.empty(); }

    const std::map<int, MultiplierSets>& by_constraint() const { return sets_; }

    friend bool operator==(const MultiplierAssignment&, const MultiplierAssignment&) = default;

 private:
    std::map<int, MultiplierSets> sets_;
};

/// Throws ModelError if B names unknown constraints or variables, or uses a
/// multiplier kind that does not fit the constraint's sense.
inline void check_assignment(const BqpInstance& inst, const MultiplierAssignment& b) {
    for (const auto& m : b.memberships()) {
        const auto* c = inst.find_constraint(m.k);
        if (!c) throw ModelError("design references unknown constraint " + std::to_string(m.k));
        if (m.j < 1 || m.j > inst.n) throw ModelError("design references unknown variable " + std::to_string(m.j));
        const bool eq_kind = m.kind == MultiplierKind::Eq;
        if (eq_kind != (c->sense == Sense::Eq)) {
            throw ModelError(std::string("design uses ") + to_string(m.kind) + " multipliers on constraint " +
                             std::to_string(m.k) + " of the other sense");
        }
    }
}

}  // namespace compactlin
