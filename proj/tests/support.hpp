// Test-side generators and independent oracles. Nothing here calls the
// library code it is used to check.
#pragma once

#include "intuit/formula.hpp"
#include "intuit/kripke.hpp"
#include "intuit/labelled.hpp"
#include "intuit/nested.hpp"

#include <random>
#include <string>
#include <vector>

namespace testsupport {

using intuit::Formula;

struct Gen {
    std::mt19937_64 rng;
    explicit Gen(std::uint64_t seed) : rng(seed) {}

    int below(int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); }
    bool coin() { return below(2) == 0; }

    /// Propositional formula over `atoms`, at most `depth` levels.
    Formula prop(int depth, const std::vector<std::string>& atoms = {"p", "q", "r"}, bool with_bot = true,
                 bool with_neg = true) {
        if (depth <= 0 || below(4) == 0) {
            if (with_bot && below(8) == 0) return Formula::bot();
            return Formula::atom(atoms[below(static_cast<int>(atoms.size()))]);
        }
        switch (below(with_neg ? 4 : 3)) {
            case 0: return Formula::conj(prop(depth - 1, atoms, with_bot, with_neg), prop(depth - 1, atoms, with_bot, with_neg));
            case 1: return Formula::disj(prop(depth - 1, atoms, with_bot, with_neg), prop(depth - 1, atoms, with_bot, with_neg));
            case 2: return Formula::impl(prop(depth - 1, atoms, with_bot, with_neg), prop(depth - 1, atoms, with_bot, with_neg));
            default: return Formula::neg(prop(depth - 1, atoms, with_bot, with_neg));
        }
    }

    /// First-order formula with unary q, binary r, nullary p and parameters a, b.
    Formula fo(int depth, std::vector<std::string> vars = {}) {
        auto term = [&]() {
            int k = below(static_cast<int>(vars.size()) + 2);
            if (k < static_cast<int>(vars.size())) return intuit::Term::var(vars[k]);
            return intuit::Term::param(k == static_cast<int>(vars.size()) ? "a" : "b");
        };
        if (depth <= 0 || below(4) == 0) {
            switch (below(3)) {
                case 0: return Formula::atom("p");
                case 1: return Formula::atom("q", {term()});
                default: return Formula::atom("r", {term(), term()});
            }
        }
        switch (below(6)) {
            case 0: return Formula::conj(fo(depth - 1, vars), fo(depth - 1, vars));
            case 1: return Formula::disj(fo(depth - 1, vars), fo(depth - 1, vars));
            case 2: return Formula::impl(fo(depth - 1, vars), fo(depth - 1, vars));
            case 3: return Formula::neg(fo(depth - 1, vars));
            default: {
                std::string x = std::string(1, static_cast<char>('x' + vars.size() % 3)) + std::to_string(vars.size());
                vars.push_back(x);
                Formula body = fo(depth - 1, vars);
                return below(2) ? Formula::forall(x, body) : Formula::exists(x, body);
            }
        }
    }

    intuit::NestedSequent nested(int depth, int width = 2) {
        intuit::NestedSequent s;
        int na = below(3), ns = below(3);
        for (int i = 0; i < na; ++i) s.ante.push_back(prop(2));
        for (int i = 0; i < ns; ++i) s.succ.push_back(prop(2));
        if (depth > 0) {
            int nc = below(width + 1);
            for (int i = 0; i < nc; ++i) s.children.push_back(nested(depth - 1, width));
        }
        return s;
    }

    /// Treelike labelled sequent: a random tree on labels t0..t{n-1}.
    intuit::LabelledSequent treelike(int n) {
        intuit::LabelledSequent s;
        for (int i = 1; i < n; ++i) s.rel.push_back({"t" + std::to_string(below(i)), "t" + std::to_string(i)});
        for (int i = 0; i < n; ++i) {
            std::string w = "t" + std::to_string(i);
            int na = below(3), ns = below(2) + (i == 0 ? 1 : 0);
            for (int k = 0; k < na; ++k) s.ante.push_back({w, prop(2)});
            for (int k = 0; k < ns; ++k) s.succ.push_back({w, prop(2)});
        }
        std::shuffle(s.rel.begin(), s.rel.end(), rng);
        return s;
    }
};

/// Direct clause-by-clause forcing, one world at a time.
inline bool force(const intuit::KripkeModel& m, int w, const Formula& f, std::vector<std::pair<std::string, int>>& vars,
                  const std::map<std::string, int>& params) {
    using intuit::Kind;
    switch (f.kind()) {
        case Kind::Bot: return false;
        case Kind::Atom: {
            std::vector<int> args;
            for (const auto& t : f.args()) {
                if (t.is_var) {
                    for (auto it = vars.rbegin(); it != vars.rend(); ++it)
                        if (it->first == t.name) {
                            args.push_back(it->second);
                            break;
                        }
                } else {
                    args.push_back(params.at(t.name));
                }
            }
            return (m.atom(f.name(), args) >> w) & 1;
        }
        case Kind::And: return force(m, w, f.left(), vars, params) && force(m, w, f.right(), vars, params);
        case Kind::Or: return force(m, w, f.left(), vars, params) || force(m, w, f.right(), vars, params);
        case Kind::Neg:
        case Kind::Impl:
            for (int u = 0; u < m.size(); ++u) {
                if (!m.leq(w, u)) continue;
                if (!force(m, u, f.left(), vars, params)) continue;
                if (f.kind() == Kind::Neg) return false;
                if (!force(m, u, f.right(), vars, params)) return false;
            }
            return true;
        case Kind::Forall:
            // Clause over all successors and all individuals.
            for (int u = 0; u < m.size(); ++u) {
                if (!m.leq(w, u)) continue;
                for (int d = 0; d < static_cast<int>(m.domain().size()); ++d) {
                    vars.push_back({f.name(), d});
                    bool ok = force(m, u, f.body(), vars, params);
                    vars.pop_back();
                    if (!ok) return false;
                }
            }
            return true;
        case Kind::Exists:
            for (int d = 0; d < static_cast<int>(m.domain().size()); ++d) {
                vars.push_back({f.name(), d});
                bool ok = force(m, w, f.body(), vars, params);
                vars.pop_back();
                if (ok) return true;
            }
            return false;
    }
    return false;
}

inline bool force(const intuit::KripkeModel& m, int w, const Formula& f, const std::map<std::string, int>& params = {}) {
    std::vector<std::pair<std::string, int>> vars;
    return force(m, w, f, vars, params);
}

/// Number of reflexive-transitive relations on n labelled points, by brute force.
inline int count_preorders(int n) {
    int total = 0;
    const int cells = n * n;
    for (int code = 0; code < (1 << cells); ++code) {
        auto r = [&](int i, int j) { return (code >> (i * n + j)) & 1; };
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) ok = r(i, i);
        for (int i = 0; i < n && ok; ++i)
            for (int j = 0; j < n && ok; ++j)
                for (int k = 0; k < n && ok; ++k)
                    if (r(i, j) && r(j, k) && !r(i, k)) ok = false;
        total += ok;
    }
    return total;
}

}  // namespace testsupport
