#include "intuit/hilbert.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

namespace intuit {

const std::vector<Formula>& hilbert_schemes() {
    static const std::vector<Formula> schemes = [] {
        std::vector<Formula> v;
        for (const char* s : {
                 "A -> (B -> A)",
                 "(A -> (B -> C)) -> ((A -> B) -> (A -> C))",
                 "A -> (B -> A & B)",
                 "A & B -> A",
                 "A & B -> B",
                 "A -> A | B",
                 "B -> A | B",
                 "false -> A",
                 "(A -> C) -> ((B -> C) -> (A | B -> C))",
             }) {
            // Metavariables are written in upper case; rename them to atoms
            // the grammar accepts and remember them by name.
            std::string t = s;
            for (char& c : t)
                if (c == 'A' || c == 'B' || c == 'C') c = static_cast<char>(c - 'A' + 'a');
            v.push_back(parse_formula(t));
        }
        return v;
    }();
    return schemes;
}

namespace {

bool is_meta(const Formula& f) {
    return f.is_atom() && f.args().empty() && (f.name() == "a" || f.name() == "b" || f.name() == "c");
}

bool unify(const Formula& pat, const Formula& f, std::map<std::string, Formula>& sub) {
    if (is_meta(pat)) {
        auto it = sub.find(pat.name());
        if (it == sub.end()) {
            sub.emplace(pat.name(), f);
            return true;
        }
        return it->second == f;
    }
    if (pat.kind() != f.kind()) return false;
    switch (pat.kind()) {
        case Kind::Bot: return true;
        case Kind::Atom: return pat == f;
        case Kind::Neg: return unify(pat.left(), f.left(), sub);
        case Kind::Forall:
        case Kind::Exists: return false;
        default: return unify(pat.left(), f.left(), sub) && unify(pat.right(), f.right(), sub);
    }
}

}  // namespace

bool matches_scheme(const Formula& f, int scheme) {
    if (scheme < 1 || scheme > 9) return false;
    std::map<std::string, Formula> sub;
    return unify(hilbert_schemes()[scheme - 1], convert_signature(f, Signature::ToBot), sub);
}

std::optional<int> match_axiom(const Formula& f) {
    for (int k = 1; k <= 9; ++k)
        if (matches_scheme(f, k)) return k;
    return std::nullopt;
}

HilbertResult check_hilbert(const HilbertDerivation& d) {
    auto norm = [](const Formula& f) { return convert_signature(f, Signature::ToBot); };
    std::vector<Formula> prem;
    for (const Formula& p : d.premises) prem.push_back(norm(p));
    auto fail = [](int k, std::string m) { return HilbertResult{false, k, std::move(m)}; };
    for (std::size_t k = 0; k < d.steps.size(); ++k) {
        const HilbertStep& s = d.steps[k];
        const int ki = static_cast<int>(k);
        Formula f = norm(s.formula);
        switch (s.just) {
            case HilbertStep::Just::Axiom:
                if (s.scheme == 0 ? !match_axiom(f) : !matches_scheme(f, s.scheme))
                    return fail(ki, "step does not instantiate the named axiom scheme");
                break;
            case HilbertStep::Just::Premise: {
                bool found = false;
                for (const Formula& p : prem) found = found || p == f;
                if (!found) return fail(ki, "step is not a premise");
                break;
            }
            case HilbertStep::Just::MP: {
                if (s.i < 0 || s.j < 0 || s.i >= ki || s.j >= ki) return fail(ki, "mp refers to a later or missing step");
                if (norm(d.steps[s.j].formula) != Formula::impl(norm(d.steps[s.i].formula), f))
                    return fail(ki, "mp: step j is not step i -> current");
                break;
            }
        }
    }
    return {};
}

HilbertDerivation parse_hilbert(const std::string& text) {
    HilbertDerivation d;
    std::map<int, int> number_to_index;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto error = [&](const std::string& m) {
        throw std::invalid_argument("hilbert line " + std::to_string(lineno) + ": " + m);
    };
    while (std::getline(in, line)) {
        ++lineno;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '%') continue;
        line = line.substr(first);
        if (line.rfind("premises:", 0) == 0) {
            std::string rest = line.substr(9);
            std::size_t start = 0;
            while (start <= rest.size()) {
                std::size_t semi = rest.find(';', start);
                std::string part = rest.substr(start, semi == std::string::npos ? std::string::npos : semi - start);
                if (part.find_first_not_of(" \t\r") != std::string::npos) d.premises.push_back(parse_formula(part));
                if (semi == std::string::npos) break;
                start = semi + 1;
            }
            continue;
        }
        auto dot = line.find('.');
        auto lb = line.rfind('[');
        auto rb = line.rfind(']');
        if (dot == std::string::npos || lb == std::string::npos || rb == std::string::npos || rb < lb || lb < dot)
            error("expected 'n. <formula> [justification]'");
        int n = 0;
        try {
            n = std::stoi(line.substr(0, dot));
        } catch (const std::exception&) {
            error("bad step number");
        }
        HilbertStep s;
        s.formula = parse_formula(line.substr(dot + 1, lb - dot - 1));
        std::istringstream js(line.substr(lb + 1, rb - lb - 1));
        std::string kind;
        js >> kind;
        if (kind == "ax") {
            s.just = HilbertStep::Just::Axiom;
            if (!(js >> s.scheme)) s.scheme = 0;
        } else if (kind == "prem") {
            s.just = HilbertStep::Just::Premise;
        } else if (kind == "mp") {
            s.just = HilbertStep::Just::MP;
            int i = 0, j = 0;
            if (!(js >> i >> j)) error("mp needs two step numbers");
            if (!number_to_index.count(i) || !number_to_index.count(j)) error("mp refers to an unknown step");
            s.i = number_to_index[i];
            s.j = number_to_index[j];
        } else {
            error("unknown justification '" + kind + "'");
        }
        number_to_index[n] = static_cast<int>(d.steps.size());
        d.steps.push_back(s);
    }
    return d;
}

std::string format_hilbert(const HilbertDerivation& d) {
    std::string out;
    if (!d.premises.empty()) {
        out += "premises:";
        for (std::size_t i = 0; i < d.premises.size(); ++i) out += (i ? "; " : " ") + d.premises[i].str();
        out += "\n";
    }
    for (std::size_t k = 0; k < d.steps.size(); ++k) {
        const HilbertStep& s = d.steps[k];
        out += std::to_string(k + 1) + ". " + s.formula.str() + " [";
        switch (s.just) {
            case HilbertStep::Just::Axiom: out += s.scheme ? "ax " + std::to_string(s.scheme) : "ax"; break;
            case HilbertStep::Just::Premise: out += "prem"; break;
            case HilbertStep::Just::MP: out += "mp " + std::to_string(s.i + 1) + " " + std::to_string(s.j + 1); break;
        }
        out += "]\n";
    }
    return out;
}

}  // namespace intuit
