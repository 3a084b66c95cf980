// Labelled sequents R, G => D and the labelled calculi: G3Int, G3IntQC, the
// extension rules used on the way to nested calculi, and the admissible
// rule tags used by transformations.
#pragma once

#include "intuit/formula.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace intuit {

struct RelAtom {
    std::string from, to;  // from <= to
    auto operator<=>(const RelAtom&) const = default;
};

struct DomAtom {
    std::string param, label;  // param in D(label)
    auto operator<=>(const DomAtom&) const = default;
};

struct LFormula {
    std::string label;
    Formula f;
    bool operator==(const LFormula& o) const { return label == o.label && f == o.f; }
    bool operator<(const LFormula& o) const {
        if (int c = label.compare(o.label)) return c < 0;
        return f < o.f;
    }
};

/// Multisets are plain vectors; equality ignores order.
struct LabelledSequent {
    std::vector<RelAtom> rel;
    std::vector<DomAtom> dom;
    std::vector<LFormula> ante;
    std::vector<LFormula> succ;

    /// Sorted copy; two sequents are equal iff their canonical forms are.
    LabelledSequent canonical() const;
    bool operator==(const LabelledSequent& o) const;
    bool operator!=(const LabelledSequent& o) const { return !(*this == o); }

    std::set<std::string> labels() const;
    std::set<std::string> params() const;
    bool mentions_label(const std::string& w) const;
    bool mentions_param(const std::string& a) const;

    bool has_rel(const std::string& w, const std::string& v) const;
    bool has_dom(const std::string& a, const std::string& w) const;
    bool has_ante(const std::string& w, const Formula& f) const;
    bool has_succ(const std::string& w, const Formula& f) const;

    std::string str() const;
};

/// Parses `w<=v, a in D(w), w: p(#a) => v: p(#a)`. Throws ParseError.
LabelledSequent parse_labelled(std::string_view text);

// Rule identifiers. The first block is the base calculus, the second the
// extension rules, the third the admissible-rule tags.
enum class Rule {
    id, id_q, bot_l, and_l, and_r, or_l, or_r, imp_l, imp_r, ref, tra,
    forall_l, forall_r, exists_l, exists_r, nd, cd,
    id_star, id_q_star, neg_l, neg_r, imp_l_star, forall_l_star, forall_r_star,
    exists_r_star, lift,
    lsub, psub, wk, ctr_R, ctr_Fl, ctr_Fr, cut,
};

inline constexpr int kRuleCount = static_cast<int>(Rule::cut) + 1;

const char* rule_name(Rule r);
std::optional<Rule> rule_from_name(std::string_view s);
/// Number of premises (0, 1 or 2).
int rule_arity(Rule r);

/// Which part of a sequent an item lives in.
enum class Side { Rel, Dom, Ante, Succ };

/// Explicit instance data for one inference.
///
/// Labels w, v, u follow the rule schemas: w is where the principal formula
/// sits, v is the second label of a relational atom or the eigenlabel, u is
/// the third label of (tra) and the target of (lift). Parameter a is the
/// instantiating or eigen parameter. For (lsub) [w/v] and (psub) [a/b].
/// For contraction and (cut) `side` says which multiset is touched.
struct Witness {
    std::string w, v, u;
    std::string a, b;
    std::optional<Formula> formula;
    std::vector<std::string> dom_labels;  // (id*_q): one label per argument
    Side side = Side::Ante;
    int child = -1;  // nested (lift): index of the receiving child

    bool operator==(const Witness&) const = default;
};

struct LabelledDerivation {
    LabelledSequent conclusion;
    Rule rule = Rule::id;
    Witness wit;
    std::vector<LabelledDerivation> premises;

    int height() const;
    std::size_t size() const;
    /// Number of nodes using r.
    std::size_t count(Rule r) const;
};

struct Calculus {
    std::string name;
    std::set<Rule> rules;
    bool contains(Rule r) const { return rules.count(r) != 0; }
};

/// Known ids: g3int, g3intqc, g3int-ext, g3intqc-ext, g3int-restricted,
/// g3intqc-restricted, g3int-cut, g3intqc-cut. Throws std::invalid_argument.
Calculus labelled_calculus(const std::string& name);
std::vector<std::string> labelled_calculus_names();
/// The calculus with the admissible tags (lsub, psub, wk, ctr_*) added.
Calculus with_admissible(Calculus c);

struct CheckResult {
    bool ok = true;
    std::string message;
    std::vector<int> path;  // premise indices from the root to the failing node

    explicit operator bool() const { return ok; }
    static CheckResult fail(std::string m) { return {false, std::move(m), {}}; }
};

/// Checks one inference against its schema and side conditions.
CheckResult check_inference(const Calculus& calc, Rule rule, const LabelledSequent& conclusion,
                            const std::vector<LabelledSequent>& premises, const Witness& wit);

CheckResult check_derivation(const Calculus& calc, const LabelledDerivation& d);

struct BackwardStep {
    std::vector<LabelledSequent> premises;
    Witness wit;
};

/// Every instance of `rule` whose conclusion is `goal`. Eigenvariables are
/// fresh; instantiating parameters range over those of the goal plus one
/// fresh one. Structural rules are offered only for atoms not yet present.
std::vector<BackwardStep> apply_backward(const Calculus& calc, Rule rule, const LabelledSequent& goal);

/// Undirected reachability over relational atoms.
bool path_exists(const std::vector<RelAtom>& rel, const std::string& from, const std::string& to);

/// [to/from] on labels.
LabelledSequent substitute_label(const LabelledSequent& s, const std::string& to, const std::string& from);
/// [to/from] on parameters.
LabelledSequent substitute_param_seq(const LabelledSequent& s, const std::string& to, const std::string& from);

/// Premises of `rule` at `conclusion` under `wit`, without side-condition
/// checks. Empty optional when the principal material is missing.
std::optional<std::vector<LabelledSequent>> instantiate(Rule rule, const LabelledSequent& conclusion,
                                                        const Witness& wit);

/// Names not occurring in any of the given sets, of the form base + number.
std::string fresh_name(const std::string& base, const std::set<std::string>& used);

/// Multiset helpers.
LabelledSequent seq_union(const LabelledSequent& a, const LabelledSequent& b);
/// a minus b as multisets; empty optional if b is not contained in a.
std::optional<LabelledSequent> seq_minus(const LabelledSequent& a, const LabelledSequent& b);
bool seq_contains(const LabelledSequent& a, const LabelledSequent& b);

}  // namespace intuit
