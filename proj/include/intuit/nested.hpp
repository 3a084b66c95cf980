// Nested sequents X -> Y, [S1], ..., [Sn] and the nested calculi NInt,
// NIntQC and their starred variants, which keep copies of principal
// formulae in some premises.
#pragma once

#include "intuit/labelled.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace intuit {

struct NestedSequent {
    std::vector<Formula> ante;
    std::vector<Formula> succ;
    std::vector<NestedSequent> children;

    /// Sorted copy, children included; equality is equality of canonical forms.
    NestedSequent canonical() const;
    bool operator==(const NestedSequent& o) const;
    bool operator!=(const NestedSequent& o) const { return !(*this == o); }

    /// Node addressed by a path of child indices; nullptr if invalid.
    const NestedSequent* at(const std::vector<int>& path) const;
    NestedSequent* at(const std::vector<int>& path);

    std::set<std::string> params() const;
    std::size_t nodes() const;
    std::string str() const;
};

/// Total order on canonical forms.
int compare_nested(const NestedSequent& a, const NestedSequent& b);

/// Parses `X -> Y, [ ... ]`. Antecedent formulae may not contain a top-level
/// `->`; parenthesize them. Throws ParseError.
NestedSequent parse_nested(std::string_view text);

struct NestedDerivation {
    NestedSequent conclusion;
    Rule rule = Rule::id;
    std::vector<int> hole;
    Witness wit;  // formula, a (parameter), child (lift)
    std::vector<NestedDerivation> premises;

    int height() const;
    std::size_t size() const;
    std::size_t count(Rule r) const;
};

struct NestedCalculus {
    std::string name;
    bool star = false;  // principal formulae kept in the premises
    std::set<Rule> rules;
    bool contains(Rule r) const { return rules.count(r) != 0; }
};

/// Known ids: nint, nintqc, nint-star, nintqc-star. Throws std::invalid_argument.
NestedCalculus nested_calculus(const std::string& name);
std::vector<std::string> nested_calculus_names();

/// Premises of `rule` applied at `hole` without freshness checks; empty
/// optional when the principal material is missing.
std::optional<std::vector<NestedSequent>> instantiate_nested(const NestedCalculus& calc, Rule rule,
                                                             const NestedSequent& conclusion,
                                                             const std::vector<int>& hole, const Witness& wit);

CheckResult check_nested_inference(const NestedCalculus& calc, Rule rule, const NestedSequent& conclusion,
                                   const std::vector<int>& hole, const std::vector<NestedSequent>& premises,
                                   const Witness& wit);

CheckResult check_nested_derivation(const NestedCalculus& calc, const NestedDerivation& d);

struct NestedStep {
    std::vector<int> hole;
    std::vector<NestedSequent> premises;
    Witness wit;
};

/// All instances of `rule` with conclusion `goal` over every hole.
/// Instantiating parameters range over those of the goal plus one fresh one.
/// In starred calculi (lift) is offered only when the child lacks the formula.
std::vector<NestedStep> apply_nested_backward(const NestedCalculus& calc, Rule rule, const NestedSequent& goal);

/// Every node path in preorder.
std::vector<std::vector<int>> all_holes(const NestedSequent& s);

}  // namespace intuit
