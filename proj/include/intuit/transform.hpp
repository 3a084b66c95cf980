// Proof transformations on labelled derivations: the height-preserving
// admissible rules, elimination of the structural rules (ref), (tra), (nd),
// (cd), expansion of the derived rules, and extraction of nested proofs.
//
// Every operation is a pure function. Inputs are checked first (against
// g3intqc-ext, which contains every non-admissible rule) and outputs are
// re-checked against the declared target calculus; a failing output check is
// reported as TransformError with `breach` set.
#pragma once

#include "intuit/labelled.hpp"
#include "intuit/nested.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace intuit {

class TransformError : public std::runtime_error {
public:
    TransformError(const std::string& m, bool internal) : std::runtime_error(m), breach(internal) {}
    bool breach;  // true: an invariant of the transformation failed
};

struct TransformReport {
    std::string target_calculus;
    int height_before = 0;
    int height_after = 0;
    std::map<Rule, int> rules_eliminated;  // per rule: occurrences in input minus occurrences in output, when positive
    std::vector<std::string> steps;        // applied cases with multiplicities
    std::string warning;

    std::string str() const;
};

template <class D>
struct Transformed {
    D derivation;
    TransformReport report;
};

using LabelledTransform = Transformed<LabelledDerivation>;

/// Adds `extra` to every sequent. Eigenvariables occurring in `extra` are
/// renamed first.
LabelledTransform weaken_derivation(const LabelledDerivation& d, const LabelledSequent& extra);

/// [to/from] on labels, renaming eigenlabels equal to either name first.
LabelledTransform substitute_label_derivation(const LabelledDerivation& d, const std::string& to,
                                              const std::string& from);
/// [to/from] on parameters, renaming eigenparameters equal to either name first.
LabelledTransform substitute_param_derivation(const LabelledDerivation& d, const std::string& to,
                                              const std::string& from);

/// Proof of premise `premise` of `rule` applied to the end sequent with
/// witness `wit` (principal label w and formula; eigenvariables in v and a are
/// chosen fresh when empty). Rules that keep their principal formula are
/// inverted by weakening. Throws TransformError if the principal is missing.
LabelledTransform invert_derivation(const LabelledDerivation& d, Rule rule, Witness wit, int premise = 0);

/// Removes one copy of a duplicated item: kind ctr_R (side Rel with w, v or
/// side Dom with a, w), ctr_Fl or ctr_Fr (label w, formula).
/// Throws TransformError if the end sequent lacks two copies.
LabelledTransform contract_derivation(const LabelledDerivation& d, Rule kind, const Witness& duplicate);

LabelledTransform eliminate_ref(const LabelledDerivation& d);
LabelledTransform eliminate_tra(const LabelledDerivation& d);
LabelledTransform eliminate_nd_cd(const LabelledDerivation& d);
/// Replaces (id), (id_q), (bot_l), (imp_l), (forall_l), (forall_r),
/// (exists_r) by derivations over the starred rules. A derivation mentioning
/// false is first rewritten with the ToNeg encoding.
LabelledTransform expand_derived_rules(const LabelledDerivation& d);
/// All of the above at once. For a theorem-shaped end sequent (no relational
/// atoms or antecedent, one succedent formula) every output sequent is
/// checked to be treelike with the end-sequent label as root.
LabelledTransform eliminate_structural(const LabelledDerivation& d);

/// Node-wise translation of a restricted-calculus derivation into NInt* or
/// NIntQC* (the latter when quantifier rules occur).
Transformed<NestedDerivation> proof_to_nested(const LabelledDerivation& d);

/// True for an end sequent of the form `a1 in D(w), ... => w: A`.
bool theorem_shaped(const LabelledSequent& s);

/// Every label occurring anywhere in the derivation.
std::set<std::string> derivation_labels(const LabelledDerivation& d);
std::set<std::string> derivation_params(const LabelledDerivation& d);

}  // namespace intuit
