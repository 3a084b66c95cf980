// Bounded backward proof search in the labelled and nested calculi, finite
// countermodel search and a propositional decision procedure combining both.
#pragma once

#include "intuit/kripke.hpp"
#include "intuit/labelled.hpp"
#include "intuit/nested.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

namespace intuit {

struct SearchConfig {
    std::string calculus = "nint-star";
    int depth_bound = 12;
    bool loop_check = true;
    int parameter_budget = 1;  // fresh parameters per branch (nested quantifier rules)
    std::uint64_t seed = 0;    // reserved: the strategy is deterministic
    std::size_t node_budget = 2'000'000;
};

/// Outcome of a bounded search. An empty proof is not a refutation.
template <class D>
struct SearchResult {
    std::optional<D> proof;
    bool bound_hit = false;  // some branch was cut by the depth or node bound
    std::size_t nodes = 0;
    explicit operator bool() const { return proof.has_value(); }
};

/// Labelled calculi (g3int, g3intqc, their -ext variants). Iterative
/// deepening on height; invertible rules are applied eagerly and relational
/// or domain atoms needed by a rule are produced on demand by (ref), (tra),
/// (nd) and (cd) steps. In calculi without negation rules the goal is first
/// rewritten with convert_signature(ToBot). Throws std::invalid_argument on
/// an unknown calculus.
SearchResult<LabelledDerivation> prove_labelled(const LabelledSequent& goal, const SearchConfig& cfg);

/// Nested calculi (nint, nintqc, nint-star, nintqc-star). Goals containing
/// false are first rewritten with convert_signature(ToNeg); the proof then
/// concludes the rewritten goal.
SearchResult<NestedDerivation> prove_nested(const NestedSequent& goal, const SearchConfig& cfg);

/// Exhaustive search over models with at most `max_worlds` worlds on the
/// predicates of f (domain of size `domain_size` for first-order input).
std::optional<std::pair<KripkeModel, int>> find_countermodel(const Formula& f, int max_worlds,
                                                             int domain_size = 1);

struct Theorem {
    NestedDerivation proof;
};
struct Countermodel {
    KripkeModel model;
    int world;
};
struct Undecided {};

using Verdict = std::variant<Theorem, Countermodel, Undecided>;

/// Alternates countermodel search (1..model_bound worlds) with proof search in
/// NInt* (depth growing to search.depth_bound). Throws std::invalid_argument
/// for first-order input.
Verdict decide_prop(const Formula& f, int model_bound, const SearchConfig& search);

}  // namespace intuit
