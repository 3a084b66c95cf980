// Checker for Hilbert-style derivations in the nine-axiom system for
// propositional intuitionistic logic with modus ponens.
#pragma once

#include "intuit/formula.hpp"

#include <optional>
#include <string>
#include <vector>

namespace intuit {

struct HilbertStep {
    enum class Just { Axiom, Premise, MP };
    Formula formula;
    Just just = Just::Axiom;
    int scheme = 0;   // Axiom: 1..9, or 0 for "any scheme"
    int i = -1, j = -1;  // MP: steps[j] must be steps[i] -> formula
};

struct HilbertDerivation {
    std::vector<Formula> premises;
    std::vector<HilbertStep> steps;
};

struct HilbertResult {
    bool ok = true;
    int failing_step = -1;
    std::string message;
    explicit operator bool() const { return ok; }
};

/// The axiom schemes, numbered 1..9, over metavariables A, B, C.
const std::vector<Formula>& hilbert_schemes();

/// Index of the first scheme f instantiates, if any. Negations are read as
/// implications into false.
std::optional<int> match_axiom(const Formula& f);
bool matches_scheme(const Formula& f, int scheme);

HilbertResult check_hilbert(const HilbertDerivation& d);

/// Text format: optional `premises: A; B` header, then lines
/// `n. <formula> [ax k | ax | prem | mp i j]` where i, j are line numbers.
HilbertDerivation parse_hilbert(const std::string& text);
std::string format_hilbert(const HilbertDerivation& d);

}  // namespace intuit
