// Proof files: an indented JSON tree with `sequent`, `rule`, `witness` and
// `premises` per node, plus the calculus id at the top.
#pragma once

#include "intuit/labelled.hpp"
#include "intuit/nested.hpp"

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace intuit {

class ProofFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ProofDocument {
    std::string calculus;
    std::variant<LabelledDerivation, NestedDerivation> proof;

    bool is_nested() const { return proof.index() == 1; }
};

std::string format_proof(const std::string& calculus, const LabelledDerivation& d);
std::string format_proof(const std::string& calculus, const NestedDerivation& d);

/// Throws ProofFormatError on malformed structure and ParseError on bad
/// sequent or formula text.
ProofDocument parse_proof(std::string_view text);

}  // namespace intuit
