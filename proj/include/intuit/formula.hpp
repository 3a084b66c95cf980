// Formulas of the propositional and first-order intuitionistic languages.
//
// One AST covers both signatures ({false, &, |, ->} and {~, &, |, ->}) plus
// the quantifiers. Free positions hold parameters; variables only occur
// under a binder.
#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace intuit {

enum class Kind : std::uint8_t { Bot, Atom, Neg, And, Or, Impl, Forall, Exists };

/// Argument of an atom: either a bound variable or a parameter.
struct Term {
    bool is_var = false;
    std::string name;

    static Term var(std::string n) { return {true, std::move(n)}; }
    static Term param(std::string n) { return {false, std::move(n)}; }
    bool operator==(const Term&) const = default;
};

class Formula;

namespace detail {
struct Node;
}

/// Immutable, structurally compared formula handle.
class Formula {
public:
    Formula();  // false

    static Formula bot();
    static Formula atom(std::string name, std::vector<Term> args = {});
    static Formula neg(Formula a);
    static Formula conj(Formula a, Formula b);
    static Formula disj(Formula a, Formula b);
    static Formula impl(Formula a, Formula b);
    static Formula forall(std::string var, Formula body);
    static Formula exists(std::string var, Formula body);

    Kind kind() const;
    bool is_atom() const { return kind() == Kind::Atom; }
    bool is_quantifier() const { return kind() == Kind::Forall || kind() == Kind::Exists; }

    /// Predicate name for atoms, bound variable for quantifiers.
    const std::string& name() const;
    const std::vector<Term>& args() const;
    /// Left operand of a binary connective, operand of ~, body of a quantifier.
    const Formula& left() const;
    const Formula& right() const;
    const Formula& body() const { return left(); }

    /// Number of connectives and quantifiers.
    int complexity() const;
    std::size_t hash() const;

    bool operator==(const Formula& o) const;
    bool operator!=(const Formula& o) const { return !(*this == o); }
    /// Total structural order; stable across runs.
    int compare(const Formula& o) const;
    bool operator<(const Formula& o) const { return compare(o) < 0; }

    std::string str() const;

private:
    friend struct detail::Node;
    explicit Formula(std::shared_ptr<const detail::Node> p) : p_(std::move(p)) {}
    std::shared_ptr<const detail::Node> p_;
};

struct FormulaHash {
    std::size_t operator()(const Formula& f) const { return f.hash(); }
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)), pos_(pos) {}
    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

/// Parses the concrete grammar. Throws ParseError.
Formula parse_formula(std::string_view text);

/// Replaces free occurrences of variable x by parameter a.
Formula substitute_param(const Formula& f, const std::string& a, const std::string& x);

/// Renames parameter `from` to `to` throughout.
Formula rename_param(const Formula& f, const std::string& from, const std::string& to);

/// Parameters in left-to-right first-occurrence order.
std::vector<std::string> params_of(const Formula& f);

/// Predicate names with their arities, first-occurrence order.
std::vector<std::pair<std::string, int>> predicates_of(const Formula& f);

bool occurs_param(const Formula& f, const std::string& a);
bool contains_bot(const Formula& f);
bool contains_neg(const Formula& f);
bool is_propositional(const Formula& f);

enum class Signature { ToNeg, ToBot };

inline const char* kReservedAtom = "p0";

/// ToBot rewrites ~A to A -> false. ToNeg rewrites false to p0 & ~p0 and
/// throws std::invalid_argument("reserved atom clash") if it has a false to
/// encode and p0 already occurs.
Formula convert_signature(const Formula& f, Signature dir);

/// ToNeg without the clash check; used when converting whole derivations
/// after the check has been done once.
Formula bot_to_neg_unchecked(const Formula& f);

}  // namespace intuit
