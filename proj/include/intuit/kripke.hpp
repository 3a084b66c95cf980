// Finite Kripke models with a constant domain, satisfaction, sequent
// validity and model enumeration.
#pragma once

#include "intuit/formula.hpp"
#include "intuit/labelled.hpp"
#include "intuit/nested.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace intuit {

/// Worlds are indices 0..n-1 (at most 64); sets of worlds are bitmasks.
class KripkeModel {
public:
    using Mask = std::uint64_t;
    struct AtomKey {
        std::string pred;
        std::vector<int> args;  // indices into the domain
        auto operator<=>(const AtomKey&) const = default;
    };

    /// Builds the reflexive-transitive closure of `leq` and checks
    /// monotonicity. Throws std::invalid_argument on a broken invariant.
    KripkeModel(std::vector<std::string> worlds, const std::vector<std::pair<int, int>>& leq,
                std::vector<std::string> domain, std::map<AtomKey, Mask> valuation);

    int size() const { return static_cast<int>(worlds_.size()); }
    const std::vector<std::string>& worlds() const { return worlds_; }
    const std::vector<std::string>& domain() const { return domain_; }
    const std::map<AtomKey, Mask>& valuation() const { return val_; }
    /// Worlds above w, w included.
    Mask up(int w) const { return up_[w]; }
    bool leq(int w, int v) const { return (up_[w] >> v) & 1; }
    Mask all() const { return size() == 64 ? ~Mask{0} : ((Mask{1} << size()) - 1); }
    Mask atom(const std::string& pred, const std::vector<int>& args) const;
    std::optional<int> world_index(const std::string& name) const;

    std::string str() const;

private:
    std::vector<std::string> worlds_;
    std::vector<Mask> up_;
    std::vector<std::string> domain_;
    std::map<AtomKey, Mask> val_;
};

/// Parameter (and variable) assignment into domain indices.
using Env = std::map<std::string, int>;

/// Set of worlds forcing f. Throws std::invalid_argument("unassigned
/// parameter") for a parameter missing from env.
KripkeModel::Mask forcing_set(const KripkeModel& m, const Formula& f, const Env& env = {});

bool satisfies(const KripkeModel& m, int w, const Formula& f, const Env& env = {});

/// Holds iff every label map respecting the relational atoms and every
/// parameter map satisfies the antecedent-implies-succedent reading.
bool labelled_sequent_holds(const KripkeModel& m, const LabelledSequent& s);

bool nested_sequent_holds(const KripkeModel& m, const NestedSequent& s);

/// Predicate signature used by enumeration: name and arity.
using PredicateSignature = std::vector<std::pair<std::string, int>>;

struct EnumerateOptions {
    int max_worlds = 1;
    PredicateSignature atoms;
    int domain_size = 1;
    bool random = false;
    std::uint64_t seed = 0;
    std::size_t count = 0;           // random mode
    bool allow_large = false;        // lift the 10^7 guard
    bool up_to_isomorphism = false;  // exhaustive mode: one model per iso class
};

/// Streams models to `sink` until it returns false. Exhaustive mode visits
/// every labelled frame on 1..max_worlds worlds with every monotone
/// valuation. Throws std::length_error when more than 10^7 models would be
/// produced without allow_large.
void enumerate_models(const EnumerateOptions& opt, const std::function<bool(const KripkeModel&)>& sink);

/// Exact number of models exhaustive enumeration would yield.
std::uint64_t count_models(const EnumerateOptions& opt);

/// Model file: `worlds:`, `leq:`, `domain:` lines and `p(d0) @ w` entries.
KripkeModel parse_model(const std::string& text);
std::string format_model(const KripkeModel& m);

}  // namespace intuit
