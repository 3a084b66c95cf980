#include "intuit/formula.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace intuit {

namespace detail {

struct Node {
    Kind kind = Kind::Bot;
    std::string name;
    std::vector<Term> args;
    // Null handles for unused operands; default Formulas would recurse into bot_node.
    Formula l{std::shared_ptr<const Node>{}}, r{std::shared_ptr<const Node>{}};
    std::size_t hash = 0;
    int complexity = 0;
};

}  // namespace detail

namespace {

using detail::Node;

std::size_t mix(std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

const std::shared_ptr<const Node>& bot_node() {
    static const std::shared_ptr<const Node> n = [] {
        auto p = std::make_shared<Node>();
        p->kind = Kind::Bot;
        p->hash = mix(0, static_cast<std::size_t>(Kind::Bot));
        return p;
    }();
    return n;
}

const std::vector<Term>& no_args() {
    static const std::vector<Term> v;
    return v;
}

}  // namespace

Formula::Formula() : p_(bot_node()) {}

Formula Formula::bot() { return Formula(); }

Formula Formula::atom(std::string name, std::vector<Term> args) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Atom;
    std::size_t h = mix(static_cast<std::size_t>(Kind::Atom), std::hash<std::string>{}(name));
    for (const Term& t : args) h = mix(mix(h, t.is_var ? 1 : 2), std::hash<std::string>{}(t.name));
    n->name = std::move(name);
    n->args = std::move(args);
    n->hash = h;
    return Formula(std::move(n));
}

namespace {

std::shared_ptr<Node> compound(Kind k, const Formula& a, const Formula* b) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->l = a;
    std::size_t h = mix(static_cast<std::size_t>(k) * 131, a.hash());
    int c = 1 + a.complexity();
    if (b) {
        n->r = *b;
        h = mix(h, b->hash());
        c += b->complexity();
    }
    n->hash = h;
    n->complexity = c;
    return n;
}

}  // namespace

Formula Formula::neg(Formula a) { return Formula(compound(Kind::Neg, a, nullptr)); }
Formula Formula::conj(Formula a, Formula b) { return Formula(compound(Kind::And, a, &b)); }
Formula Formula::disj(Formula a, Formula b) { return Formula(compound(Kind::Or, a, &b)); }
Formula Formula::impl(Formula a, Formula b) { return Formula(compound(Kind::Impl, a, &b)); }

Formula Formula::forall(std::string var, Formula body) {
    auto n = compound(Kind::Forall, body, nullptr);
    n->hash = mix(n->hash, std::hash<std::string>{}(var));
    n->name = std::move(var);
    return Formula(std::move(n));
}

Formula Formula::exists(std::string var, Formula body) {
    auto n = compound(Kind::Exists, body, nullptr);
    n->hash = mix(n->hash, std::hash<std::string>{}(var));
    n->name = std::move(var);
    return Formula(std::move(n));
}

Kind Formula::kind() const { return p_->kind; }
const std::string& Formula::name() const { return p_->name; }
const std::vector<Term>& Formula::args() const { return p_->kind == Kind::Atom ? p_->args : no_args(); }
const Formula& Formula::left() const { return p_->l; }
const Formula& Formula::right() const { return p_->r; }
int Formula::complexity() const { return p_->complexity; }
std::size_t Formula::hash() const { return p_->hash; }

bool Formula::operator==(const Formula& o) const { return compare(o) == 0; }

int Formula::compare(const Formula& o) const {
    if (p_ == o.p_) return 0;
    const Node& a = *p_;
    const Node& b = *o.p_;
    if (a.hash != b.hash) return a.hash < b.hash ? -1 : 1;
    if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
    if (int c = a.name.compare(b.name)) return c < 0 ? -1 : 1;
    switch (a.kind) {
        case Kind::Bot:
            return 0;
        case Kind::Atom: {
            if (a.args.size() != b.args.size()) return a.args.size() < b.args.size() ? -1 : 1;
            for (std::size_t i = 0; i < a.args.size(); ++i) {
                if (a.args[i].is_var != b.args[i].is_var) return a.args[i].is_var ? -1 : 1;
                if (int c = a.args[i].name.compare(b.args[i].name)) return c < 0 ? -1 : 1;
            }
            return 0;
        }
        case Kind::Neg:
        case Kind::Forall:
        case Kind::Exists:
            return a.l.compare(b.l);
        default:
            if (int c = a.l.compare(b.l)) return c;
            return a.r.compare(b.r);
    }
}

// Printing. Precedence: -> 1, | 2, & 3, unary 4. A quantifier swallows
// everything to its right, so it needs parentheses unless it ends the
// enclosing expression.
namespace {

void print(const Formula& f, int need, bool rightmost, std::string& out) {
    auto paren = [&](int prec, auto body) {
        bool p = prec < need;
        if (p) out += '(';
        body(p ? true : rightmost);
        if (p) out += ')';
    };
    switch (f.kind()) {
        case Kind::Bot:
            out += "false";
            return;
        case Kind::Atom:
            out += f.name();
            if (!f.args().empty()) {
                out += '(';
                for (std::size_t i = 0; i < f.args().size(); ++i) {
                    if (i) out += ',';
                    if (!f.args()[i].is_var) out += '#';
                    out += f.args()[i].name;
                }
                out += ')';
            }
            return;
        case Kind::Neg:
            out += '~';
            print(f.left(), 4, rightmost, out);
            return;
        case Kind::And:
        case Kind::Or: {
            int prec = f.kind() == Kind::And ? 3 : 2;
            paren(prec, [&](bool rm) {
                print(f.left(), prec, false, out);
                out += f.kind() == Kind::And ? " & " : " | ";
                print(f.right(), prec + 1, rm, out);
            });
            return;
        }
        case Kind::Impl:
            paren(1, [&](bool rm) {
                print(f.left(), 2, false, out);
                out += " -> ";
                print(f.right(), 1, rm, out);
            });
            return;
        case Kind::Forall:
        case Kind::Exists: {
            bool p = !rightmost;
            if (p) out += '(';
            out += f.kind() == Kind::Forall ? "forall " : "exists ";
            out += f.name();
            out += ". ";
            print(f.body(), 1, true, out);
            if (p) out += ')';
            return;
        }
    }
}

}  // namespace

std::string Formula::str() const {
    std::string out;
    print(*this, 1, true, out);
    return out;
}

namespace {

Formula rebuild(const Formula& f, const Formula& l, const Formula& r) {
    switch (f.kind()) {
        case Kind::Neg: return Formula::neg(l);
        case Kind::And: return Formula::conj(l, r);
        case Kind::Or: return Formula::disj(l, r);
        case Kind::Impl: return Formula::impl(l, r);
        case Kind::Forall: return Formula::forall(f.name(), l);
        case Kind::Exists: return Formula::exists(f.name(), l);
        default: return f;
    }
}

template <class AtomFn>
Formula map_atoms(const Formula& f, const AtomFn& fn, std::vector<std::string>& bound) {
    switch (f.kind()) {
        case Kind::Bot: return f;
        case Kind::Atom: return fn(f, bound);
        case Kind::Neg: {
            Formula l = map_atoms(f.left(), fn, bound);
            return l == f.left() ? f : Formula::neg(l);
        }
        case Kind::Forall:
        case Kind::Exists: {
            bound.push_back(f.name());
            Formula b = map_atoms(f.body(), fn, bound);
            bound.pop_back();
            return b == f.body() ? f : rebuild(f, b, b);
        }
        default: {
            Formula l = map_atoms(f.left(), fn, bound);
            Formula r = map_atoms(f.right(), fn, bound);
            return (l == f.left() && r == f.right()) ? f : rebuild(f, l, r);
        }
    }
}

void walk_atoms(const Formula& f, const std::function<void(const Formula&)>& fn) {
    switch (f.kind()) {
        case Kind::Bot: return;
        case Kind::Atom: fn(f); return;
        case Kind::Neg:
        case Kind::Forall:
        case Kind::Exists: walk_atoms(f.left(), fn); return;
        default:
            walk_atoms(f.left(), fn);
            walk_atoms(f.right(), fn);
    }
}

}  // namespace

Formula substitute_param(const Formula& f, const std::string& a, const std::string& x) {
    std::vector<std::string> bound;
    return map_atoms(
        f,
        [&](const Formula& at, const std::vector<std::string>& bnd) {
            if (std::find(bnd.begin(), bnd.end(), x) != bnd.end()) return at;
            bool hit = false;
            std::vector<Term> args = at.args();
            for (Term& t : args)
                if (t.is_var && t.name == x) {
                    t = Term::param(a);
                    hit = true;
                }
            return hit ? Formula::atom(at.name(), std::move(args)) : at;
        },
        bound);
}

Formula rename_param(const Formula& f, const std::string& from, const std::string& to) {
    if (from == to) return f;
    std::vector<std::string> bound;
    return map_atoms(
        f,
        [&](const Formula& at, const std::vector<std::string>&) {
            bool hit = false;
            std::vector<Term> args = at.args();
            for (Term& t : args)
                if (!t.is_var && t.name == from) {
                    t.name = to;
                    hit = true;
                }
            return hit ? Formula::atom(at.name(), std::move(args)) : at;
        },
        bound);
}

std::vector<std::string> params_of(const Formula& f) {
    std::vector<std::string> out;
    walk_atoms(f, [&](const Formula& at) {
        for (const Term& t : at.args())
            if (!t.is_var && std::find(out.begin(), out.end(), t.name) == out.end()) out.push_back(t.name);
    });
    return out;
}

std::vector<std::pair<std::string, int>> predicates_of(const Formula& f) {
    std::vector<std::pair<std::string, int>> out;
    walk_atoms(f, [&](const Formula& at) {
        std::pair<std::string, int> p{at.name(), static_cast<int>(at.args().size())};
        if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
    });
    return out;
}

bool occurs_param(const Formula& f, const std::string& a) {
    bool hit = false;
    walk_atoms(f, [&](const Formula& at) {
        for (const Term& t : at.args())
            if (!t.is_var && t.name == a) hit = true;
    });
    return hit;
}

namespace {

bool any_kind(const Formula& f, Kind k) {
    if (f.kind() == k) return true;
    switch (f.kind()) {
        case Kind::Bot:
        case Kind::Atom: return false;
        case Kind::Neg:
        case Kind::Forall:
        case Kind::Exists: return any_kind(f.left(), k);
        default: return any_kind(f.left(), k) || any_kind(f.right(), k);
    }
}

}  // namespace

bool contains_bot(const Formula& f) { return any_kind(f, Kind::Bot); }
bool contains_neg(const Formula& f) { return any_kind(f, Kind::Neg); }

bool is_propositional(const Formula& f) {
    if (any_kind(f, Kind::Forall) || any_kind(f, Kind::Exists)) return false;
    bool ok = true;
    walk_atoms(f, [&](const Formula& at) { ok = ok && at.args().empty(); });
    return ok;
}

Formula bot_to_neg_unchecked(const Formula& f) {
    switch (f.kind()) {
        case Kind::Bot: {
            Formula p0 = Formula::atom(kReservedAtom);
            return Formula::conj(p0, Formula::neg(p0));
        }
        case Kind::Atom: return f;
        case Kind::Neg:
        case Kind::Forall:
        case Kind::Exists: {
            Formula l = bot_to_neg_unchecked(f.left());
            return rebuild(f, l, l);
        }
        default: return rebuild(f, bot_to_neg_unchecked(f.left()), bot_to_neg_unchecked(f.right()));
    }
}

namespace {

Formula neg_to_bot(const Formula& f) {
    switch (f.kind()) {
        case Kind::Bot:
        case Kind::Atom: return f;
        case Kind::Neg: return Formula::impl(neg_to_bot(f.left()), Formula::bot());
        case Kind::Forall:
        case Kind::Exists: {
            Formula l = neg_to_bot(f.left());
            return rebuild(f, l, l);
        }
        default: return rebuild(f, neg_to_bot(f.left()), neg_to_bot(f.right()));
    }
}

}  // namespace

Formula convert_signature(const Formula& f, Signature dir) {
    if (dir == Signature::ToBot) return neg_to_bot(f);
    // Without a false there is nothing to encode, which keeps ToNeg idempotent.
    if (!contains_bot(f)) return f;
    for (const auto& [name, arity] : predicates_of(f))
        if (name == kReservedAtom) throw std::invalid_argument("reserved atom clash");
    return bot_to_neg_unchecked(f);
}

}  // namespace intuit
