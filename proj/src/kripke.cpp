#include "intuit/kripke.hpp"

#include "intuit/graph.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace intuit {

using Mask = KripkeModel::Mask;

namespace {

Mask bit(int i) { return Mask{1} << i; }

}  // namespace

KripkeModel::KripkeModel(std::vector<std::string> worlds, const std::vector<std::pair<int, int>>& leq,
                         std::vector<std::string> domain, std::map<AtomKey, Mask> valuation)
    : worlds_(std::move(worlds)), domain_(std::move(domain)), val_(std::move(valuation)) {
    const int n = size();
    if (n == 0) throw std::invalid_argument("model has no worlds");
    if (n > 64) throw std::invalid_argument("model has more than 64 worlds");
    if (domain_.empty()) throw std::invalid_argument("model has an empty domain");
    up_.assign(n, 0);
    for (int w = 0; w < n; ++w) up_[w] = bit(w);
    for (const auto& [w, v] : leq) {
        if (w < 0 || w >= n || v < 0 || v >= n) throw std::invalid_argument("leq pair names an unknown world");
        up_[w] |= bit(v);
    }
    // Transitive closure over bitmasks.
    for (bool changed = true; changed;) {
        changed = false;
        for (int w = 0; w < n; ++w) {
            Mask m = up_[w];
            for (int v = 0; v < n; ++v)
                if ((m >> v) & 1) m |= up_[v];
            if (m != up_[w]) {
                up_[w] = m;
                changed = true;
            }
        }
    }
    for (auto it = val_.begin(); it != val_.end();) {
        for (int a : it->first.args)
            if (a < 0 || a >= static_cast<int>(domain_.size()))
                throw std::invalid_argument("valuation names an unknown individual");
        Mask m = it->second & all();
        for (int w = 0; w < n; ++w)
            if (((m >> w) & 1) && (up_[w] & ~m))
                throw std::invalid_argument("non-monotone valuation for " + it->first.pred);
        it->second = m;
        if (m == 0) it = val_.erase(it);
        else ++it;
    }
}

Mask KripkeModel::atom(const std::string& pred, const std::vector<int>& args) const {
    auto it = val_.find(AtomKey{pred, args});
    return it == val_.end() ? 0 : it->second;
}

std::optional<int> KripkeModel::world_index(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
        if (worlds_[i] == name) return i;
    return std::nullopt;
}

std::string KripkeModel::str() const { return format_model(*this); }

namespace {

struct Evaluator {
    const KripkeModel& m;
    const Env& params;
    std::vector<std::pair<std::string, int>> vars;

    int lookup(const Term& t) const {
        if (t.is_var) {
            for (auto it = vars.rbegin(); it != vars.rend(); ++it)
                if (it->first == t.name) return it->second;
            throw std::invalid_argument("unbound variable: " + t.name);
        }
        auto it = params.find(t.name);
        if (it == params.end()) throw std::invalid_argument("unassigned parameter: " + t.name);
        return it->second;
    }

    Mask implies(Mask a, Mask b) const {
        Mask out = 0;
        for (int w = 0; w < m.size(); ++w)
            if ((m.up(w) & a & ~b) == 0) out |= bit(w);
        return out;
    }

    Mask eval(const Formula& f) {
        switch (f.kind()) {
            case Kind::Bot: return 0;
            case Kind::Atom: {
                std::vector<int> args;
                args.reserve(f.args().size());
                for (const Term& t : f.args()) args.push_back(lookup(t));
                return m.atom(f.name(), args);
            }
            case Kind::Neg: return implies(eval(f.left()), 0);
            case Kind::And: return eval(f.left()) & eval(f.right());
            case Kind::Or: return eval(f.left()) | eval(f.right());
            case Kind::Impl: {
                Mask a = eval(f.left());
                return implies(a, eval(f.right()));
            }
            case Kind::Forall:
            case Kind::Exists: {
                // Constant domain and monotonicity make the universal clause local.
                bool all = f.kind() == Kind::Forall;
                Mask acc = all ? m.all() : 0;
                for (int d = 0; d < static_cast<int>(m.domain().size()); ++d) {
                    vars.push_back({f.name(), d});
                    Mask b = eval(f.body());
                    vars.pop_back();
                    acc = all ? (acc & b) : (acc | b);
                }
                return acc;
            }
        }
        return 0;
    }
};

}  // namespace

Mask forcing_set(const KripkeModel& m, const Formula& f, const Env& env) {
    Evaluator e{m, env, {}};
    return e.eval(f);
}

bool satisfies(const KripkeModel& m, int w, const Formula& f, const Env& env) {
    if (w < 0 || w >= m.size()) throw std::invalid_argument("unknown world");
    return (forcing_set(m, f, env) >> w) & 1;
}

bool labelled_sequent_holds(const KripkeModel& m, const LabelledSequent& s) {
    const std::set<std::string> label_set = s.labels();
    const std::vector<std::string> labels(label_set.begin(), label_set.end());
    const std::set<std::string> param_set = s.params();
    const std::vector<std::string> params(param_set.begin(), param_set.end());
    std::map<std::string, int> index;
    for (std::size_t i = 0; i < labels.size(); ++i) index[labels[i]] = static_cast<int>(i);

    struct Item {
        int label;
        Mask mask;
    };
    std::vector<std::pair<int, int>> rel;
    for (const RelAtom& r : s.rel) rel.push_back({index[r.from], index[r.to]});

    const int dsize = static_cast<int>(m.domain().size());
    std::vector<int> iota(params.size(), 0);
    std::vector<int> rho(labels.size(), -1);
    for (;;) {
        Env env;
        for (std::size_t i = 0; i < params.size(); ++i) env[params[i]] = iota[i];
        std::vector<Item> ante, succ;
        for (const LFormula& x : s.ante) ante.push_back({index[x.label], forcing_set(m, x.f, env)});
        for (const LFormula& x : s.succ) succ.push_back({index[x.label], forcing_set(m, x.f, env)});

        // Search for a label map that respects the relational atoms and
        // falsifies the sequent.
        std::function<bool(std::size_t)> refute = [&](std::size_t i) {
            if (i == labels.size()) {
                for (const Item& a : ante)
                    if (!((a.mask >> rho[a.label]) & 1)) return false;
                for (const Item& b : succ)
                    if ((b.mask >> rho[b.label]) & 1) return false;
                return true;
            }
            for (int w = 0; w < m.size(); ++w) {
                rho[i] = w;
                bool ok = true;
                for (const auto& [x, y] : rel) {
                    if (rho[x] < 0 || rho[y] < 0) continue;
                    if (static_cast<std::size_t>(std::max(x, y)) > i) continue;
                    if (!m.leq(rho[x], rho[y])) {
                        ok = false;
                        break;
                    }
                }
                if (ok) {
                    for (const Item& a : ante)
                        if (a.label == static_cast<int>(i) && !((a.mask >> w) & 1)) ok = false;
                    for (const Item& b : succ)
                        if (b.label == static_cast<int>(i) && ((b.mask >> w) & 1)) ok = false;
                }
                if (ok && refute(i + 1)) return true;
            }
            rho[i] = -1;
            return false;
        };
        if (refute(0)) return false;

        std::size_t k = 0;
        while (k < iota.size() && ++iota[k] == dsize) iota[k++] = 0;
        if (k == iota.size()) break;
    }
    return true;
}

bool nested_sequent_holds(const KripkeModel& m, const NestedSequent& s) {
    return labelled_sequent_holds(m, labelify(s));
}

// Enumeration.
namespace {

std::vector<std::vector<int>> tuples(int arity, int dsize) {
    std::vector<std::vector<int>> out{{}};
    for (int i = 0; i < arity; ++i) {
        std::vector<std::vector<int>> next;
        for (const auto& t : out)
            for (int d = 0; d < dsize; ++d) {
                next.push_back(t);
                next.back().push_back(d);
            }
        out = std::move(next);
    }
    return out;
}

std::vector<KripkeModel::AtomKey> instances(const EnumerateOptions& opt) {
    std::vector<KripkeModel::AtomKey> out;
    for (const auto& [p, arity] : opt.atoms)
        for (auto& t : tuples(arity, opt.domain_size)) out.push_back({p, t});
    return out;
}

// A preorder as per-world up-sets.
using Frame = std::vector<Mask>;

bool closed(const Frame& up) {
    for (std::size_t w = 0; w < up.size(); ++w)
        for (std::size_t v = 0; v < up.size(); ++v)
            if (((up[w] >> v) & 1) && (up[v] & ~up[w])) return false;
    return true;
}

void for_each_frame(int n, const std::function<void(const Frame&)>& fn) {
    std::vector<std::pair<int, int>> pairs;
    for (int w = 0; w < n; ++w)
        for (int v = 0; v < n; ++v)
            if (w != v) pairs.push_back({w, v});
    const std::uint64_t total = std::uint64_t{1} << pairs.size();
    for (std::uint64_t code = 0; code < total; ++code) {
        Frame up(n);
        for (int w = 0; w < n; ++w) up[w] = bit(w);
        for (std::size_t i = 0; i < pairs.size(); ++i)
            if ((code >> i) & 1) up[pairs[i].first] |= bit(pairs[i].second);
        if (closed(up)) fn(up);
    }
}

std::vector<Mask> upsets(const Frame& up) {
    const int n = static_cast<int>(up.size());
    std::vector<Mask> out;
    for (Mask s = 0; s < (Mask{1} << n); ++s) {
        bool ok = true;
        for (int w = 0; w < n && ok; ++w)
            if (((s >> w) & 1) && (up[w] & ~s)) ok = false;
        if (ok) out.push_back(s);
    }
    return out;
}

Mask permute_mask(Mask m, const std::vector<int>& perm) {
    Mask out = 0;
    for (std::size_t w = 0; w < perm.size(); ++w)
        if ((m >> w) & 1) out |= bit(perm[w]);
    return out;
}

Frame permute_frame(const Frame& up, const std::vector<int>& perm) {
    Frame out(up.size());
    for (std::size_t w = 0; w < up.size(); ++w) out[perm[w]] = permute_mask(up[w], perm);
    return out;
}

std::vector<std::vector<int>> all_perms(int n) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> out;
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

KripkeModel make_model(const Frame& up, const std::vector<KripkeModel::AtomKey>& inst, const std::vector<Mask>& val,
                       int dsize) {
    std::vector<std::string> worlds, domain;
    for (std::size_t i = 0; i < up.size(); ++i) worlds.push_back("w" + std::to_string(i));
    for (int d = 0; d < dsize; ++d) domain.push_back("d" + std::to_string(d));
    std::vector<std::pair<int, int>> leq;
    for (std::size_t w = 0; w < up.size(); ++w)
        for (std::size_t v = 0; v < up.size(); ++v)
            if (w != v && ((up[w] >> v) & 1)) leq.push_back({static_cast<int>(w), static_cast<int>(v)});
    std::map<KripkeModel::AtomKey, Mask> vmap;
    for (std::size_t i = 0; i < inst.size(); ++i)
        if (val[i]) vmap[inst[i]] = val[i];
    return KripkeModel(std::move(worlds), leq, std::move(domain), std::move(vmap));
}

constexpr std::uint64_t kGuard = 10'000'000;

}  // namespace

std::uint64_t count_models(const EnumerateOptions& opt) {
    const std::size_t k = instances(opt).size();
    std::uint64_t total = 0;
    for (int n = 1; n <= opt.max_worlds; ++n) {
        if (n > 5) return UINT64_MAX;  // frame enumeration itself is out of reach
        for_each_frame(n, [&](const Frame& up) {
            std::uint64_t c = 1;
            const std::uint64_t u = upsets(up).size();
            for (std::size_t i = 0; i < k && c < UINT64_MAX / (u + 1); ++i) c *= u;
            total += c;
        });
    }
    return total;
}

void enumerate_models(const EnumerateOptions& opt, const std::function<bool(const KripkeModel&)>& sink) {
    if (opt.max_worlds < 1) throw std::invalid_argument("max_worlds must be at least 1");
    if (opt.domain_size < 1) throw std::invalid_argument("domain_size must be at least 1");
    const auto inst = instances(opt);

    if (opt.random) {
        if (opt.max_worlds > 64) throw std::invalid_argument("at most 64 worlds");
        std::mt19937_64 rng(opt.seed);
        for (std::size_t c = 0; c < opt.count; ++c) {
            int n = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(opt.max_worlds));
            Frame up(n);
            for (int w = 0; w < n; ++w) {
                up[w] = bit(w);
                for (int v = 0; v < n; ++v)
                    if (v != w && rng() % 3 == 0) up[w] |= bit(v);
            }
            for (bool changed = true; changed;) {
                changed = false;
                for (int w = 0; w < n; ++w)
                    for (int v = 0; v < n; ++v)
                        if (((up[w] >> v) & 1) && (up[v] & ~up[w])) {
                            up[w] |= up[v];
                            changed = true;
                        }
            }
            std::vector<Mask> val(inst.size());
            for (Mask& m : val) {
                Mask s = rng() & ((n == 64) ? ~Mask{0} : (bit(n) - 1));
                for (int w = 0; w < n; ++w)
                    if ((s >> w) & 1) s |= up[w];
                m = s;
            }
            if (!sink(make_model(up, inst, val, opt.domain_size))) return;
        }
        return;
    }

    if (!opt.allow_large && count_models(opt) > kGuard)
        throw std::length_error("model enumeration exceeds 10^7 models");

    for (int n = 1; n <= opt.max_worlds; ++n) {
        const auto perms = opt.up_to_isomorphism ? all_perms(n) : std::vector<std::vector<int>>{};
        bool stop = false;
        for_each_frame(n, [&](const Frame& up) {
            if (stop) return;
            std::vector<std::vector<int>> autos;
            if (opt.up_to_isomorphism) {
                // Keep the lexicographically least relabelling of each frame.
                for (const auto& p : perms) {
                    Frame q = permute_frame(up, p);
                    if (q < up) return;
                    if (q == up) autos.push_back(p);
                }
            }
            const std::vector<Mask> us = upsets(up);
            std::vector<std::size_t> idx(inst.size(), 0);
            std::vector<Mask> val(inst.size());
            for (;;) {
                for (std::size_t i = 0; i < inst.size(); ++i) val[i] = us[idx[i]];
                bool keep = true;
                for (const auto& p : autos) {
                    std::vector<Mask> pv(val.size());
                    for (std::size_t i = 0; i < val.size(); ++i) pv[i] = permute_mask(val[i], p);
                    if (pv < val) {
                        keep = false;
                        break;
                    }
                }
                if (keep && !sink(make_model(up, inst, val, opt.domain_size))) {
                    stop = true;
                    return;
                }
                std::size_t k = 0;
                while (k < idx.size() && ++idx[k] == us.size()) idx[k++] = 0;
                if (k == idx.size()) break;
            }
        });
        if (stop) return;
    }
}

// Model files.
namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> words(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ' ' || c == '\t' || c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

}  // namespace

KripkeModel parse_model(const std::string& text) {
    std::vector<std::string> worlds, domain;
    std::vector<std::pair<std::string, std::string>> leq_names;
    std::vector<std::pair<std::string, std::string>> entries;  // atom text, world
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto error = [&](const std::string& m) {
        throw std::invalid_argument("model line " + std::to_string(lineno) + ": " + m);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line = line.substr(0, h);
        line = trim(line);
        if (line.empty()) continue;
        if (line.rfind("worlds:", 0) == 0) {
            for (auto& w : words(line.substr(7))) worlds.push_back(w);
        } else if (line.rfind("domain:", 0) == 0) {
            for (auto& d : words(line.substr(7))) domain.push_back(d);
        } else if (line.rfind("leq:", 0) == 0) {
            for (auto& p : words(line.substr(4))) {
                auto k = p.find("<=");
                if (k == std::string::npos) error("expected w<=v");
                leq_names.push_back({p.substr(0, k), p.substr(k + 2)});
            }
        } else {
            auto at = line.find('@');
            if (at == std::string::npos) error("expected 'atom @ world'");
            entries.push_back({trim(line.substr(0, at)), trim(line.substr(at + 1))});
        }
    }
    if (worlds.empty()) error("no worlds");
    if (domain.empty()) domain.push_back("d0");
    auto widx = [&](const std::string& n) {
        auto it = std::find(worlds.begin(), worlds.end(), n);
        if (it == worlds.end()) throw std::invalid_argument("model: unknown world " + n);
        return static_cast<int>(it - worlds.begin());
    };
    auto didx = [&](const std::string& n) {
        auto it = std::find(domain.begin(), domain.end(), n);
        if (it == domain.end()) throw std::invalid_argument("model: unknown individual " + n);
        return static_cast<int>(it - domain.begin());
    };
    std::vector<std::pair<int, int>> leq;
    for (const auto& [a, b] : leq_names) leq.push_back({widx(a), widx(b)});
    std::map<KripkeModel::AtomKey, Mask> val;
    for (const auto& [atom, w] : entries) {
        KripkeModel::AtomKey key;
        auto lp = atom.find('(');
        if (lp == std::string::npos) {
            key.pred = atom;
        } else {
            if (atom.back() != ')') throw std::invalid_argument("model: malformed atom " + atom);
            key.pred = trim(atom.substr(0, lp));
            for (auto& d : words(atom.substr(lp + 1, atom.size() - lp - 2))) key.args.push_back(didx(d));
        }
        val[key] |= bit(widx(w));
    }
    return KripkeModel(worlds, leq, domain, val);
}

std::string format_model(const KripkeModel& m) {
    std::string out = "worlds:";
    for (const auto& w : m.worlds()) out += " " + w;
    out += "\nleq:";
    for (int w = 0; w < m.size(); ++w)
        for (int v = 0; v < m.size(); ++v)
            if (w != v && m.leq(w, v)) out += " " + m.worlds()[w] + "<=" + m.worlds()[v];
    out += "\ndomain:";
    for (const auto& d : m.domain()) out += " " + d;
    out += "\n";
    for (const auto& [key, mask] : m.valuation()) {
        std::string atom = key.pred;
        if (!key.args.empty()) {
            atom += "(";
            for (std::size_t i = 0; i < key.args.size(); ++i) atom += (i ? "," : "") + m.domain()[key.args[i]];
            atom += ")";
        }
        for (int w = 0; w < m.size(); ++w)
            if ((mask >> w) & 1) out += atom + " @ " + m.worlds()[w] + "\n";
    }
    return out;
}

}  // namespace intuit
