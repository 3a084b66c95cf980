#include "intuit/search.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace intuit {

namespace {

constexpr int kFinal = 1 << 20;  // memo value for failures independent of depth

using Step = std::pair<Rule, Witness>;

// A run of structural steps applied bottom-up, with the sequent reached.
struct Chain {
    std::vector<Step> steps;
    std::vector<LabelledSequent> below;  // conclusion of each step
    LabelledSequent top;
};

void push(Chain& c, Rule r, Witness w) {
    auto ps = instantiate(r, c.top, w);
    c.below.push_back(c.top);
    c.steps.push_back({r, std::move(w)});
    c.top = std::move((*ps)[0]);
}

LabelledDerivation wrap(const Chain& c, LabelledDerivation top) {
    for (std::size_t i = c.steps.size(); i-- > 0;) {
        LabelledDerivation d{c.below[i], c.steps[i].first, c.steps[i].second, {}};
        d.premises.push_back(std::move(top));
        top = std::move(d);
    }
    return top;
}

Witness wlabels(std::string w, std::string v = "", std::string u = "") {
    Witness x;
    x.w = std::move(w);
    x.v = std::move(v);
    x.u = std::move(u);
    return x;
}

// Shortest directed path w = z0 -> ... -> zn = v over literal atoms.
std::optional<std::vector<std::string>> directed_path(const LabelledSequent& s, const std::string& w,
                                                      const std::string& v) {
    std::map<std::string, std::string> prev{{w, ""}};
    std::deque<std::string> q{w};
    while (!q.empty()) {
        std::string x = q.front();
        q.pop_front();
        if (x == v) break;
        for (const RelAtom& r : s.rel)
            if (r.from == x && !prev.count(r.to)) {
                prev[r.to] = x;
                q.push_back(r.to);
            }
    }
    if (!prev.count(v)) return std::nullopt;
    std::vector<std::string> path{v};
    while (path.back() != w) path.push_back(prev[path.back()]);
    std::reverse(path.begin(), path.end());
    return path;
}

// Undirected path from some label carrying a in D to w; first element is the source.
std::optional<std::vector<std::string>> dom_path(const LabelledSequent& s, const std::string& a, const std::string& w) {
    std::map<std::string, std::string> prev;
    std::deque<std::string> q;
    for (const DomAtom& d : s.dom)
        if (d.param == a && !prev.count(d.label)) {
            prev[d.label] = "";
            q.push_back(d.label);
        }
    while (!q.empty() && !prev.count(w)) {
        std::string x = q.front();
        q.pop_front();
        for (const RelAtom& r : s.rel) {
            const std::string* y = r.from == x ? &r.to : r.to == x ? &r.from : nullptr;
            if (y && !prev.count(*y)) {
                prev[*y] = x;
                q.push_back(*y);
            }
        }
    }
    if (!prev.count(w)) return std::nullopt;
    std::vector<std::string> path{w};
    while (!prev[path.back()].empty()) path.push_back(prev[path.back()]);
    std::reverse(path.begin(), path.end());
    return path;
}

// Cost in steps of making w<=v literal; -1 if impossible.
int rel_cost(const LabelledSequent& s, const std::string& w, const std::string& v) {
    if (s.has_rel(w, v)) return 0;
    if (w == v) return 1;
    auto p = directed_path(s, w, v);
    return p ? static_cast<int>(p->size()) - 2 : -1;
}

int dom_cost(const LabelledSequent& s, const std::string& a, const std::string& w) {
    if (s.has_dom(a, w)) return 0;
    auto p = dom_path(s, a, w);
    return p ? static_cast<int>(p->size()) - 1 : -1;
}

void make_rel(Chain& c, const std::string& w, const std::string& v) {
    if (c.top.has_rel(w, v)) return;
    if (w == v) return push(c, Rule::ref, wlabels(w));
    auto p = *directed_path(c.top, w, v);
    for (std::size_t i = 2; i < p.size(); ++i) push(c, Rule::tra, wlabels(w, p[i - 1], p[i]));
}

void make_dom(Chain& c, const std::string& a, const std::string& w) {
    if (c.top.has_dom(a, w)) return;
    auto p = *dom_path(c.top, a, w);
    for (std::size_t i = 1; i < p.size(); ++i) {
        Witness x;
        x.a = a;
        if (c.top.has_rel(p[i - 1], p[i])) {
            x.w = p[i - 1];
            x.v = p[i];
            push(c, Rule::nd, x);
        } else {
            x.w = p[i];
            x.v = p[i - 1];
            push(c, Rule::cd, x);
        }
    }
}

struct Candidate {
    int cost;  // structural steps before the rule
    Rule rule;
    Witness wit;
    std::vector<std::pair<std::string, std::string>> rels;  // to make literal first
    std::vector<std::pair<std::string, std::string>> doms;  // (param, label)
};

class LabelledSearch {
public:
    LabelledSearch(const Calculus& c, const SearchConfig& cfg) : calc_(c), cfg_(cfg) {}

    SearchResult<LabelledDerivation> run(const LabelledSequent& goal) {
        SearchResult<LabelledDerivation> res;
        for (int d = 1; d <= cfg_.depth_bound && !out_of_nodes(); ++d) {
            bound_hit_ = false;
            std::vector<std::string> branch;
            auto p = go(goal, d, branch);
            if (p) {
                res.proof = std::move(p);
                break;
            }
            if (!bound_hit_) break;  // exhausted without touching the bound
        }
        res.bound_hit = bound_hit_ || out_of_nodes();
        res.nodes = nodes_;
        return res;
    }

private:
    bool out_of_nodes() const { return nodes_ >= cfg_.node_budget; }

    std::optional<LabelledDerivation> finish(Chain c, Rule r, Witness w, int depth, std::vector<std::string>& branch) {
        auto ps = instantiate(r, c.top, w);
        if (!ps) return std::nullopt;
        LabelledDerivation node{c.top, r, w, {}};
        for (const LabelledSequent& p : *ps) {
            auto sub = go(p, depth - 1, branch);
            if (!sub) return std::nullopt;
            node.premises.push_back(std::move(*sub));
        }
        return wrap(c, std::move(node));
    }

    Chain prepare(const LabelledSequent& s, const Candidate& k) {
        Chain c;
        c.top = s;
        for (const auto& [w, v] : k.rels) make_rel(c, w, v);
        for (const auto& [a, w] : k.doms) make_dom(c, a, w);
        return c;
    }

    std::optional<LabelledDerivation> closure(const LabelledSequent& s, int depth) {
        for (const LFormula& x : s.ante)
            if (x.f.kind() == Kind::Bot && calc_.contains(Rule::bot_l))
                return LabelledDerivation{s, Rule::bot_l, wlabels(x.label), {}};
        std::optional<Candidate> best;
        for (const LFormula& x : s.ante) {
            if (!x.f.is_atom()) continue;
            bool params = !x.f.args().empty();
            for (const LFormula& y : s.succ) {
                if (y.f != x.f) continue;
                Candidate k;
                k.wit = wlabels(x.label, y.label);
                k.wit.formula = x.f;
                if (x.label == y.label && !params && calc_.contains(Rule::id_star)) {
                    k.cost = 0;
                    k.rule = Rule::id_star;
                    k.wit.v.clear();
                } else {
                    k.rule = params ? Rule::id_q : Rule::id;
                    if (!calc_.contains(k.rule)) continue;
                    int c = rel_cost(s, x.label, y.label);
                    if (c < 0) continue;
                    k.cost = c;
                    k.rels.push_back({x.label, y.label});
                    bool ok = true;
                    for (const std::string& a : params_of(x.f)) {
                        int dc = dom_cost(s, a, x.label);
                        if (dc < 0) ok = false;
                        k.cost += dc;
                        k.doms.push_back({a, x.label});
                    }
                    if (!ok) continue;
                }
                if (!best || k.cost < best->cost) best = k;
            }
        }
        if (!best) return std::nullopt;
        if (best->cost + 1 > depth) {
            bound_hit_ = true;
            return std::nullopt;
        }
        Chain c = prepare(s, *best);
        return wrap(c, LabelledDerivation{c.top, best->rule, best->wit, {}});
    }

    // First applicable invertible rule that consumes its principal formula.
    std::optional<std::pair<Rule, Witness>> invertible(const LabelledSequent& s) {
        const Rule unary[] = {Rule::and_l, Rule::or_r, Rule::imp_r, Rule::neg_r, Rule::forall_r, Rule::exists_l,
                              Rule::or_l,  Rule::and_r};
        for (Rule r : unary) {
            if (!calc_.contains(r)) continue;
            bool left = r == Rule::and_l || r == Rule::exists_l || r == Rule::or_l;
            Kind k = r == Rule::and_l || r == Rule::and_r ? Kind::And
                     : r == Rule::or_l || r == Rule::or_r ? Kind::Or
                     : r == Rule::imp_r                   ? Kind::Impl
                     : r == Rule::neg_r                   ? Kind::Neg
                     : r == Rule::forall_r                ? Kind::Forall
                                                          : Kind::Exists;
            for (const LFormula& x : left ? s.ante : s.succ) {
                if (x.f.kind() != k) continue;
                Witness w = wlabels(x.label);
                w.formula = x.f;
                if (r == Rule::imp_r || r == Rule::neg_r || r == Rule::forall_r) w.v = fresh_name("v", s.labels());
                if (r == Rule::forall_r || r == Rule::exists_l) w.a = fresh_name("a", s.params());
                return std::make_pair(r, w);
            }
        }
        return std::nullopt;
    }

    std::vector<Candidate> choices(const LabelledSequent& s) {
        std::vector<Candidate> out;
        std::set<std::string> labels = s.labels();
        std::set<std::string> params = s.params();
        auto base = [](Rule r, const LFormula& x) {
            Candidate k;
            k.rule = r;
            k.wit.w = x.label;
            k.wit.formula = x.f;
            k.cost = 0;
            return k;
        };
        for (const LFormula& x : s.ante) {
            switch (x.f.kind()) {
                case Kind::Impl:
                    if (calc_.contains(Rule::imp_l_star) &&
                        !(s.has_succ(x.label, x.f.left()) || s.has_ante(x.label, x.f.right())))
                        out.push_back(base(Rule::imp_l_star, x));
                    if (calc_.contains(Rule::imp_l))
                        for (const std::string& v : labels) {
                            if (s.has_succ(v, x.f.left()) || s.has_ante(v, x.f.right())) continue;
                            int c = rel_cost(s, x.label, v);
                            if (c < 0) continue;
                            Candidate k = base(Rule::imp_l, x);
                            k.wit.v = v;
                            k.cost = c;
                            k.rels.push_back({x.label, v});
                            out.push_back(k);
                        }
                    break;
                case Kind::Neg:
                    if (calc_.contains(Rule::neg_l) && !s.has_succ(x.label, x.f.left()))
                        out.push_back(base(Rule::neg_l, x));
                    break;
                case Kind::Forall:
                    if (!calc_.contains(Rule::forall_l)) break;
                    for (const std::string& v : labels) {
                        int c = rel_cost(s, x.label, v);
                        if (c < 0) continue;
                        for (const std::string& a : params) {
                            if (s.has_ante(v, substitute_param(x.f.body(), a, x.f.name()))) continue;
                            int dc = dom_cost(s, a, v);
                            if (dc < 0) continue;
                            Candidate k = base(Rule::forall_l, x);
                            k.wit.v = v;
                            k.wit.a = a;
                            k.cost = c + dc;
                            k.rels.push_back({x.label, v});
                            k.doms.push_back({a, v});
                            out.push_back(k);
                        }
                    }
                    break;
                default:
                    break;
            }
            if (calc_.contains(Rule::lift))
                for (const RelAtom& r : s.rel)
                    if (r.from == x.label && r.to != x.label && !s.has_ante(r.to, x.f)) {
                        Candidate k = base(Rule::lift, x);
                        k.wit.u = r.to;
                        out.push_back(k);
                    }
        }
        if (calc_.contains(Rule::exists_r))
            for (const LFormula& x : s.succ) {
                if (x.f.kind() != Kind::Exists) continue;
                for (const std::string& a : params) {
                    if (s.has_succ(x.label, substitute_param(x.f.body(), a, x.f.name()))) continue;
                    int dc = dom_cost(s, a, x.label);
                    if (dc < 0) continue;
                    Candidate k = base(Rule::exists_r, x);
                    k.wit.a = a;
                    k.cost = dc;
                    k.doms.push_back({a, x.label});
                    out.push_back(k);
                }
            }
        std::stable_sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) { return a.cost < b.cost; });
        return out;
    }

    std::optional<LabelledDerivation> go(const LabelledSequent& s, int depth, std::vector<std::string>& branch) {
        if (out_of_nodes()) return std::nullopt;
        ++nodes_;
        if (auto c = closure(s, depth)) return c;
        if (depth <= 1) {
            bound_hit_ = true;
            return std::nullopt;
        }
        if (auto inv = invertible(s)) {
            Chain c;
            c.top = s;
            return finish(c, inv->first, inv->second, depth, branch);
        }
        std::string key = s.canonical().str();
        if (cfg_.loop_check && std::find(branch.begin(), branch.end(), key) != branch.end()) {
            bound_hit_ = true;  // a loop cut is not a refutation either
            return std::nullopt;
        }
        auto m = failed_.find(key);
        if (m != failed_.end() && m->second >= depth) {
            if (m->second < kFinal) bound_hit_ = true;
            return std::nullopt;
        }
        branch.push_back(key);
        std::optional<LabelledDerivation> found;
        bool hit_before = bound_hit_;
        bound_hit_ = false;
        for (const Candidate& k : choices(s)) {
            if (k.cost + 2 > depth) {
                bound_hit_ = true;
                continue;
            }
            Chain c = prepare(s, k);
            found = finish(std::move(c), k.rule, k.wit, depth - k.cost, branch);
            if (found || out_of_nodes()) break;
        }
        branch.pop_back();
        // Only failures that are final for this depth are memoized.
        if (!found && !out_of_nodes()) failed_[key] = std::max(failed_[key], bound_hit_ ? depth : kFinal);
        bound_hit_ = bound_hit_ || hit_before;
        return found;
    }

    const Calculus& calc_;
    const SearchConfig& cfg_;
    std::size_t nodes_ = 0;
    bool bound_hit_ = false;
    std::unordered_map<std::string, int> failed_;
};

}  // namespace

SearchResult<LabelledDerivation> prove_labelled(const LabelledSequent& goal, const SearchConfig& cfg) {
    if (cfg.depth_bound < 1 || cfg.parameter_budget < 1)
        throw std::invalid_argument("depth bound and parameter budget must be at least 1");
    Calculus calc = labelled_calculus(cfg.calculus);
    LabelledSearch s(calc, cfg);
    if (calc.contains(Rule::neg_r)) return s.run(goal);
    LabelledSequent g = goal;
    for (auto* side : {&g.ante, &g.succ})
        for (LFormula& x : *side) x.f = convert_signature(x.f, Signature::ToBot);
    return s.run(g);
}

}  // namespace intuit
