#include "intuit/search.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace intuit {

namespace {

constexpr int kFinal = 1 << 20;  // memo value for failures independent of depth

bool has(const std::vector<Formula>& v, const Formula& f) { return std::find(v.begin(), v.end(), f) != v.end(); }

Formula convert_all(const Formula& f) { return bot_to_neg_unchecked(f); }

NestedSequent map_formulas(const NestedSequent& s) {
    NestedSequent t;
    for (const Formula& f : s.ante) t.ante.push_back(convert_all(f));
    for (const Formula& f : s.succ) t.succ.push_back(convert_all(f));
    for (const NestedSequent& c : s.children) t.children.push_back(map_formulas(c));
    return t;
}

void collect(const NestedSequent& s, bool& bot, bool& reserved) {
    for (const auto* side : {&s.ante, &s.succ})
        for (const Formula& f : *side) {
            bot = bot || contains_bot(f);
            for (const auto& [p, n] : predicates_of(f)) reserved = reserved || p == kReservedAtom;
        }
    for (const NestedSequent& c : s.children) collect(c, bot, reserved);
}

struct Choice {
    int priority;
    std::vector<int> hole;
    Rule rule;
    Witness wit;
    bool fresh = false;
};

class NestedSearch {
public:
    NestedSearch(NestedCalculus c, const SearchConfig& cfg) : calc_(std::move(c)), cfg_(cfg) {}

    SearchResult<NestedDerivation> run(const NestedSequent& goal) {
        SearchResult<NestedDerivation> res;
        for (int d = 1; d <= cfg_.depth_bound && !out_of_nodes(); ++d) {
            bound_hit_ = false;
            std::vector<std::string> branch;
            auto p = go(goal, d, 0, branch);
            if (p) {
                res.proof = std::move(p);
                break;
            }
            if (!bound_hit_) break;
        }
        res.bound_hit = bound_hit_ || out_of_nodes();
        res.nodes = nodes_;
        return res;
    }

private:
    bool out_of_nodes() const { return nodes_ >= cfg_.node_budget; }

    static void holes(const NestedSequent& s, std::vector<int>& cur, std::vector<std::pair<std::vector<int>, const NestedSequent*>>& out) {
        out.push_back({cur, &s});
        for (std::size_t i = 0; i < s.children.size(); ++i) {
            cur.push_back(static_cast<int>(i));
            holes(s.children[i], cur, out);
            cur.pop_back();
        }
    }

    std::optional<NestedDerivation> closure(const NestedSequent& s, const std::vector<std::pair<std::vector<int>, const NestedSequent*>>& hs) {
        for (const auto& [h, n] : hs)
            for (const Formula& f : n->ante)
                if (f.is_atom() && has(n->succ, f)) {
                    Rule r = f.args().empty() ? Rule::id : Rule::id_q;
                    if (!calc_.contains(r)) continue;
                    Witness w;
                    w.formula = f;
                    return NestedDerivation{s, r, h, w, {}};
                }
        return std::nullopt;
    }

    std::optional<Choice> invertible(const NestedSequent& s, const std::vector<std::pair<std::vector<int>, const NestedSequent*>>& hs) {
        const Rule order[] = {Rule::and_l, Rule::or_r, Rule::neg_r, Rule::imp_r, Rule::forall_r,
                              Rule::exists_l, Rule::or_l, Rule::and_r};
        for (Rule r : order) {
            if (!calc_.contains(r)) continue;
            bool left = r == Rule::and_l || r == Rule::exists_l || r == Rule::or_l;
            Kind k = r == Rule::and_l || r == Rule::and_r ? Kind::And
                     : r == Rule::or_l || r == Rule::or_r ? Kind::Or
                     : r == Rule::imp_r                   ? Kind::Impl
                     : r == Rule::neg_r                   ? Kind::Neg
                     : r == Rule::forall_r                ? Kind::Forall
                                                          : Kind::Exists;
            for (const auto& [h, n] : hs)
                for (const Formula& f : left ? n->ante : n->succ) {
                    if (f.kind() != k) continue;
                    Choice c{0, h, r, {}};
                    c.wit.formula = f;
                    if (r == Rule::forall_r || r == Rule::exists_l) c.wit.a = fresh_name("a", s.params());
                    return c;
                }
        }
        return std::nullopt;
    }

    std::vector<Choice> choices(const NestedSequent& s, const std::vector<std::pair<std::vector<int>, const NestedSequent*>>& hs,
                                int fresh_used) {
        std::vector<Choice> out;
        std::set<std::string> ps = s.params();
        std::vector<std::string> terms(ps.begin(), ps.end());
        bool can_fresh = fresh_used < cfg_.parameter_budget;
        std::string fresh = fresh_name("a", ps);
        auto add = [&](int prio, const std::vector<int>& h, Rule r, const Formula& f) -> Choice& {
            Choice c{prio, h, r, {}};
            c.wit.formula = f;
            out.push_back(c);
            return out.back();
        };
        for (const auto& [h, n] : hs) {
            for (const Formula& f : n->ante) {
                switch (f.kind()) {
                    case Kind::Impl:
                        if (calc_.contains(Rule::imp_l) && !has(n->succ, f.left()) && !has(n->ante, f.right()))
                            add(f.left().is_atom() && has(n->ante, f.left()) ? 0 : 2, h, Rule::imp_l, f);
                        break;
                    case Kind::Neg:
                        if (calc_.contains(Rule::neg_l) && !has(n->succ, f.left()))
                            add(f.left().is_atom() && has(n->ante, f.left()) ? 0 : 2, h, Rule::neg_l, f);
                        break;
                    case Kind::Forall:
                        if (!calc_.contains(Rule::forall_l)) break;
                        for (const std::string& a : terms)
                            if (!has(n->ante, substitute_param(f.body(), a, f.name()))) add(2, h, Rule::forall_l, f).wit.a = a;
                        if (can_fresh) {
                            Choice& c = add(3, h, Rule::forall_l, f);
                            c.wit.a = fresh;
                            c.fresh = true;
                        }
                        break;
                    default:
                        break;
                }
                if (calc_.contains(Rule::lift))
                    for (std::size_t k = 0; k < n->children.size(); ++k) {
                        const NestedSequent& ch = n->children[k];
                        if (has(ch.ante, f)) continue;
                        int prio = f.is_atom() ? (has(ch.succ, f) ? 0 : 1) : 2;
                        add(prio, h, Rule::lift, f).wit.child = static_cast<int>(k);
                    }
            }
            if (calc_.contains(Rule::exists_r))
                for (const Formula& f : n->succ) {
                    if (f.kind() != Kind::Exists) continue;
                    for (const std::string& a : terms)
                        if (!has(n->succ, substitute_param(f.body(), a, f.name()))) add(2, h, Rule::exists_r, f).wit.a = a;
                    if (can_fresh) {
                        Choice& c = add(3, h, Rule::exists_r, f);
                        c.wit.a = fresh;
                        c.fresh = true;
                    }
                }
        }
        std::stable_sort(out.begin(), out.end(), [](const Choice& a, const Choice& b) { return a.priority < b.priority; });
        return out;
    }

    std::optional<NestedDerivation> apply(const NestedSequent& s, const Choice& c, int depth, int fresh_used,
                                          std::vector<std::string>& branch) {
        auto ps = instantiate_nested(calc_, c.rule, s, c.hole, c.wit);
        if (!ps) return std::nullopt;
        NestedDerivation d{s, c.rule, c.hole, c.wit, {}};
        for (const NestedSequent& p : *ps) {
            auto sub = go(p, depth - 1, fresh_used + (c.fresh ? 1 : 0), branch);
            if (!sub) return std::nullopt;
            d.premises.push_back(std::move(*sub));
        }
        return d;
    }

    std::optional<NestedDerivation> go(const NestedSequent& s, int depth, int fresh_used, std::vector<std::string>& branch) {
        if (out_of_nodes()) return std::nullopt;
        ++nodes_;
        std::vector<std::pair<std::vector<int>, const NestedSequent*>> hs;
        std::vector<int> cur;
        holes(s, cur, hs);
        if (auto c = closure(s, hs)) return c;
        if (depth <= 1) {
            bound_hit_ = true;
            return std::nullopt;
        }
        if (auto inv = invertible(s, hs)) return apply(s, *inv, depth, fresh_used, branch);
        std::string key = s.canonical().str() + "#" + std::to_string(fresh_used);
        if (cfg_.loop_check && std::find(branch.begin(), branch.end(), key) != branch.end()) {
            bound_hit_ = true;
            return std::nullopt;
        }
        auto m = failed_.find(key);
        if (m != failed_.end() && m->second >= depth) {
            if (m->second < kFinal) bound_hit_ = true;
            return std::nullopt;
        }
        branch.push_back(key);
        bool hit_before = bound_hit_;
        bound_hit_ = false;
        std::optional<NestedDerivation> found;
        for (const Choice& c : choices(s, hs, fresh_used)) {
            found = apply(s, c, depth, fresh_used, branch);
            if (found || out_of_nodes()) break;
        }
        branch.pop_back();
        if (!found && !out_of_nodes()) failed_[key] = std::max(failed_[key], bound_hit_ ? depth : kFinal);
        bound_hit_ = bound_hit_ || hit_before;
        return found;
    }

    NestedCalculus calc_;
    const SearchConfig& cfg_;
    std::size_t nodes_ = 0;
    bool bound_hit_ = false;
    std::unordered_map<std::string, int> failed_;
};

}  // namespace

SearchResult<NestedDerivation> prove_nested(const NestedSequent& goal, const SearchConfig& cfg) {
    if (cfg.depth_bound < 1 || cfg.parameter_budget < 1)
        throw std::invalid_argument("depth bound and parameter budget must be at least 1");
    NestedCalculus calc = nested_calculus(cfg.calculus);
    bool bot = false, reserved = false;
    collect(goal, bot, reserved);
    if (bot && reserved) throw std::invalid_argument("reserved atom clash");
    NestedSearch s(calc, cfg);
    return s.run(bot ? map_formulas(goal) : goal);
}

}  // namespace intuit
