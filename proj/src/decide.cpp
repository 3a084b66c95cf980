#include "intuit/search.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace intuit {

namespace {

using Mask = KripkeModel::Mask;

// A model flattened for repeated propositional evaluation.
struct FlatModel {
    int n = 0;
    Mask all = 0;
    std::vector<Mask> up;
    std::vector<Mask> atoms;  // by position in the signature
};

struct ModelTable {
    std::vector<KripkeModel> models;  // sorted by world count
    std::vector<FlatModel> flat;
    std::vector<std::size_t> end_of_size;  // end_of_size[k]: first model with more than k worlds
};

Mask box(const FlatModel& m, Mask a, Mask b) {
    // Worlds all of whose successors in a are in b.
    Mask r = 0;
    for (int w = 0; w < m.n; ++w)
        if ((m.up[w] & a & ~b) == 0) r |= Mask{1} << w;
    return r;
}

Mask eval(const FlatModel& m, const Formula& f, const std::map<std::string, int>& idx) {
    switch (f.kind()) {
        case Kind::Bot: return 0;
        case Kind::Atom: return m.atoms[idx.at(f.name())];
        case Kind::Neg: return box(m, eval(m, f.left(), idx), 0);
        case Kind::And: return eval(m, f.left(), idx) & eval(m, f.right(), idx);
        case Kind::Or: return eval(m, f.left(), idx) | eval(m, f.right(), idx);
        case Kind::Impl: return box(m, eval(m, f.left(), idx), eval(m, f.right(), idx));
        default: throw std::invalid_argument("propositional formula expected");
    }
}

std::shared_ptr<const ModelTable> table_for(const std::vector<std::string>& atoms, int max_worlds) {
    static std::mutex mu;
    static std::map<std::pair<std::vector<std::string>, int>, std::shared_ptr<const ModelTable>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(atoms, max_worlds);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    auto t = std::make_shared<ModelTable>();
    EnumerateOptions o;
    o.max_worlds = max_worlds;
    for (const std::string& a : atoms) o.atoms.push_back({a, 0});
    o.up_to_isomorphism = true;
    std::vector<std::vector<KripkeModel>> by_size(max_worlds + 1);
    enumerate_models(o, [&](const KripkeModel& m) { return by_size[m.size()].push_back(m), true; });
    t->end_of_size.assign(max_worlds + 1, 0);
    for (int k = 1; k <= max_worlds; ++k) {
        for (KripkeModel& m : by_size[k]) {
            FlatModel fm;
            fm.n = m.size();
            fm.all = m.all();
            for (int w = 0; w < fm.n; ++w) fm.up.push_back(m.up(w));
            for (const std::string& a : atoms) fm.atoms.push_back(m.atom(a, {}));
            t->flat.push_back(std::move(fm));
            t->models.push_back(std::move(m));
        }
        t->end_of_size[k] = t->models.size();
    }
    cache[key] = t;
    return t;
}

std::optional<std::pair<KripkeModel, int>> table_countermodel(const ModelTable& t, const Formula& f,
                                                              const std::map<std::string, int>& idx,
                                                              std::size_t from, std::size_t to) {
    for (std::size_t i = from; i < to; ++i) {
        Mask miss = t.flat[i].all & ~eval(t.flat[i], f, idx);
        if (miss) return std::make_pair(t.models[i], __builtin_ctzll(miss));
    }
    return std::nullopt;
}

}  // namespace

std::optional<std::pair<KripkeModel, int>> find_countermodel(const Formula& f, int max_worlds, int domain_size) {
    if (max_worlds < 1) return std::nullopt;
    if (is_propositional(f)) {
        std::vector<std::string> atoms;
        for (const auto& [p, n] : predicates_of(f)) atoms.push_back(p);
        auto t = table_for(atoms, max_worlds);
        std::map<std::string, int> idx;
        for (std::size_t i = 0; i < atoms.size(); ++i) idx[atoms[i]] = static_cast<int>(i);
        return table_countermodel(*t, f, idx, 0, t->models.size());
    }
    // First-order: parameters are mapped to domain elements in order of occurrence.
    Env env;
    std::vector<std::string> ps = params_of(f);
    for (std::size_t i = 0; i < ps.size(); ++i) env[ps[i]] = static_cast<int>(i % domain_size);
    EnumerateOptions o;
    o.max_worlds = max_worlds;
    o.atoms = predicates_of(f);
    o.domain_size = domain_size;
    o.up_to_isomorphism = true;
    std::optional<std::pair<KripkeModel, int>> found;
    enumerate_models(o, [&](const KripkeModel& m) {
        Mask miss = m.all() & ~forcing_set(m, f, env);
        if (miss) found.emplace(m, __builtin_ctzll(miss));
        return !found;
    });
    return found;
}

Verdict decide_prop(const Formula& f, int model_bound, const SearchConfig& search) {
    if (!is_propositional(f)) throw std::invalid_argument("propositional formula expected");
    std::vector<std::string> atoms;
    for (const auto& [p, n] : predicates_of(f)) atoms.push_back(p);
    std::map<std::string, int> idx;
    for (std::size_t i = 0; i < atoms.size(); ++i) idx[atoms[i]] = static_cast<int>(i);
    std::shared_ptr<const ModelTable> t = model_bound >= 1 ? table_for(atoms, model_bound) : nullptr;

    NestedSequent goal;
    goal.succ.push_back(f);
    SearchConfig cfg = search;
    cfg.calculus = "nint-star";
    NestedCalculus calc = nested_calculus(cfg.calculus);

    // Round k tries countermodels with exactly k worlds, then a deeper search.
    int rounds = std::max(model_bound, 1);
    bool exhausted = false;
    for (int k = 1; k <= rounds; ++k) {
        if (t && k <= model_bound) {
            std::size_t from = t->end_of_size[k - 1], to = t->end_of_size[k];
            if (auto cm = table_countermodel(*t, f, idx, from, to)) return Countermodel{cm->first, cm->second};
        }
        if (exhausted) continue;
        cfg.depth_bound = k == rounds ? search.depth_bound : std::min(search.depth_bound, 4 + 2 * k);
        auto r = prove_nested(goal, cfg);
        if (r.proof) {
            if (!check_nested_derivation(calc, *r.proof))
                throw std::logic_error("search returned a proof that does not check");
            return Theorem{std::move(*r.proof)};
        }
        exhausted = !r.bound_hit;  // no proof anywhere in this strategy's space
    }
    return Undecided{};
}

}  // namespace intuit
