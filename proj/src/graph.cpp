#include "intuit/graph.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace intuit {

bool SequentGraph::has_edge(const std::string& x, const std::string& y) const {
    return std::find(edges.begin(), edges.end(), std::make_pair(x, y)) != edges.end();
}

std::string SequentGraph::dot() const {
    auto join = [](const std::vector<Formula>& fs) {
        std::string s;
        for (std::size_t i = 0; i < fs.size(); ++i) s += (i ? ", " : "") + fs[i].str();
        return s;
    };
    std::string out = "digraph sequent {\n";
    for (const std::string& v : vertices) {
        const VertexLabel& l = labelling.at(v);
        out += "  \"" + v + "\" [label=\"" + v + ": " + join(l.ante) + " => " + join(l.succ) + "\"];\n";
    }
    for (const auto& [x, y] : edges) out += "  \"" + x + "\" -> \"" + y + "\";\n";
    return out + "}\n";
}

SequentGraph graph_of_labelled(const LabelledSequent& s) {
    SequentGraph g;
    auto vertex = [&](const std::string& w) {
        if (g.labelling.count(w)) return;
        g.vertices.push_back(w);
        g.labelling[w];
    };
    for (const RelAtom& r : s.rel) {
        vertex(r.from);
        vertex(r.to);
        if (!g.has_edge(r.from, r.to)) g.edges.push_back({r.from, r.to});
    }
    for (const DomAtom& d : s.dom) vertex(d.label);
    for (const LFormula& x : s.ante) {
        vertex(x.label);
        g.labelling[x.label].ante.push_back(x.f);
    }
    for (const LFormula& x : s.succ) {
        vertex(x.label);
        g.labelling[x.label].succ.push_back(x.f);
    }
    return g;
}

namespace {

void nested_rec(const NestedSequent& s, const std::string& sigma, SequentGraph& g) {
    g.vertices.push_back(sigma);
    g.labelling[sigma] = {s.ante, s.succ};
    for (std::size_t i = 0; i < s.children.size(); ++i) {
        std::string child = sigma + std::to_string(i);
        g.edges.push_back({sigma, child});
        nested_rec(s.children[i], child, g);
    }
}

}  // namespace

SequentGraph graph_of_nested(const NestedSequent& s, const std::string& prefix) {
    SequentGraph g;
    nested_rec(s, prefix, g);
    return g;
}

const char* violation_name(TreeViolation v) {
    switch (v) {
        case TreeViolation::None: return "none";
        case TreeViolation::Disconnected: return "disconnected";
        case TreeViolation::Cycle: return "cycle";
        case TreeViolation::BackwardsBranching: return "backwards branching";
        case TreeViolation::MultipleRoots: return "multiple roots";
    }
    return "?";
}

namespace {

TreelikeResult tree_check(const SequentGraph& g) {
    TreelikeResult r;
    if (g.vertices.empty()) {
        r.ok = true;
        return r;
    }
    auto fail = [&](TreeViolation v, std::string d) {
        r.violation = v;
        r.detail = std::move(d);
        return r;
    };
    std::map<std::string, int> indeg;
    for (const std::string& v : g.vertices) indeg[v] = 0;
    for (const auto& [x, y] : g.edges) {
        if (x == y) return fail(TreeViolation::Cycle, "loop at " + x);
        if (++indeg[y] > 1) return fail(TreeViolation::BackwardsBranching, "two edges into " + y);
    }
    std::vector<std::string> roots;
    for (const std::string& v : g.vertices)
        if (indeg[v] == 0) roots.push_back(v);
    if (roots.empty()) return fail(TreeViolation::Cycle, "no vertex without predecessor");
    if (roots.size() > 1) {
        // With in-degree at most one, several roots means several components.
        return fail(TreeViolation::Disconnected, "roots " + roots[0] + " and " + roots[1]);
    }
    std::set<std::string> seen{roots[0]};
    std::vector<std::string> stack{roots[0]};
    while (!stack.empty()) {
        std::string x = stack.back();
        stack.pop_back();
        for (const auto& [a, b] : g.edges)
            if (a == x && seen.insert(b).second) stack.push_back(b);
    }
    if (seen.size() != g.vertices.size()) return fail(TreeViolation::Cycle, "component without a root");
    r.ok = true;
    r.root = roots[0];
    return r;
}

}  // namespace

TreelikeResult is_treelike(const LabelledSequent& s) { return tree_check(graph_of_labelled(s)); }

std::optional<Bijection> isomorphic(const SequentGraph& g0, const SequentGraph& g1, std::size_t max_vertices) {
    const std::size_t n = g0.vertices.size();
    if (n > max_vertices || g1.vertices.size() > max_vertices)
        throw std::length_error("isomorphism search: size budget exceeded");
    if (n != g1.vertices.size() || g0.edges.size() != g1.edges.size()) return std::nullopt;

    struct Sig {
        int in = 0, out = 0;
        bool loop = false;
        std::vector<Formula> ante, succ;
        bool operator==(const Sig& o) const {
            return in == o.in && out == o.out && loop == o.loop && ante == o.ante && succ == o.succ;
        }
    };
    auto sigs = [](const SequentGraph& g) {
        std::map<std::string, Sig> m;
        for (const std::string& v : g.vertices) {
            Sig s;
            s.ante = g.labelling.at(v).ante;
            s.succ = g.labelling.at(v).succ;
            std::sort(s.ante.begin(), s.ante.end());
            std::sort(s.succ.begin(), s.succ.end());
            m[v] = std::move(s);
        }
        for (const auto& [x, y] : g.edges) {
            m[x].out++;
            m[y].in++;
            if (x == y) m[x].loop = true;
        }
        return m;
    };
    const auto s0 = sigs(g0), s1 = sigs(g1);

    Bijection f;
    std::set<std::string> used;
    std::function<bool(std::size_t)> go = [&](std::size_t i) {
        if (i == n) return true;
        const std::string& x = g0.vertices[i];
        for (const std::string& y : g1.vertices) {
            if (used.count(y) || !(s0.at(x) == s1.at(y))) continue;
            bool ok = true;
            // Edges among already mapped vertices must agree both ways.
            for (std::size_t j = 0; j < i && ok; ++j) {
                const std::string& z = g0.vertices[j];
                const std::string& fz = f[z];
                ok = g0.has_edge(x, z) == g1.has_edge(y, fz) && g0.has_edge(z, x) == g1.has_edge(fz, y);
            }
            if (!ok) continue;
            f[x] = y;
            used.insert(y);
            if (go(i + 1)) return true;
            used.erase(y);
            f.erase(x);
        }
        return false;
    };
    if (!go(0)) return std::nullopt;
    return f;
}

std::vector<std::string> isolated_domain_labels(const LabelledSequent& s) {
    std::set<std::string> busy;
    for (const RelAtom& r : s.rel) {
        busy.insert(r.from);
        busy.insert(r.to);
    }
    for (const LFormula& x : s.ante) busy.insert(x.label);
    for (const LFormula& x : s.succ) busy.insert(x.label);
    std::vector<std::string> out;
    for (const DomAtom& d : s.dom)
        if (!busy.count(d.label) && std::find(out.begin(), out.end(), d.label) == out.end()) out.push_back(d.label);
    return out;
}

std::pair<NestedSequent, std::map<std::string, std::vector<int>>> nestify_with_paths(const LabelledSequent& s) {
    LabelledSequent t = s;
    std::vector<std::string> iso = isolated_domain_labels(s);
    if (!iso.empty() && iso.size() < s.labels().size()) t.dom.clear();
    TreelikeResult tr = is_treelike(t);
    if (!tr) throw NotTreelike(tr);
    SequentGraph g = graph_of_labelled(t);
    std::map<std::string, std::vector<int>> paths;
    std::function<NestedSequent(const std::string&, std::vector<int>&)> build = [&](const std::string& w,
                                                                                   std::vector<int>& path) {
        paths[w] = path;
        NestedSequent n;
        n.ante = g.labelling[w].ante;
        n.succ = g.labelling[w].succ;
        for (const auto& [x, y] : g.edges) {
            if (x != w) continue;
            path.push_back(static_cast<int>(n.children.size()));
            n.children.push_back(build(y, path));
            path.pop_back();
        }
        return n;
    };
    std::vector<int> path;
    NestedSequent root = tr.root.empty() ? NestedSequent{} : build(tr.root, path);
    return {std::move(root), std::move(paths)};
}

NestedSequent nestify(const LabelledSequent& s) { return nestify_with_paths(s).first; }

namespace {

void labelify_rec(const NestedSequent& s, const std::string& w, const std::string& base, int& counter,
                  LabelledSequent& out) {
    for (const Formula& f : s.ante) out.ante.push_back({w, f});
    for (const Formula& f : s.succ) out.succ.push_back({w, f});
    for (const NestedSequent& c : s.children) {
        std::string v = base + std::to_string(counter++);
        out.rel.push_back({w, v});
        labelify_rec(c, v, base, counter, out);
    }
}

}  // namespace

LabelledSequent labelify(const NestedSequent& s, const std::string& base) {
    LabelledSequent out;
    int counter = 1;
    labelify_rec(s, base + "0", base, counter, out);
    return out;
}

std::string labelify_name(const NestedSequent& s, const std::vector<int>& path, const std::string& base) {
    // Mirrors the preorder numbering of labelify_rec.
    int counter = 1;
    std::string found = path.empty() ? base + "0" : "";
    std::function<void(const NestedSequent&, std::vector<int>&)> walk = [&](const NestedSequent& n,
                                                                            std::vector<int>& cur) {
        for (std::size_t i = 0; i < n.children.size(); ++i) {
            std::string v = base + std::to_string(counter++);
            cur.push_back(static_cast<int>(i));
            if (cur == path) found = v;
            walk(n.children[i], cur);
            cur.pop_back();
        }
    };
    std::vector<int> cur;
    walk(s, cur);
    return found;
}

}  // namespace intuit
