// Graphs of labelled and nested sequents, treelikeness, isomorphism and the
// translation between treelike labelled sequents and nested sequents.
#pragma once

#include "intuit/labelled.hpp"
#include "intuit/nested.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace intuit {

struct VertexLabel {
    std::vector<Formula> ante;
    std::vector<Formula> succ;
};

struct SequentGraph {
    std::vector<std::string> vertices;  // first-occurrence order
    std::vector<std::pair<std::string, std::string>> edges;
    std::map<std::string, VertexLabel> labelling;

    bool has_edge(const std::string& x, const std::string& y) const;
    std::string dot() const;
};

SequentGraph graph_of_labelled(const LabelledSequent& s);
/// Vertices are strings: the root is `prefix`, child i of vertex s is s + i.
SequentGraph graph_of_nested(const NestedSequent& s, const std::string& prefix = "0");

enum class TreeViolation { None, Disconnected, Cycle, BackwardsBranching, MultipleRoots };

const char* violation_name(TreeViolation v);

struct TreelikeResult {
    bool ok = false;
    TreeViolation violation = TreeViolation::None;
    std::string root;
    std::string detail;
    explicit operator bool() const { return ok; }
};

TreelikeResult is_treelike(const LabelledSequent& s);

using Bijection = std::map<std::string, std::string>;

/// Exact backtracking search; throws std::length_error past `max_vertices`.
std::optional<Bijection> isomorphic(const SequentGraph& g0, const SequentGraph& g1, std::size_t max_vertices = 64);

class NotTreelike : public std::runtime_error {
public:
    explicit NotTreelike(TreelikeResult r)
        : std::runtime_error(std::string("sequent is not treelike: ") + violation_name(r.violation) +
                             (r.detail.empty() ? "" : " (" + r.detail + ")")),
          result(std::move(r)) {}
    TreelikeResult result;
};

/// Labels that occur only in domain atoms and have no relational edge.
std::vector<std::string> isolated_domain_labels(const LabelledSequent& s);

/// The translation to nested sequents. Domain atoms are dropped, and so are
/// labels that occur only in domain atoms (unless nothing else remains).
/// Throws NotTreelike.
NestedSequent nestify(const LabelledSequent& s);

/// nestify plus the nested path of every kept label.
std::pair<NestedSequent, std::map<std::string, std::vector<int>>> nestify_with_paths(const LabelledSequent& s);

/// Fresh labels w0, w1, ... in preorder, one relational atom per bracket.
LabelledSequent labelify(const NestedSequent& s, const std::string& base = "w");

/// Label of the nested node at `path` under labelify's naming.
std::string labelify_name(const NestedSequent& s, const std::vector<int>& path, const std::string& base = "w");

}  // namespace intuit
