#include "intuit/proof_io.hpp"

#include "json.hpp"

namespace intuit {

namespace {

using json = nlohmann::ordered_json;

const char* side_name(Side s) {
    switch (s) {
        case Side::Rel: return "rel";
        case Side::Dom: return "dom";
        case Side::Ante: return "ante";
        case Side::Succ: return "succ";
    }
    return "ante";
}

Side side_from(const std::string& s) {
    if (s == "rel") return Side::Rel;
    if (s == "dom") return Side::Dom;
    if (s == "ante") return Side::Ante;
    if (s == "succ") return Side::Succ;
    throw ProofFormatError("unknown side '" + s + "'");
}

json witness_json(const Witness& w) {
    json j = json::object();
    for (auto [k, v] : {std::pair{"w", &w.w}, {"v", &w.v}, {"u", &w.u}, {"a", &w.a}, {"b", &w.b}})
        if (!v->empty()) j[k] = *v;
    if (w.formula) j["formula"] = w.formula->str();
    if (!w.dom_labels.empty()) j["dom_labels"] = w.dom_labels;
    if (w.side != Side::Ante) j["side"] = side_name(w.side);
    if (w.child >= 0) j["child"] = w.child;
    return j;
}

Witness witness_from(const json& j) {
    if (!j.is_object()) throw ProofFormatError("witness must be an object");
    Witness w;
    auto str = [&](const char* k, std::string& out) {
        if (!j.contains(k)) return;
        if (!j[k].is_string()) throw ProofFormatError(std::string("witness field '") + k + "' must be a string");
        out = j[k].get<std::string>();
    };
    str("w", w.w);
    str("v", w.v);
    str("u", w.u);
    str("a", w.a);
    str("b", w.b);
    if (j.contains("formula")) {
        if (!j["formula"].is_string()) throw ProofFormatError("witness formula must be a string");
        w.formula = parse_formula(j["formula"].get<std::string>());
    }
    if (j.contains("dom_labels")) {
        if (!j["dom_labels"].is_array()) throw ProofFormatError("dom_labels must be an array");
        for (const json& x : j["dom_labels"]) {
            if (!x.is_string()) throw ProofFormatError("dom_labels entries must be strings");
            w.dom_labels.push_back(x.get<std::string>());
        }
    }
    if (j.contains("side")) {
        if (!j["side"].is_string()) throw ProofFormatError("side must be a string");
        w.side = side_from(j["side"].get<std::string>());
    }
    if (j.contains("child")) {
        if (!j["child"].is_number_integer()) throw ProofFormatError("child must be an integer");
        w.child = j["child"].get<int>();
    }
    return w;
}

json node_json(const LabelledDerivation& d) {
    json j;
    j["sequent"] = d.conclusion.str();
    j["rule"] = rule_name(d.rule);
    j["witness"] = witness_json(d.wit);
    j["premises"] = json::array();
    for (const auto& p : d.premises) j["premises"].push_back(node_json(p));
    return j;
}

json node_json(const NestedDerivation& d) {
    json j;
    j["sequent"] = d.conclusion.str();
    j["rule"] = rule_name(d.rule);
    j["hole"] = d.hole;
    j["witness"] = witness_json(d.wit);
    j["premises"] = json::array();
    for (const auto& p : d.premises) j["premises"].push_back(node_json(p));
    return j;
}

const json& field(const json& j, const char* k) {
    if (!j.is_object() || !j.contains(k)) throw ProofFormatError(std::string("missing field '") + k + "'");
    return j[k];
}

std::string text_field(const json& j, const char* k) {
    const json& x = field(j, k);
    if (!x.is_string()) throw ProofFormatError(std::string("field '") + k + "' must be a string");
    return x.get<std::string>();
}

Rule rule_field(const json& j) {
    std::string name = text_field(j, "rule");
    auto r = rule_from_name(name);
    if (!r) throw ProofFormatError("unknown rule '" + name + "'");
    return *r;
}

const json& premises_field(const json& j) {
    const json& ps = field(j, "premises");
    if (!ps.is_array()) throw ProofFormatError("premises must be an array");
    return ps;
}

LabelledDerivation labelled_from(const json& j) {
    LabelledDerivation d;
    d.conclusion = parse_labelled(text_field(j, "sequent"));
    d.rule = rule_field(j);
    d.wit = witness_from(field(j, "witness"));
    for (const json& p : premises_field(j)) d.premises.push_back(labelled_from(p));
    return d;
}

NestedDerivation nested_from(const json& j) {
    NestedDerivation d;
    d.conclusion = parse_nested(text_field(j, "sequent"));
    d.rule = rule_field(j);
    const json& h = field(j, "hole");
    if (!h.is_array()) throw ProofFormatError("hole must be an array");
    for (const json& x : h) {
        if (!x.is_number_integer()) throw ProofFormatError("hole entries must be integers");
        d.hole.push_back(x.get<int>());
    }
    d.wit = witness_from(field(j, "witness"));
    for (const json& p : premises_field(j)) d.premises.push_back(nested_from(p));
    return d;
}

template <class D>
std::string document(const std::string& calculus, const char* kind, const D& d) {
    json j;
    j["calculus"] = calculus;
    j["kind"] = kind;
    j["proof"] = node_json(d);
    return j.dump(2) + "\n";
}

}  // namespace

std::string format_proof(const std::string& calculus, const LabelledDerivation& d) {
    return document(calculus, "labelled", d);
}

std::string format_proof(const std::string& calculus, const NestedDerivation& d) {
    return document(calculus, "nested", d);
}

ProofDocument parse_proof(std::string_view text) {
    json j = json::parse(text.begin(), text.end(), nullptr, false);
    if (j.is_discarded()) throw ProofFormatError("proof file is not valid JSON");
    ProofDocument doc;
    doc.calculus = text_field(j, "calculus");
    std::string kind = text_field(j, "kind");
    if (kind == "labelled") doc.proof = labelled_from(field(j, "proof"));
    else if (kind == "nested") doc.proof = nested_from(field(j, "proof"));
    else throw ProofFormatError("kind must be 'labelled' or 'nested'");
    return doc;
}

}  // namespace intuit
