#include "intuit/labelled.hpp"

#include "lexer.hpp"

#include <algorithm>
#include <map>

namespace intuit {

LabelledSequent LabelledSequent::canonical() const {
    LabelledSequent c = *this;
    std::sort(c.rel.begin(), c.rel.end());
    std::sort(c.dom.begin(), c.dom.end());
    std::sort(c.ante.begin(), c.ante.end());
    std::sort(c.succ.begin(), c.succ.end());
    return c;
}

bool LabelledSequent::operator==(const LabelledSequent& o) const {
    if (rel.size() != o.rel.size() || dom.size() != o.dom.size() || ante.size() != o.ante.size() ||
        succ.size() != o.succ.size())
        return false;
    LabelledSequent a = canonical(), b = o.canonical();
    return a.rel == b.rel && a.dom == b.dom && a.ante == b.ante && a.succ == b.succ;
}

std::set<std::string> LabelledSequent::labels() const {
    std::set<std::string> out;
    for (const RelAtom& r : rel) {
        out.insert(r.from);
        out.insert(r.to);
    }
    for (const DomAtom& d : dom) out.insert(d.label);
    for (const LFormula& x : ante) out.insert(x.label);
    for (const LFormula& x : succ) out.insert(x.label);
    return out;
}

std::set<std::string> LabelledSequent::params() const {
    std::set<std::string> out;
    for (const DomAtom& d : dom) out.insert(d.param);
    for (const auto* side : {&ante, &succ})
        for (const LFormula& x : *side)
            for (const std::string& a : params_of(x.f)) out.insert(a);
    return out;
}

bool LabelledSequent::mentions_label(const std::string& w) const {
    for (const RelAtom& r : rel)
        if (r.from == w || r.to == w) return true;
    for (const DomAtom& d : dom)
        if (d.label == w) return true;
    for (const auto* side : {&ante, &succ})
        for (const LFormula& x : *side)
            if (x.label == w) return true;
    return false;
}

bool LabelledSequent::mentions_param(const std::string& a) const {
    for (const DomAtom& d : dom)
        if (d.param == a) return true;
    for (const auto* side : {&ante, &succ})
        for (const LFormula& x : *side)
            if (occurs_param(x.f, a)) return true;
    return false;
}

bool LabelledSequent::has_rel(const std::string& w, const std::string& v) const {
    return std::find(rel.begin(), rel.end(), RelAtom{w, v}) != rel.end();
}

bool LabelledSequent::has_dom(const std::string& a, const std::string& w) const {
    return std::find(dom.begin(), dom.end(), DomAtom{a, w}) != dom.end();
}

bool LabelledSequent::has_ante(const std::string& w, const Formula& f) const {
    return std::find(ante.begin(), ante.end(), LFormula{w, f}) != ante.end();
}

bool LabelledSequent::has_succ(const std::string& w, const Formula& f) const {
    return std::find(succ.begin(), succ.end(), LFormula{w, f}) != succ.end();
}

std::string LabelledSequent::str() const {
    std::vector<std::string> left, right;
    for (const RelAtom& r : rel) left.push_back(r.from + "<=" + r.to);
    for (const DomAtom& d : dom) left.push_back(d.param + " in D(" + d.label + ")");
    for (const LFormula& x : ante) left.push_back(x.label + ": " + x.f.str());
    for (const LFormula& x : succ) right.push_back(x.label + ": " + x.f.str());
    auto join = [](const std::vector<std::string>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) s += ", ";
            s += v[i];
        }
        return s;
    };
    std::string out = join(left);
    out += out.empty() ? "=>" : " =>";
    if (!right.empty()) out += " " + join(right);
    return out;
}

LabelledSequent parse_labelled(std::string_view text) {
    detail::Parser p(text);
    LabelledSequent s;
    auto item = [&](bool left) {
        const detail::Token& t = p.peek();
        const detail::Token& t1 = p.peek(1);
        if (left && t.kind == detail::Tok::Ident && t1.kind == detail::Tok::Leq) {
            std::string w = p.next().text;
            p.next();
            s.rel.push_back({w, p.expect(detail::Tok::Ident, "label").text});
            return;
        }
        if (left && (t.kind == detail::Tok::Ident || t.kind == detail::Tok::Param) &&
            t1.kind == detail::Tok::Ident && t1.text == "in") {
            std::string a = p.next().text;
            p.next();
            detail::Token d = p.expect(detail::Tok::Ident, "'D'");
            if (d.text != "D") p.fail("expected 'D'");
            p.expect(detail::Tok::LParen, "'('");
            std::string w = p.expect(detail::Tok::Ident, "label").text;
            p.expect(detail::Tok::RParen, "')'");
            s.dom.push_back({a, w});
            return;
        }
        std::string w = p.expect(detail::Tok::Ident, "label").text;
        p.expect(detail::Tok::Colon, "':'");
        Formula f = p.formula(true);
        (left ? s.ante : s.succ).push_back({w, f});
    };
    if (p.peek().kind != detail::Tok::DArrow) {
        do item(true);
        while (p.accept(detail::Tok::Comma));
    }
    p.expect(detail::Tok::DArrow, "'=>'");
    if (!p.at_end()) {
        do item(false);
        while (p.accept(detail::Tok::Comma));
    }
    if (!p.at_end()) p.fail("unexpected trailing input");
    return s;
}

bool path_exists(const std::vector<RelAtom>& rel, const std::string& from, const std::string& to) {
    if (from == to) return true;
    std::set<std::string> seen{from};
    std::vector<std::string> stack{from};
    while (!stack.empty()) {
        std::string x = stack.back();
        stack.pop_back();
        for (const RelAtom& r : rel) {
            const std::string* y = nullptr;
            if (r.from == x) y = &r.to;
            else if (r.to == x) y = &r.from;
            if (!y || seen.count(*y)) continue;
            if (*y == to) return true;
            seen.insert(*y);
            stack.push_back(*y);
        }
    }
    return false;
}

LabelledSequent substitute_label(const LabelledSequent& s, const std::string& to, const std::string& from) {
    LabelledSequent out = s;
    auto sub = [&](std::string& x) {
        if (x == from) x = to;
    };
    for (RelAtom& r : out.rel) {
        sub(r.from);
        sub(r.to);
    }
    for (DomAtom& d : out.dom) sub(d.label);
    for (LFormula& x : out.ante) sub(x.label);
    for (LFormula& x : out.succ) sub(x.label);
    return out;
}

LabelledSequent substitute_param_seq(const LabelledSequent& s, const std::string& to, const std::string& from) {
    LabelledSequent out = s;
    for (DomAtom& d : out.dom)
        if (d.param == from) d.param = to;
    for (LFormula& x : out.ante) x.f = rename_param(x.f, from, to);
    for (LFormula& x : out.succ) x.f = rename_param(x.f, from, to);
    return out;
}

std::string fresh_name(const std::string& base, const std::set<std::string>& used) {
    for (int i = 0;; ++i) {
        std::string n = base + std::to_string(i);
        if (!used.count(n)) return n;
    }
}

LabelledSequent seq_union(const LabelledSequent& a, const LabelledSequent& b) {
    LabelledSequent out = a;
    out.rel.insert(out.rel.end(), b.rel.begin(), b.rel.end());
    out.dom.insert(out.dom.end(), b.dom.begin(), b.dom.end());
    out.ante.insert(out.ante.end(), b.ante.begin(), b.ante.end());
    out.succ.insert(out.succ.end(), b.succ.begin(), b.succ.end());
    return out;
}

namespace {

template <class T>
bool remove_all(std::vector<T>& from, const std::vector<T>& what) {
    for (const T& x : what) {
        auto it = std::find(from.begin(), from.end(), x);
        if (it == from.end()) return false;
        from.erase(it);
    }
    return true;
}

}  // namespace

std::optional<LabelledSequent> seq_minus(const LabelledSequent& a, const LabelledSequent& b) {
    LabelledSequent out = a;
    if (!remove_all(out.rel, b.rel) || !remove_all(out.dom, b.dom) || !remove_all(out.ante, b.ante) ||
        !remove_all(out.succ, b.succ))
        return std::nullopt;
    return out;
}

bool seq_contains(const LabelledSequent& a, const LabelledSequent& b) { return seq_minus(a, b).has_value(); }

int LabelledDerivation::height() const {
    int h = 0;
    for (const LabelledDerivation& p : premises) h = std::max(h, p.height());
    return h + 1;
}

std::size_t LabelledDerivation::size() const {
    std::size_t n = 1;
    for (const LabelledDerivation& p : premises) n += p.size();
    return n;
}

std::size_t LabelledDerivation::count(Rule r) const {
    std::size_t n = rule == r ? 1 : 0;
    for (const LabelledDerivation& p : premises) n += p.count(r);
    return n;
}

}  // namespace intuit
