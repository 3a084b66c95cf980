#include "lexer.hpp"

#include <algorithm>
#include <cctype>

namespace intuit::detail {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)); }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

}  // namespace

std::vector<Token> tokenize(std::string_view s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        auto single = [&](Tok k) {
            out.push_back({k, std::string(1, c), start});
            ++i;
        };
        if (ident_start(c)) {
            while (i < s.size() && ident_char(s[i])) ++i;
            out.push_back({Tok::Ident, std::string(s.substr(start, i - start)), start});
        } else if (c == '#') {
            ++i;
            if (i >= s.size() || !ident_start(s[i])) throw ParseError("expected parameter name after '#'", start);
            while (i < s.size() && ident_char(s[i])) ++i;
            out.push_back({Tok::Param, std::string(s.substr(start + 1, i - start - 1)), start});
        } else if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
            out.push_back({Tok::Arrow, "->", start});
            i += 2;
        } else if (c == '=' && i + 1 < s.size() && s[i + 1] == '>') {
            out.push_back({Tok::DArrow, "=>", start});
            i += 2;
        } else if (c == '<' && i + 1 < s.size() && s[i + 1] == '=') {
            out.push_back({Tok::Leq, "<=", start});
            i += 2;
        } else {
            switch (c) {
                case '(': single(Tok::LParen); break;
                case ')': single(Tok::RParen); break;
                case '[': single(Tok::LBrack); break;
                case ']': single(Tok::RBrack); break;
                case ',': single(Tok::Comma); break;
                case '.': single(Tok::Dot); break;
                case ':': single(Tok::Colon); break;
                case '~': single(Tok::Tilde); break;
                case '&': single(Tok::Amp); break;
                case '|': single(Tok::Bar); break;
                case '@': single(Tok::At); break;
                default: throw ParseError(std::string("unexpected character '") + c + "'", start);
            }
        }
    }
    out.push_back({Tok::End, "", s.size()});
    return out;
}

const Token& Parser::peek(std::size_t k) const { return toks_[std::min(i_ + k, toks_.size() - 1)]; }

Token Parser::next() {
    Token t = peek();
    if (i_ < toks_.size() - 1) ++i_;
    return t;
}

bool Parser::accept(Tok k) {
    if (peek().kind != k) return false;
    next();
    return true;
}

Token Parser::expect(Tok k, const char* what) {
    if (peek().kind != k) fail(std::string("expected ") + what);
    return next();
}

void Parser::fail(const std::string& msg) const { throw ParseError(msg, peek().pos); }

Formula Parser::formula(bool allow_top_impl) { return impl(allow_top_impl); }

Formula Parser::impl(bool allow) {
    Formula l = disj(allow);
    if (allow && accept(Tok::Arrow)) return Formula::impl(l, impl(allow));
    return l;
}

Formula Parser::disj(bool allow) {
    Formula l = conj(allow);
    while (accept(Tok::Bar)) l = Formula::disj(l, conj(allow));
    return l;
}

Formula Parser::conj(bool allow) {
    Formula l = unary(allow);
    while (accept(Tok::Amp)) l = Formula::conj(l, unary(allow));
    return l;
}

Formula Parser::unary(bool allow) {
    const Token& t = peek();
    if (t.kind == Tok::Tilde) {
        next();
        return Formula::neg(unary(allow));
    }
    if (t.kind == Tok::LParen) {
        next();
        Formula f = impl(true);
        expect(Tok::RParen, "')'");
        return f;
    }
    if (t.kind == Tok::Ident && (t.text == "forall" || t.text == "exists")) {
        bool all = t.text == "forall";
        next();
        Token v = expect(Tok::Ident, "bound variable");
        expect(Tok::Dot, "'.' after bound variable");
        bound_.push_back(v.text);
        Formula body = impl(allow);
        bound_.pop_back();
        return all ? Formula::forall(v.text, body) : Formula::exists(v.text, body);
    }
    if (t.kind == Tok::Ident && t.text == "false") {
        next();
        return Formula::bot();
    }
    return atom();
}

Formula Parser::atom() {
    const Token& t = peek();
    if (t.kind != Tok::Ident || !std::islower(static_cast<unsigned char>(t.text[0])))
        fail("expected formula");
    std::string name = next().text;
    std::vector<Term> args;
    if (accept(Tok::LParen)) {
        do {
            const Token& a = peek();
            if (a.kind == Tok::Param) {
                args.push_back(Term::param(next().text));
            } else if (a.kind == Tok::Ident) {
                if (std::find(bound_.begin(), bound_.end(), a.text) == bound_.end())
                    fail("unbound variable '" + a.text + "'");
                args.push_back(Term::var(next().text));
            } else {
                fail("expected term");
            }
        } while (accept(Tok::Comma));
        expect(Tok::RParen, "')'");
    }
    return Formula::atom(std::move(name), std::move(args));
}

namespace {

// A quantifier printed at the end of the string swallows a following `->`.
bool quantifier_on_right_spine(const Formula& f) {
    switch (f.kind()) {
        case Kind::Forall:
        case Kind::Exists: return true;
        case Kind::Neg: return quantifier_on_right_spine(f.left());
        case Kind::And:
        case Kind::Or: return quantifier_on_right_spine(f.right());
        default: return false;
    }
}

bool needs_wrap(const Formula& f) { return f.kind() == Kind::Impl || quantifier_on_right_spine(f); }

}  // namespace

std::string str_restricted(const Formula& f) {
    return needs_wrap(f) ? "(" + f.str() + ")" : f.str();
}

}  // namespace intuit::detail

namespace intuit {

Formula parse_formula(std::string_view text) {
    detail::Parser p(text);
    Formula f = p.formula(true);
    if (!p.at_end()) p.fail("unexpected trailing input");
    return f;
}

}  // namespace intuit
