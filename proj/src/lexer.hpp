// Tokenizer and formula grammar shared by the formula, sequent, proof and
// model readers. Private to the library.
#pragma once

#include "intuit/formula.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace intuit::detail {

enum class Tok {
    Ident,    // [a-zA-Z][a-zA-Z0-9_]*
    Param,    // #ident
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
    Dot,
    Colon,
    Tilde,
    Amp,
    Bar,
    Arrow,    // ->
    DArrow,   // =>
    Leq,      // <=
    At,
    End,
};

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;
};

std::vector<Token> tokenize(std::string_view text);

class Parser {
public:
    explicit Parser(std::string_view text) : toks_(tokenize(text)) {}

    const Token& peek(std::size_t k = 0) const;
    Token next();
    bool accept(Tok k);
    Token expect(Tok k, const char* what);
    bool at_end() const { return peek().kind == Tok::End; }
    std::size_t pos() const { return peek().pos; }
    [[noreturn]] void fail(const std::string& msg) const;

    /// Full grammar. With allow_top_impl false, a top-level `->` is left
    /// unconsumed and quantifier bodies are restricted the same way; this is
    /// what nested sequent antecedents need.
    Formula formula(bool allow_top_impl = true);

private:
    Formula impl(bool allow);
    Formula disj(bool allow);
    Formula conj(bool allow);
    Formula unary(bool allow);
    Formula atom();

    std::vector<Token> toks_;
    std::size_t i_ = 0;
    std::vector<std::string> bound_;
};

/// Prints with the parenthesization `Parser::formula(false)` expects.
std::string str_restricted(const Formula& f);

}  // namespace intuit::detail
