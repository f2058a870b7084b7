#include "ltlf/formula.hpp"

#include <cctype>

namespace ltlf {

namespace {

enum class Tok { End, LParen, RParen, Bang, AndOp, OrOp, Word };

struct Lexer {
  const std::string &text;
  size_t pos = 0;
  Tok tok = Tok::End;
  std::string word;
  size_t tok_pos = 0;

  explicit Lexer(const std::string &t) : text(t) { advance(); }

  void advance() {
    while (pos < text.size() && std::isspace((unsigned char)text[pos]))
      ++pos;
    tok_pos = pos;
    if (pos >= text.size()) {
      tok = Tok::End;
      return;
    }
    char c = text[pos];
    switch (c) {
    case '(':
      tok = Tok::LParen;
      ++pos;
      return;
    case ')':
      tok = Tok::RParen;
      ++pos;
      return;
    case '!':
      tok = Tok::Bang;
      ++pos;
      return;
    case '&':
      tok = Tok::AndOp;
      ++pos;
      return;
    case '|':
      tok = Tok::OrOp;
      ++pos;
      return;
    default:
      break;
    }
    if (std::isalpha((unsigned char)c) || c == '_') {
      size_t start = pos;
      while (pos < text.size() &&
             (std::isalnum((unsigned char)text[pos]) || text[pos] == '_'))
        ++pos;
      word = text.substr(start, pos - start);
      tok = Tok::Word;
      return;
    }
    throw parse_error(std::string("unexpected character '") + c + "'", pos);
  }

  bool word_is(const char *s) const { return tok == Tok::Word && word == s; }
};

struct Parser {
  Lexer lex;
  const PropositionSet &props;

  Parser(const std::string &t, const PropositionSet &p) : lex(t), props(p) {}

  Formula parse_or() {
    Formula f = parse_and();
    while (lex.tok == Tok::OrOp) {
      lex.advance();
      f = Formula::make_or(f, parse_and());
    }
    return f;
  }

  Formula parse_and() {
    Formula f = parse_until();
    while (lex.tok == Tok::AndOp) {
      lex.advance();
      f = Formula::make_and(f, parse_until());
    }
    return f;
  }

  /* U, W and R share one level and associate to the right. */
  Formula parse_until() {
    Formula f = parse_unary();
    if (lex.word_is("U")) {
      lex.advance();
      return Formula::until(f, parse_until());
    }
    if (lex.word_is("W")) {
      lex.advance();
      return Formula::weak_until(f, parse_until());
    }
    if (lex.word_is("R")) {
      lex.advance();
      return Formula::release(f, parse_until());
    }
    return f;
  }

  Formula parse_unary() {
    if (lex.tok == Tok::Bang) {
      lex.advance();
      return Formula::make_not(parse_unary());
    }
    if (lex.word_is("X")) {
      lex.advance();
      return Formula::next(parse_unary());
    }
    if (lex.word_is("WX")) {
      lex.advance();
      return Formula::weak_next(parse_unary());
    }
    if (lex.word_is("F")) {
      lex.advance();
      return Formula::eventually(parse_unary());
    }
    if (lex.word_is("G")) {
      lex.advance();
      return Formula::globally(parse_unary());
    }
    return parse_atom();
  }

  Formula parse_atom() {
    if (lex.tok == Tok::LParen) {
      lex.advance();
      Formula f = parse_or();
      if (lex.tok != Tok::RParen)
        throw parse_error("expected ')'", lex.tok_pos);
      lex.advance();
      return f;
    }
    if (lex.tok == Tok::Word) {
      std::string w = lex.word;
      size_t at = lex.tok_pos;
      if (w == "true") {
        lex.advance();
        return Formula::tt();
      }
      if (w == "false") {
        lex.advance();
        return Formula::ff();
      }
      if (w == "U" || w == "W" || w == "R" || w == "X" || w == "WX" ||
          w == "F" || w == "G")
        throw parse_error("operator '" + w + "' needs an operand", at);
      int idx = props.index_of(w);
      if (idx < 0)
        throw parse_error("unknown proposition '" + w + "'", at);
      lex.advance();
      return Formula::prop(idx, w);
    }
    throw parse_error("expected a formula", lex.tok_pos);
  }
};

} // namespace

Formula parse(const std::string &text, const PropositionSet &props) {
  Parser p(text, props);
  Formula f = p.parse_or();
  if (p.lex.tok != Tok::End)
    throw parse_error("trailing input", p.lex.tok_pos);
  return f;
}

} // namespace ltlf
