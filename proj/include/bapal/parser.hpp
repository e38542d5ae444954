#pragma once

#include <cctype>
#include <stdexcept>
#include <string>
#include <vector>

#include "bapal/formula.hpp"

namespace bapal {

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " at position " + std::to_string(pos)),
        position(pos) {}
  std::size_t position;
};

namespace detail {

enum class Tok {
  Ident, KwT, KwF, KwK, KwKhat, KwA, KwE,
  Not, And, Or, Imp, Iff,
  LParen, RParen, LBracket, RBracket, LAngle, RAngle,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

inline std::vector<Token> tokenize(const std::string& src) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto push = [&](Tok k, std::size_t pos, std::string text = "") {
    out.push_back({k, std::move(text), pos});
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    switch (c) {
      case '~': push(Tok::Not, start); ++i; continue;
      case '&': push(Tok::And, start); ++i; continue;
      case '|': push(Tok::Or, start); ++i; continue;
      case '(': push(Tok::LParen, start); ++i; continue;
      case ')': push(Tok::RParen, start); ++i; continue;
      case '[': push(Tok::LBracket, start); ++i; continue;
      case ']': push(Tok::RBracket, start); ++i; continue;
      case '>': push(Tok::RAngle, start); ++i; continue;
      case '-':
        if (i + 1 < src.size() && src[i + 1] == '>') {
          push(Tok::Imp, start);
          i += 2;
          continue;
        }
        throw ParseError("unknown token '-'", start);
      case '<':
        if (i + 2 < src.size() && src[i + 1] == '-' && src[i + 2] == '>') {
          push(Tok::Iff, start);
          i += 3;
          continue;
        }
        push(Tok::LAngle, start);
        ++i;
        continue;
      default:
        break;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) ||
              src[j] == '_'))
        ++j;
      std::string word = src.substr(i, j - i);
      i = j;
      if (word == "T") push(Tok::KwT, start);
      else if (word == "F") push(Tok::KwF, start);
      else if (word == "K") push(Tok::KwK, start);
      else if (word == "Khat") push(Tok::KwKhat, start);
      else if (word == "A") push(Tok::KwA, start);
      else if (word == "E") push(Tok::KwE, start);
      else if (std::islower(static_cast<unsigned char>(word[0])))
        push(Tok::Ident, start, word);
      else
        throw ParseError("unknown token '" + word + "'", start);
      continue;
    }
    throw ParseError(std::string("unknown token '") + c + "'", start);
  }
  out.push_back({Tok::End, "", src.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(const std::string& src) : toks_(tokenize(src)) {}

  Formula parse() {
    Formula f = parse_iff();
    expect(Tok::End, "end of input");
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token next() { return toks_[pos_++]; }
  void expect(Tok k, const char* what) {
    if (peek().kind != k)
      throw ParseError(std::string("expected ") + what, peek().pos);
    ++pos_;
  }

  Formula parse_iff() {
    Formula f = parse_imp();
    while (peek().kind == Tok::Iff) {
      next();
      f = Formula::iff(f, parse_imp());
    }
    return f;
  }

  Formula parse_imp() {
    Formula f = parse_or();
    if (peek().kind == Tok::Imp) {
      next();
      return Formula::imp(f, parse_imp());  // right-assoc
    }
    return f;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (peek().kind == Tok::Or) {
      next();
      f = Formula::lor(f, parse_and());
    }
    return f;
  }

  Formula parse_and() {
    Formula f = parse_unary();
    while (peek().kind == Tok::And) {
      next();
      f = Formula::land(f, parse_unary());
    }
    return f;
  }

  std::string parse_agent() {
    if (peek().kind != Tok::Ident)
      throw ParseError("expected agent name", peek().pos);
    return next().text;
  }

  Formula parse_unary() {
    switch (peek().kind) {
      case Tok::Not:
        next();
        return Formula::neg(parse_unary());
      case Tok::KwK: {
        next();
        std::string a = parse_agent();
        return Formula::know(a, parse_unary());
      }
      case Tok::KwKhat: {
        next();
        std::string a = parse_agent();
        return Formula::khat(a, parse_unary());
      }
      case Tok::KwA:
        next();
        return Formula::box(parse_unary());
      case Tok::KwE:
        next();
        return Formula::dia(parse_unary());
      case Tok::LBracket: {
        next();
        Formula content = parse_iff();
        expect(Tok::RBracket, "']'");
        return Formula::announce(content, parse_unary());
      }
      case Tok::LAngle: {
        next();
        Formula content = parse_iff();
        expect(Tok::RAngle, "'>'");
        return Formula::dia_announce(content, parse_unary());
      }
      default:
        return parse_primary();
    }
  }

  Formula parse_primary() {
    switch (peek().kind) {
      case Tok::Ident:
        return Formula::atom(next().text);
      case Tok::KwT:
        next();
        return Formula::top();
      case Tok::KwF:
        next();
        return Formula::bot();
      case Tok::LParen: {
        next();
        Formula f = parse_iff();
        expect(Tok::RParen, "')'");
        return f;
      }
      default:
        throw ParseError("expected formula", peek().pos);
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Formula parse_formula(const std::string& text) {
  return detail::Parser(text).parse();
}

namespace detail {

inline void render_rec(const Formula& f, std::string& out);

// Parenthesize conjunctions when they appear as an operand.
inline void render_sub(const Formula& f, std::string& out) {
  if (f.kind() == Kind::And) {
    out += '(';
    render_rec(f, out);
    out += ')';
  } else {
    render_rec(f, out);
  }
}

inline void render_rec(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Kind::Top:
      out += 'T';
      return;
    case Kind::Atom:
      out += f.name();
      return;
    case Kind::Neg:
      if (f.child().kind() == Kind::Top) {
        out += 'F';
        return;
      }
      out += '~';
      render_sub(f.child(), out);
      return;
    case Kind::And:
      render_sub(f.left(), out);
      out += " & ";
      render_sub(f.right(), out);
      return;
    case Kind::Know:
      out += "K ";
      out += f.name();
      out += ' ';
      render_sub(f.child(), out);
      return;
    case Kind::Announce:
      out += '[';
      render_rec(f.left(), out);
      out += "] ";
      render_sub(f.right(), out);
      return;
    case Kind::Box:
      out += "A ";
      render_sub(f.child(), out);
      return;
  }
}

}  // namespace detail

/// Prints using primitive syntax only; parse_formula(render(f)) == f.
inline std::string render(const Formula& f) {
  std::string out;
  detail::render_rec(f, out);
  return out;
}

}  // namespace bapal
