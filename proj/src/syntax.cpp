#include "sortacq/syntax.hpp"

#include "sortacq/errors.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace sortacq::syntax {

namespace {

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;

  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < text.size(); ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };

  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '%') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    Token tok;
    tok.line = line;
    tok.column = col;
    switch (c) {
      case '(': tok.kind = TokenKind::LParen; advance(1); out.push_back(tok); continue;
      case ')': tok.kind = TokenKind::RParen; advance(1); out.push_back(tok); continue;
      case '[': tok.kind = TokenKind::LBrack; advance(1); out.push_back(tok); continue;
      case ']': tok.kind = TokenKind::RBrack; advance(1); out.push_back(tok); continue;
      case ',': tok.kind = TokenKind::Comma; advance(1); out.push_back(tok); continue;
      case ';': tok.kind = TokenKind::Semi; advance(1); out.push_back(tok); continue;
      case '.': tok.kind = TokenKind::Dot; advance(1); out.push_back(tok); continue;
      default: break;
    }
    if (c == '\'') {
      advance(1);
      std::string s;
      bool closed = false;
      while (i < text.size()) {
        char d = text[i];
        if (d == '\\' && i + 1 < text.size()) {
          s.push_back(text[i + 1]);
          advance(2);
          continue;
        }
        if (d == '\'') {
          if (i + 1 < text.size() && text[i + 1] == '\'') {
            s.push_back('\'');
            advance(2);
            continue;
          }
          advance(1);
          closed = true;
          break;
        }
        if (d == '\n') break;
        s.push_back(d);
        advance(1);
      }
      if (!closed) throw SyntaxError("unterminated quoted name", tok.line, tok.column);
      tok.kind = TokenKind::Name;
      tok.text = std::move(s);
      tok.quoted = true;
      out.push_back(tok);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j < text.size() && is_ident_char(text[j])) {
        throw SyntaxError("malformed number", tok.line, tok.column);
      }
      tok.kind = TokenKind::Int;
      tok.text = std::string(text.substr(i, j - i));
      advance(j - i);
      out.push_back(tok);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() && is_ident_char(text[j])) ++j;
      std::string word(text.substr(i, j - i));
      if (std::isupper(static_cast<unsigned char>(c)) || c == '_') {
        tok.kind = TokenKind::Var;
        tok.text = std::move(word);
      } else {
        tok.kind = TokenKind::Name;
        for (auto& ch : word) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
        tok.text = std::move(word);
      }
      advance(j - i);
      out.push_back(tok);
      continue;
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'", line, col);
  }
  Token end;
  end.kind = TokenKind::End;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

TokenStream::TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {
  if (tokens_.empty() || tokens_.back().kind != TokenKind::End) {
    tokens_.push_back(Token{});
  }
}

const Token& TokenStream::peek(std::size_t ahead) const {
  std::size_t p = pos_ + ahead;
  return p < tokens_.size() ? tokens_[p] : tokens_.back();
}

const Token& TokenStream::next() {
  const Token& t = peek();
  if (pos_ < tokens_.size() - 1) ++pos_;
  return t;
}

bool TokenStream::accept(TokenKind k) {
  if (!at(k)) return false;
  next();
  return true;
}

const Token& TokenStream::expect(TokenKind k, std::string_view what) {
  if (!at(k)) fail("expected " + std::string(what));
  return next();
}

void TokenStream::fail(const std::string& msg) const {
  const Token& t = peek();
  throw SyntaxError(msg, t.line, t.column);
}

namespace {

std::vector<Term> read_sequence(TokenStream& ts, TokenKind close, std::string_view close_name) {
  std::vector<Term> items;
  if (ts.accept(close)) return items;
  items.push_back(read_term(ts));
  while (ts.accept(TokenKind::Comma)) items.push_back(read_term(ts));
  ts.expect(close, close_name);
  return items;
}

}  // namespace

Term read_term(TokenStream& ts) {
  const Token& t = ts.peek();
  Term term;
  term.line = t.line;
  term.column = t.column;
  switch (t.kind) {
    case TokenKind::Name: {
      term.text = ts.next().text;
      if (ts.at(TokenKind::LParen)) {
        ts.next();
        term.kind = Term::Kind::Compound;
        term.items = read_sequence(ts, TokenKind::RParen, "')'");
        if (term.items.empty()) ts.fail("empty argument list");
      } else {
        term.kind = Term::Kind::Name;
      }
      return term;
    }
    case TokenKind::Var:
      term.kind = Term::Kind::Var;
      term.text = ts.next().text;
      return term;
    case TokenKind::Int:
      term.kind = Term::Kind::Int;
      term.text = ts.next().text;
      return term;
    case TokenKind::LBrack:
      ts.next();
      term.kind = Term::Kind::List;
      term.items = read_sequence(ts, TokenKind::RBrack, "']'");
      return term;
    case TokenKind::LParen:
      ts.next();
      term.kind = Term::Kind::Tuple;
      term.items = read_sequence(ts, TokenKind::RParen, "')'");
      if (term.items.empty()) ts.fail("empty parentheses");
      return term;
    default:
      ts.fail("expected a term");
  }
}

std::vector<Term> read_clauses(std::string_view text) {
  TokenStream ts(tokenize(text));
  std::vector<Term> clauses;
  while (!ts.at(TokenKind::End)) {
    clauses.push_back(read_term(ts));
    ts.expect(TokenKind::Dot, "'.' at end of clause");
  }
  return clauses;
}

bool is_bare_name(std::string_view name) {
  if (name.empty()) return false;
  bool all_digits = true;
  for (char c : name) {
    if (!std::isdigit(static_cast<unsigned char>(c))) all_digits = false;
  }
  if (all_digits) return true;
  if (!std::islower(static_cast<unsigned char>(name.front()))) return false;
  for (char c : name) {
    if (!is_ident_char(c) || std::isupper(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::string quote_name(std::string_view name) {
  if (is_bare_name(name)) return std::string(name);
  std::string out = "'";
  for (char c : name) {
    if (c == '\'' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('\'');
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace sortacq::syntax
