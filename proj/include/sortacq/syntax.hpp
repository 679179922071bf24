#pragma once

// Tokenizer and generic term reader for the clause-style files used
// throughout the toolkit (hierarchy, rule, grammar, lexicon files).

#include <string>
#include <string_view>
#include <vector>

namespace sortacq::syntax {

enum class TokenKind { Name, Var, Int, LParen, RParen, LBrack, RBrack, Comma, Semi, Dot, End };

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  bool quoted = false;
  int line = 1;
  int column = 1;
};

/// Splits clause text into tokens. `%` starts a comment running to end of line.
/// Unquoted names are folded to lower case; quoted names keep their case.
std::vector<Token> tokenize(std::string_view text);

/// Generic term: the shape every clause file is read into before being
/// interpreted by the module that owns the format.
struct Term {
  enum class Kind { Name, Var, Int, Compound, List, Tuple };

  Kind kind = Kind::Name;
  std::string text;  // name, variable, integer digits, or compound functor
  std::vector<Term> items;
  int line = 1;
  int column = 1;

  bool is(Kind k) const noexcept { return kind == k; }
  bool is_compound(std::string_view functor, std::size_t arity) const noexcept {
    return kind == Kind::Compound && text == functor && items.size() == arity;
  }
};

/// Cursor over a token stream with the small set of helpers every reader needs.
class TokenStream {
public:
  explicit TokenStream(std::vector<Token> tokens);

  const Token& peek(std::size_t ahead = 0) const;
  const Token& next();
  bool at(TokenKind k, std::size_t ahead = 0) const { return peek(ahead).kind == k; }
  bool accept(TokenKind k);
  const Token& expect(TokenKind k, std::string_view what);
  [[noreturn]] void fail(const std::string& msg) const;

private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

/// Reads one term starting at the stream's current position.
Term read_term(TokenStream& ts);

/// Reads every `term.` clause in `text`.
std::vector<Term> read_clauses(std::string_view text);

/// Prints a predicate or sort name, quoting it when it would not read back
/// as the same bare name.
std::string quote_name(std::string_view name);

/// True when `name` reads back as a bare (unquoted) name or integer.
bool is_bare_name(std::string_view name);

std::string read_file(const std::string& path);

}  // namespace sortacq::syntax
