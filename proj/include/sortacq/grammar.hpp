#pragma once

#include "sortacq/sort_term.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sortacq {

enum class Category { Noun, Verb, Adj, Adv, Prep, Det, Name, Number, Tool };

std::string_view category_name(Category c);
std::optional<Category> parse_lex_category(std::string_view s);

struct LexEntry {
  std::string word;
  Category category = Category::Noun;
  std::string predicate;
  std::optional<SortTerm> inherent;
  /// Aspect constant emitted with a `has_aspect` predication (verbs only).
  std::optional<std::string> aspect;
};

class Lexicon {
public:
  /// `lex(word, category, predicate).`, `lex(word, category, predicate, Sort).`
  /// and `aspect(word, constant).` clauses.
  static Lexicon parse(std::string_view text);
  static Lexicon load(const std::string& path);

  explicit Lexicon(std::vector<LexEntry> entries = {});

  const std::vector<LexEntry>& entries() const noexcept { return entries_; }
  /// Entries for a (lower-case) word, in file order.
  std::vector<const LexEntry*> lookup(std::string_view word) const;

private:
  std::vector<LexEntry> entries_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> by_word_;
};

/// Constant name → inherent sort, for `name`-category lexical entries.
using NameSortTable = std::map<std::string, SortTerm>;

/// `name('NASHVILLE', [city]).` clauses. Duplicate names are rejected.
NameSortTable parse_name_sorts(std::string_view text);
NameSortTable load_name_sorts(const std::string& path);

enum class SemOp { HeadOnly, Connect, Quantify, NounNoun, Fragment };

struct GrammarRule {
  std::string lhs;
  std::vector<std::string> rhs;  // one or two category symbols
  SemOp op = SemOp::HeadOnly;
  /// Connector / fragment wrapper predicate. For Connect, `rel` takes the
  /// predicate from the preposition inside the dependent constituent.
  std::string predicate;
  /// 1-based rhs positions. HeadOnly: first = head. Connect: first and second
  /// argument of the connector. Quantify: first = determiner (0 = implicit),
  /// second = head.
  int first = 0;
  int second = 0;
};

/// Reserved connector name: use the preposition's own predicate.
inline constexpr std::string_view kRelConnector = "rel";

struct Grammar {
  std::string start = "utt";
  std::string implicit_determiner = "some";
  std::vector<GrammarRule> rules;

  /// `rule(lhs, [rhs...], op).`, plus optional `start(cat).` and
  /// `implicit_determiner(name).` clauses.
  static Grammar parse(std::string_view text);
  static Grammar load(const std::string& path);

  /// Predicates introduced by semantic rules (connect, nn_rel, fragment).
  std::vector<std::string> connector_predicates() const;
  std::vector<std::string> fragment_predicates() const;
};

struct Sentence {
  int id = 0;
  std::vector<std::string> tokens;
  std::string text;
};

/// `id<TAB>sentence text` per line; `#` lines and blank lines are skipped.
/// Tokens are lower-cased; trailing `?`, `.`, `,`, `!` are dropped.
std::vector<Sentence> parse_corpus(std::string_view text);
std::vector<Sentence> load_corpus(const std::string& path);

}  // namespace sortacq
