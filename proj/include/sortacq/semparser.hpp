#pragma once

#include "sortacq/grammar.hpp"
#include "sortacq/hierarchy.hpp"
#include "sortacq/logical_form.hpp"
#include "sortacq/sort_rule.hpp"

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace sortacq {

/// Rules grouped by (predicate, arity) for licensing lookups.
class RuleIndex {
public:
  explicit RuleIndex(std::vector<SortRule> rules = {});

  const std::vector<SortRule>& rules() const noexcept { return rules_; }
  /// Rules for `predicate` with the given arity; empty when none.
  std::span<const SortRule> find(const std::string& predicate, std::size_t arity) const;

private:
  std::vector<SortRule> rules_;
  std::map<std::pair<std::string, std::size_t>, std::pair<std::size_t, std::size_t>> ranges_;
};

/// Whether every predication (other than `and`) and every constant in `lf`
/// unifies with some rule of `rules`. On failure `why` names the first
/// offending node. Independent of the parser's incremental licensing.
bool is_licensed(const LogicalForm& lf, const RuleIndex& rules, const SortHierarchy& h,
                 std::string* why = nullptr);

/// Meaning of a chart edge before it is closed into a LogicalForm.
///
///   Open:     a referent variable plus the conjuncts said about it
///             (nouns, verbs and the constituents they head).
///   Closed:   a finished argument term: constant, qterm, or proposition.
///   Relation: a preposition, with its object once the pp is built.
struct PartialSem {
  enum class Shape { Open, Closed, Relation };

  Shape shape = Shape::Open;
  std::string referent;
  std::vector<LogicalForm> conj;
  std::optional<LogicalForm> term;
  std::string relation;
  /// Current sort of every referent variable introduced so far.
  std::map<std::string, SortTerm> env;
  int fragments = 0;

  /// Identity used for chart packing: shape, content and variable sorts.
  std::string key() const;
};

/// PLF preference: fewer fragment wrappers, then fewer predications, then
/// shallower connector predications, then canonical text.
struct Score {
  int fragments = 0;
  int predications = 0;
  int depth_sum = 0;
  std::string serialization;

  friend auto operator<=>(const Score&, const Score&) = default;
};

struct Analysis {
  LogicalForm lf;
  Score score;
};

struct ParseResult {
  int sentence_id = 0;
  /// Distinct analyses in canonical-serialization order.
  std::vector<Analysis> analyses;
  std::size_t plf_index = 0;
  /// Set when the sentence produced no analysis.
  std::optional<std::string> failure;

  bool ok() const noexcept { return !failure && !analyses.empty(); }
  const Analysis& plf() const { return analyses.at(plf_index); }
};

/// Index of the minimal score. Throws std::invalid_argument on an empty list.
std::size_t select_plf(std::span<const Analysis> analyses);

struct ParserLimits {
  std::size_t max_edges_per_cell = 20000;
  std::size_t max_fragment_covers = 64;
};

/// Bottom-up chart parser over unary and binary grammar rules. Each built
/// predication must unify with some rule of the active set; the unified
/// sorts replace the argument sorts, and an edge with no licensing rule is
/// dropped. The grammar, lexicon and hierarchy must outlive the parser.
class SemParser {
public:
  SemParser(const Grammar& grammar, const Lexicon& lexicon, std::vector<SortRule> rules,
            const SortHierarchy& h, ParserLimits limits = {});

  ParseResult parse(const Sentence& sentence) const;

  /// Parses every sentence; OpenMP over sentences, results in input order.
  std::vector<ParseResult> parse_corpus(const std::vector<Sentence>& corpus) const;
  std::vector<ParseResult> parse_corpus_serial(const std::vector<Sentence>& corpus) const;

  Score score(const LogicalForm& lf) const;

  // Composition primitives, shared by the chart and by exhaustive
  // derivation enumeration in tests.

  /// Meanings of a word's lexical entry at token position `index`.
  std::vector<PartialSem> lexical(const LexEntry& entry, int index) const;
  /// Meanings built by `rule` over child meanings (one per rhs symbol).
  std::vector<PartialSem> apply(const GrammarRule& rule, std::span<const PartialSem* const> children) const;
  /// Closes a meaning into a canonical, licensed LF; nullopt when it cannot
  /// stand alone or fails the final licensing check.
  std::optional<LogicalForm> finalize(const PartialSem& sem) const;
  /// Joins fragment meanings into one `[and, F1, ..., Fk]` meaning.
  PartialSem combine_fragments(std::span<const PartialSem* const> parts) const;

  const Grammar& grammar() const noexcept { return *grammar_; }
  const Lexicon& lexicon() const noexcept { return *lexicon_; }
  const RuleIndex& rules() const noexcept { return rules_; }
  const SortHierarchy& hierarchy() const noexcept { return *h_; }
  const std::set<std::string>& connector_predicates() const noexcept { return connectors_; }
  const std::set<std::string>& fragment_categories() const noexcept { return fragment_cats_; }

private:
  struct Licensed {
    std::map<std::string, SortTerm> env;
    LogicalForm predication;
  };

  std::vector<Licensed> license(const std::string& predicate, std::vector<LogicalForm> args,
                                const std::map<std::string, SortTerm>& env) const;
  std::vector<LogicalForm> license_constant(const std::string& name) const;
  std::optional<SortTerm> arg_sort(const LogicalForm& arg, const std::map<std::string, SortTerm>& env) const;

  std::vector<PartialSem> connect(const GrammarRule& rule, std::span<const PartialSem* const> children) const;
  std::vector<PartialSem> connect_relation(const GrammarRule& rule,
                                           std::span<const PartialSem* const> children) const;
  std::vector<PartialSem> quantify(const GrammarRule& rule, std::span<const PartialSem* const> children) const;
  std::vector<PartialSem> noun_noun(const GrammarRule& rule, std::span<const PartialSem* const> children) const;
  std::vector<PartialSem> fragment(const GrammarRule& rule, std::span<const PartialSem* const> children) const;

  const Grammar* grammar_;
  const Lexicon* lexicon_;
  RuleIndex rules_;
  const SortHierarchy* h_;
  ParserLimits limits_;
  std::set<std::string> connectors_;
  std::set<std::string> fragment_preds_;
  std::set<std::string> fragment_cats_;
};

}  // namespace sortacq
