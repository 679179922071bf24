#pragma once

#include "sortacq/grammar.hpp"
#include "sortacq/hierarchy.hpp"
#include "sortacq/sort_rule.hpp"

#include <map>
#include <string>
#include <vector>

namespace sortacq {

/// A predicate introduced by a semantic rule rather than a word.
struct ConnectorSpec {
  std::string predicate;
  std::size_t arity = 2;
};

/// Connectors of a grammar: binary for connect/nn_rel, unary for fragment
/// wrappers. `rel` is not a predicate and is skipped.
std::vector<ConnectorSpec> grammar_connectors(const Grammar& g);

/// Signatures in generation order, each tagged with where it came from:
/// a lexical category name, "connector", or "hand".
struct SignatureSet {
  std::vector<SortRule> rules;
  std::vector<std::string> origins;
};

/// Builds the initial signature set. Entries without an inherent sort get a
/// fresh `lex_<predicate>` sort added under `top` of `h`. `hand` rules are
/// merged last; identical duplicates collapse, conflicting ones are errors.
SignatureSet generate_signatures(const Lexicon& lexicon, const NameSortTable& names,
                                 const std::vector<ConnectorSpec>& connectors, SortHierarchy& h,
                                 const std::vector<SortRule>& hand = {});

struct SignatureStats {
  std::size_t total = 0;
  std::size_t zero_arity = 0;
  std::size_t hand_added = 0;
  std::map<std::size_t, std::size_t> by_arity;
  std::map<std::string, std::size_t> by_origin;

  double zero_arity_fraction() const { return total ? double(zero_arity) / double(total) : 0.0; }
  friend bool operator==(const SignatureStats&, const SignatureStats&) = default;
};

SignatureStats signature_stats(const SignatureSet& set);
/// Stats for rules read back from a file, where origins are unknown.
SignatureStats signature_stats(const std::vector<SortRule>& rules);

/// `key value` lines, one count per line, in a fixed order.
std::string format_stats(const SignatureStats& s);

}  // namespace sortacq
