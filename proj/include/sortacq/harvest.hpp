#pragma once

#include "sortacq/logical_form.hpp"
#include "sortacq/semparser.hpp"
#include "sortacq/sort_rule.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace sortacq {

using Rational = boost::multiprecision::cpp_rational;

/// Predicates never harvested.
struct ExclusionList {
  std::set<std::string> predicates;

  /// {and, equal, exists, has_aspect, qterm, the}.
  static ExclusionList defaults();
  /// `exclude(name).` clauses.
  static ExclusionList parse(std::string_view text);
  static ExclusionList load(const std::string& path);

  bool contains(const std::string& p) const { return predicates.contains(p); }
};

struct ExtractOptions {
  ExclusionList excluded = ExclusionList::defaults();
  /// Also emit zero-arity rules for constants. Off by default: only rules
  /// with at least one argument are harvested.
  bool include_constants = false;
};

/// Depth-first list of rule instances, one per non-excluded predication (and
/// per non-excluded constant when enabled). Excluded predications are not
/// emitted but their arguments are still explored. Throws DataError naming
/// the path of an unannotated node.
std::vector<SortRule> extract_rules(const LogicalForm& lf, const ExtractOptions& options = {});

enum class HarvestMode { LFs, PLFs };

std::string_view mode_name(HarvestMode m);
std::optional<HarvestMode> parse_mode(std::string_view s);

enum class ProbFamily { Global, GivenPred, GivenPredArg1 };

std::string_view family_name(ProbFamily f);
/// Accepts `global`, `pred`, `arg1`.
std::optional<ProbFamily> parse_family(std::string_view s);

struct RuleStats {
  SortRule rule;
  long invocations = 0;
  long lf_count = 0;
  Rational theta_bar{0};
  Rational p_global{0};
  Rational p_given_pred{0};
  Rational p_given_pred_arg1{0};
  std::vector<int> sample_sentences;

  const Rational& probability(ProbFamily f) const;
  friend bool operator==(const RuleStats&, const RuleStats&) = default;
};

/// Conditioning class of the first-argument probability: predicate plus the
/// canonical first-argument sort (just the predicate for zero-arity rules).
std::string arg1_class(const SortRule& r);

/// Tallies Θ, LF counts and sample sentence ids over parse results (OpenMP
/// over results; per-thread tallies merged). Rules containing variables are
/// skipped. Output is ordered by predicate, arity, then rule text.
std::vector<RuleStats> harvest_corpus(const std::vector<ParseResult>& results, HarvestMode mode,
                                      const ExtractOptions& options = {}, std::size_t sample_cap = 5);
std::vector<RuleStats> harvest_corpus_serial(const std::vector<ParseResult>& results, HarvestMode mode,
                                             const ExtractOptions& options = {}, std::size_t sample_cap = 5);

/// Fills the three probability families from theta_bar.
std::vector<RuleStats> compute_probabilities(std::vector<RuleStats> stats);

/// Rounded to six decimals, e.g. "0.250000".
std::string format_decimal(const Rational& r, int digits = 6);
/// Exact value of a decimal literal such as "0.25" or "3".
Rational parse_decimal(std::string_view text);

/// Rule line followed by a `%% theta=...` metadata line per rule.
std::string serialize_harvest(const std::vector<RuleStats>& stats);
/// Reads a harvest file; rules without a metadata line get zero stats.
std::vector<RuleStats> parse_harvest(std::string_view text);
std::vector<RuleStats> load_harvest(const std::string& path);

}  // namespace sortacq
