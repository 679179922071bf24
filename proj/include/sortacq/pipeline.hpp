#pragma once

#include "sortacq/grammar.hpp"
#include "sortacq/harvest.hpp"
#include "sortacq/hierarchy.hpp"
#include "sortacq/semparser.hpp"
#include "sortacq/sort_rule.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace sortacq {

/// Writes via a temporary file in the same directory and renames it over
/// `path`, so readers never observe a partially written file.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

/// Exclusive lock on a workspace directory, held by a `.sortacq.lock` file
/// created with O_EXCL. Throws DataError when the workspace is already locked.
class WorkspaceLock {
public:
  explicit WorkspaceLock(const std::filesystem::path& dir);
  ~WorkspaceLock();
  WorkspaceLock(const WorkspaceLock&) = delete;
  WorkspaceLock& operator=(const WorkspaceLock&) = delete;

private:
  std::filesystem::path path_;
};

struct ThresholdFilter {
  ProbFamily family = ProbFamily::Global;
  Rational threshold{0};
};

/// Keeps the rules whose selected probability is >= the threshold.
std::vector<RuleStats> apply_filter(const std::vector<RuleStats>& stats, const ThresholdFilter& f);

/// Drops rules that are Incompatible with every reference rule: a stand-in
/// for the linguist's manual filtering in unattended runs.
std::vector<RuleStats> reference_filter(const std::vector<RuleStats>& stats, const std::vector<SortRule>& reference,
                                        const SortHierarchy& h);

struct RuleDiff {
  std::vector<SortRule> added;    // in b, not in a (b's order)
  std::vector<SortRule> removed;  // in a, not in b (a's order)
};

/// Set difference on alpha-equivalence keys.
RuleDiff diff_rules(const std::vector<SortRule>& a, const std::vector<SortRule>& b);
RuleDiff diff_rule_files(const std::string& a_path, const std::string& b_path);
std::string format_diff(const RuleDiff& d);

/// `id<TAB>k<TAB>f,p,d<TAB>*|-<TAB>LF` per analysis (`*` marks the PLF) and
/// `id<TAB>FAIL<TAB>message` per failed sentence.
std::string serialize_parse_results(const std::vector<ParseResult>& results);
/// Reads the format above; scores are recomputed fields as written.
std::vector<ParseResult> parse_parse_results(std::string_view text, const SortHierarchy& h);

/// Everything an iteration needs besides the active rule file.
struct Domain {
  SortHierarchy hierarchy;
  Grammar grammar;
  Lexicon lexicon;
  std::vector<Sentence> corpus;
};

struct IterationOptions {
  HarvestMode mode = HarvestMode::PLFs;
  std::optional<ThresholdFilter> filter;
  /// When set, rules Incompatible with this reference are dropped.
  std::optional<std::vector<SortRule>> reference;
  ExtractOptions extract;
  std::size_t sample_cap = 5;
  std::filesystem::path out_dir;
  bool parallel = true;
};

struct IterationState {
  int iteration = 1;
  /// Rule file used for parsing in this iteration.
  std::filesystem::path rule_file;
  /// Filled in by run_iteration.
  std::filesystem::path next_rule_file;
  std::vector<RuleStats> harvest;            // after probabilities and filtering
  std::vector<std::size_t> analysis_counts;  // per sentence, corpus order
  std::size_t parsed = 0;                    // sentences with >= 1 analysis
  /// The rule set written for the next iteration equals the one used here.
  bool converged = false;

  /// State for the following iteration, parsing with `next_rule_file`.
  IterationState next() const;
};

/// Rule set for the next iteration: kept harvested rules, plus the previous
/// file's zero-arity rules and its rules for excluded predicates (never
/// harvested, but still needed to license parses).
std::vector<SortRule> next_rule_set(const std::vector<RuleStats>& kept, const std::vector<SortRule>& previous,
                                    const ExclusionList& excluded);

/// Parses with `state.rule_file`, harvests, computes probabilities, filters,
/// and writes `parses.N.tsv`, `harvest.N.txt` and `rules.N+1.sor` to
/// `options.out_dir`. Returns the completed state for iteration N. An empty
/// harvest is reported on stderr, not raised.
IterationState run_iteration(const IterationState& state, const Domain& domain, const IterationOptions& options);

/// Runs iterations from `initial_rules` until the rule set is a fixpoint or
/// `max_iterations` have run. One entry per iteration run.
std::vector<IterationState> run_pipeline(const std::filesystem::path& initial_rules, const Domain& domain,
                                         const IterationOptions& options, int max_iterations);

}  // namespace sortacq
