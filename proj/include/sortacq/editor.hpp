#pragma once

#include "sortacq/errors.hpp"
#include "sortacq/evalmap.hpp"
#include "sortacq/grammar.hpp"
#include "sortacq/harvest.hpp"
#include "sortacq/hierarchy.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

namespace sortacq {

/// Editor request error; `status` is the HTTP status the API reports.
class EditorError : public Error {
public:
  EditorError(int status, std::string code, const std::string& message)
      : Error(message), status_(status), code_(std::move(code)) {}
  int status() const noexcept { return status_; }
  const std::string& code() const noexcept { return code_; }

private:
  int status_;
  std::string code_;
};

struct WhiteboardNote {
  int id = 0;
  std::string text;
  std::optional<int> sentence_id;
  std::optional<int> rule_id;
};

struct RuleQuery {
  std::optional<std::string> functor;
  std::optional<Rational> min_p;
  ProbFamily family = ProbFamily::Global;
  std::optional<MappingCategory> mapping;
  std::size_t offset = 0;
  std::size_t limit = 0;  // 0 = no limit
};

struct RulePage {
  std::size_t total = 0;  // matches before paging
  std::vector<std::pair<int, RuleStats>> rules;
};

/// One editing session over a workspace directory:
///
///   hierarchy.pl    sort hierarchy (required)
///   harvest.txt     working rule set in harvest format (absent = empty)
///   corpus.txt      sentences, for evidence lookups (optional)
///   reference.sor   default reference for mapping (optional)
///   exclusions.pl   `exclude(name).` clauses (optional, else defaults)
///   journal.log     append-only mutation log, written by the session
///
/// Reads share a lock; mutations are serialized and journaled.
class EditorSession {
public:
  explicit EditorSession(std::filesystem::path workspace);

  const std::filesystem::path& workspace() const noexcept { return workspace_; }

  RulePage list_rules(const RuleQuery& q) const;
  RuleStats get_rule(int id) const;
  /// Removes a rule. Unknown id → 404.
  void delete_rule(int id);
  /// Adds a rule with zeroed statistics and returns its id. Parse errors →
  /// 400; alpha-equivalent duplicates → 409; unknown sorts → 422.
  int insert_rule(const std::string& text);
  /// Corpus lines for the rule's sample ids, in id order.
  std::vector<Sentence> rule_sentences(int id) const;
  /// Predicate → number of rules, for every predicate in the working set.
  std::map<std::string, std::size_t> functors() const;
  /// Predicates with some argument whose sort the query sort subsumes.
  std::vector<std::string> functors_by_argument(const std::string& sort) const;
  /// Maps the working set against a reference file (default: the
  /// workspace's reference.sor) and remembers per-rule categories.
  MappingReport run_mapping(const std::optional<std::string>& reference_path = std::nullopt);
  /// Category of a rule in the last mapping, if one has been run.
  std::optional<MappingCategory> mapping_of(int id) const;
  /// Writes harvest.txt atomically; returns its path.
  std::filesystem::path save();
  ExclusionList excluded() const;
  /// Loads another hierarchy; the working set must validate against it.
  void set_hierarchy(const std::string& path);
  std::vector<WhiteboardNote> whiteboard() const;
  WhiteboardNote add_note(std::string text, std::optional<int> sentence_id, std::optional<int> rule_id);

  bool dirty() const;
  std::size_t size() const;
  /// Working set in id order.
  std::vector<std::pair<int, RuleStats>> rules() const;
  /// Mutation log lines, oldest first (also appended to journal.log).
  std::vector<std::string> journal() const;
  /// Rules as loaded when the session opened, in id order from 1.
  const std::vector<RuleStats>& initial() const noexcept { return initial_; }

  /// Client-token deduplication for retried inserts: returns the id from the
  /// first request carrying `token`, if any.
  std::optional<int> token_result(const std::string& token) const;
  void remember_token(const std::string& token, int id);

private:
  void append_journal(std::string line);

  std::filesystem::path workspace_;
  mutable std::shared_mutex mutex_;
  SortHierarchy hierarchy_;
  std::map<int, RuleStats> rules_;
  std::vector<RuleStats> initial_;
  int next_id_ = 1;
  std::optional<std::vector<Sentence>> corpus_;
  ExclusionList excluded_;
  std::map<int, MappingCategory> mapping_;
  bool has_mapping_ = false;
  std::vector<WhiteboardNote> notes_;
  std::vector<std::string> journal_;
  std::map<std::string, int> tokens_;
  bool dirty_ = false;
};

/// Replays journal lines onto the initial rule list (ids from 1) and
/// returns the resulting working set in id order.
std::vector<std::pair<int, RuleStats>> replay_journal(const std::vector<RuleStats>& initial,
                                                      const std::vector<std::string>& journal);

}  // namespace sortacq
