#pragma once

#include "sortacq/hierarchy.hpp"
#include "sortacq/sort_rule.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace sortacq {

using CategoryCounts = std::array<std::size_t, kAllCategories.size()>;

struct Metrics {
  double precision_low = 0;
  double precision_high = 0;
  double overgeneration = 0;
  double recall = 0;
};

/// precision_low = Exact/total, precision_high = (Exact+SubsumedBy)/total,
/// overgeneration = Incompatible/total, recall = distinct_exact/reference_size.
/// `distinct_exact` defaults to the Exact count (corpus rules are
/// deduplicated, so the two coincide). Throws DataError on zero totals or
/// counts that do not sum to `total`.
Metrics compute_metrics(const CategoryCounts& counts, std::size_t total, std::size_t reference_size,
                        std::optional<std::size_t> distinct_exact = std::nullopt);

struct MappingEntry {
  SortRule rule;
  MappingCategory category = MappingCategory::Incompatible;
};

struct MappingReport {
  std::vector<MappingEntry> entries;  // corpus order after deduplication
  CategoryCounts counts{};
  std::size_t total = 0;
  std::size_t reference_size = 0;
  /// Reference rules matched exactly by at least one corpus rule.
  std::size_t distinct_exact = 0;
  Metrics metrics;

  std::size_t count(MappingCategory c) const { return counts[static_cast<std::size_t>(c)]; }
};

struct MapOptions {
  /// Expand both rule sets one hierarchy level down before mapping.
  bool closure = false;
};

/// Adds, for every rule, each variant with one atom replaced by one of its
/// children in `h`. Input rules come first; duplicates are dropped.
std::vector<SortRule> expand_one_level(const std::vector<SortRule>& rules, const SortHierarchy& h);

/// Categorizes each distinct corpus rule with at least one argument against
/// the reference rules with at least one argument (OpenMP over corpus rules).
/// Unknown sorts in either set raise HierarchyError.
MappingReport map_rules(const std::vector<SortRule>& corpus, const std::vector<SortRule>& reference,
                        const SortHierarchy& h, const MapOptions& options = {});
MappingReport map_rules_serial(const std::vector<SortRule>& corpus, const std::vector<SortRule>& reference,
                               const SortHierarchy& h, const MapOptions& options = {});

/// Table in the layout of the published results: one row per category with
/// count and percentage, then totals and the four metrics.
std::string format_report(const MappingReport& r);
/// One `Category<TAB>rule` line per corpus rule.
std::string format_records(const MappingReport& r);

}  // namespace sortacq
