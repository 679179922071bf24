#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace sortacq {

using SortId = std::uint32_t;

/// A tree of sort names rooted at `top`.
///
/// Nodes are numbered in insertion order; `top` is always node 0. The tree is
/// immutable once loaded except through `add_child`, which only ever appends
/// leaves and therefore cannot break the tree invariants.
class SortHierarchy {
public:
  static constexpr std::string_view kRoot = "top";

  SortHierarchy();

  /// Parses an `isa(child, parent).` file. Forward references to parents are
  /// allowed; cycles, re-parenting and unknown parents are rejected.
  static SortHierarchy parse(std::string_view text);
  static SortHierarchy load(const std::string& path);

  /// Builds a hierarchy from (child, parent) pairs with the same checks as `parse`.
  static SortHierarchy from_pairs(const std::vector<std::pair<std::string, std::string>>& isa);

  /// Appends a leaf under `parent`. Adding an existing node under the same
  /// parent is a no-op; under a different parent it is an error.
  SortId add_child(std::string_view child, std::string_view parent);

  bool contains(std::string_view name) const;
  /// Throws HierarchyError for unknown names.
  SortId id(std::string_view name) const;
  std::optional<SortId> find(std::string_view name) const;
  const std::string& name(SortId id) const { return names_.at(id); }

  SortId root() const noexcept { return 0; }
  std::optional<SortId> parent(SortId id) const;
  const std::vector<SortId>& children(SortId id) const { return children_.at(id); }
  int depth(SortId id) const { return depth_.at(id); }
  std::size_t size() const noexcept { return names_.size(); }

  /// Ancestor-or-equal test.
  bool is_ancestor_or_self(SortId general, SortId specific) const;

  /// Canonical `isa` text (parents precede children, siblings in insertion order).
  std::string serialize() const;

  bool operator==(const SortHierarchy& other) const;

private:
  std::vector<std::string> names_;
  std::vector<std::optional<SortId>> parent_;
  std::vector<std::vector<SortId>> children_;
  std::vector<int> depth_;
  std::unordered_map<std::string, SortId> index_;
};

}  // namespace sortacq
