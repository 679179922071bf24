#include "sortacq/hierarchy.hpp"

#include "sortacq/errors.hpp"
#include "sortacq/syntax.hpp"

#include <map>
#include <set>
#include <sstream>

namespace sortacq {

SortHierarchy::SortHierarchy() {
  names_.emplace_back(kRoot);
  parent_.emplace_back(std::nullopt);
  children_.emplace_back();
  depth_.push_back(0);
  index_.emplace(std::string(kRoot), 0);
}

SortHierarchy SortHierarchy::from_pairs(const std::vector<std::pair<std::string, std::string>>& isa) {
  std::map<std::string, std::string> parent_of;
  std::vector<std::string> order;
  for (const auto& [child, parent] : isa) {
    if (child == kRoot) throw HierarchyError("'top' cannot have a parent");
    if (child == parent) throw HierarchyError("cycle: '" + child + "' is its own parent");
    auto [it, inserted] = parent_of.emplace(child, parent);
    if (!inserted) {
      if (it->second != parent) {
        throw HierarchyError("re-parenting of '" + child + "' (was '" + it->second + "', now '" + parent + "')");
      }
      continue;
    }
    order.push_back(child);
  }
  for (const auto& [child, parent] : parent_of) {
    if (parent != kRoot && !parent_of.contains(parent)) {
      throw HierarchyError("unknown parent '" + parent + "' of '" + child + "'");
    }
  }

  SortHierarchy h;
  std::vector<std::string> pending = order;
  while (!pending.empty()) {
    std::vector<std::string> rest;
    for (const auto& child : pending) {
      const auto& parent = parent_of.at(child);
      if (h.contains(parent)) {
        h.add_child(child, parent);
      } else {
        rest.push_back(child);
      }
    }
    if (rest.size() == pending.size()) {
      throw HierarchyError("cycle in hierarchy involving '" + rest.front() + "'");
    }
    pending = std::move(rest);
  }
  return h;
}

SortHierarchy SortHierarchy::parse(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& clause : syntax::read_clauses(text)) {
    if (!clause.is_compound("isa", 2) || !clause.items[0].is(syntax::Term::Kind::Name) ||
        !clause.items[1].is(syntax::Term::Kind::Name)) {
      throw SyntaxError("expected isa(child, parent)", clause.line, clause.column);
    }
    pairs.emplace_back(clause.items[0].text, clause.items[1].text);
  }
  return from_pairs(pairs);
}

SortHierarchy SortHierarchy::load(const std::string& path) {
  return parse(syntax::read_file(path));
}

SortId SortHierarchy::add_child(std::string_view child, std::string_view parent) {
  SortId p = id(parent);
  if (auto existing = find(child)) {
    if (parent_[*existing] != p) {
      throw HierarchyError("re-parenting of '" + std::string(child) + "'");
    }
    return *existing;
  }
  if (child == kRoot) throw HierarchyError("'top' cannot have a parent");
  auto nid = static_cast<SortId>(names_.size());
  names_.emplace_back(child);
  parent_.emplace_back(p);
  children_.emplace_back();
  children_[p].push_back(nid);
  depth_.push_back(depth_[p] + 1);
  index_.emplace(std::string(child), nid);
  return nid;
}

bool SortHierarchy::contains(std::string_view name) const {
  return index_.contains(std::string(name));
}

std::optional<SortId> SortHierarchy::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

SortId SortHierarchy::id(std::string_view name) const {
  auto found = find(name);
  if (!found) throw HierarchyError("unknown sort '" + std::string(name) + "'");
  return *found;
}

std::optional<SortId> SortHierarchy::parent(SortId id) const {
  return parent_.at(id);
}

bool SortHierarchy::is_ancestor_or_self(SortId general, SortId specific) const {
  if (depth_.at(general) > depth_.at(specific)) return false;
  SortId cur = specific;
  while (depth_[cur] > depth_[general]) cur = *parent_[cur];
  return cur == general;
}

std::string SortHierarchy::serialize() const {
  std::ostringstream out;
  // Breadth-first so every parent line precedes its children.
  std::vector<SortId> queue{root()};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (SortId c : children_[queue[i]]) {
      out << "isa(" << syntax::quote_name(names_[c]) << ", " << syntax::quote_name(names_[queue[i]]) << ").\n";
      queue.push_back(c);
    }
  }
  return out.str();
}

bool SortHierarchy::operator==(const SortHierarchy& other) const {
  if (size() != other.size()) return false;
  for (SortId i = 1; i < names_.size(); ++i) {
    auto o = other.find(names_[i]);
    if (!o) return false;
    auto op = other.parent(*o);
    if (!op || other.name(*op) != names_[*parent_[i]]) return false;
  }
  return true;
}

}  // namespace sortacq
