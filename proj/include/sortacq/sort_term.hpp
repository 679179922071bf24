#pragma once

#include "sortacq/hierarchy.hpp"
#include "sortacq/syntax.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sortacq {

/// A sort: a variable, an atomic sort drawn from a hierarchy, or a
/// functional sort `([a1,...,an], result)`.
///
/// Atoms store the sort *name*, so terms stay valid when a hierarchy is
/// reloaded; the hierarchy is passed to every operation that needs it.
class SortTerm {
public:
  enum class Kind { Variable, Atom, Func };

  static SortTerm variable(std::string name);
  static SortTerm atom(std::string sort);
  /// `args` must be non-empty.
  static SortTerm func(std::vector<SortTerm> args, SortTerm result);

  Kind kind() const noexcept { return kind_; }
  bool is_variable() const noexcept { return kind_ == Kind::Variable; }
  bool is_atom() const noexcept { return kind_ == Kind::Atom; }
  bool is_func() const noexcept { return kind_ == Kind::Func; }

  /// Variable name or atom sort name.
  const std::string& name() const noexcept { return name_; }

  std::span<const SortTerm> args() const;
  const SortTerm& result() const;

  /// True when any variable occurs in the term.
  bool has_variables() const;

  friend bool operator==(const SortTerm&, const SortTerm&) = default;

private:
  SortTerm() = default;

  Kind kind_ = Kind::Variable;
  std::string name_;
  std::vector<SortTerm> parts_;  // Func: args followed by result
};

/// `general` subsumes `specific`: a variable subsumes everything; atoms by
/// ancestry; functional sorts componentwise (covariant) at equal arity.
/// A variable on the specific side is subsumed only by a variable.
bool subsumes(const SortTerm& general, const SortTerm& specific, const SortHierarchy& h);

/// Greatest lower bound, or nullopt on unification failure.
std::optional<SortTerm> unify(const SortTerm& a, const SortTerm& b, const SortHierarchy& h);

/// Structural equality treating every variable occurrence as an anonymous
/// placeholder (variables carry no co-instantiation constraints).
bool alpha_equal(const SortTerm& a, const SortTerm& b);

/// Throws HierarchyError when an atom is not a node of `h`.
void validate(const SortTerm& t, const SortHierarchy& h);

/// Canonical text: `X`, `[city]`, `([[day_part]],[prop])`.
std::string to_string(const SortTerm& t);

/// Same as to_string but with variables renamed positionally (`_1`, `_2`, ...),
/// starting after `counter`, which is advanced. Used for alpha-keys.
std::string canonical_string(const SortTerm& t, int& counter);

/// Replaces one atom occurrence (in depth-first order) with `sort`.
SortTerm replace_atom_at(const SortTerm& t, std::size_t atom_index, const std::string& sort);
/// Number of atom occurrences, depth-first.
std::size_t atom_count(const SortTerm& t);
/// Atom occurrence `atom_index` (depth-first) sort name.
const std::string& atom_at(const SortTerm& t, std::size_t atom_index);

SortTerm sort_from_term(const syntax::Term& term);
SortTerm parse_sort(std::string_view text);

}  // namespace sortacq
