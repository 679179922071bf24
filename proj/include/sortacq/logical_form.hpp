#pragma once

#include "sortacq/hierarchy.hpp"
#include "sortacq/sort_term.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sortacq {

/// Sort-annotated logical form expression tree.
///
/// Child layout by kind:
///   Quant `qterm`:  [determiner, bound VarRef, restriction]
///   Quant `exists`: [bound VarRef, body]
///   Abstraction:    [bound VarRef, body]  (a one-place property, sorted `([[S]],[prop])`)
///   Predication:    arguments in order
///   Constant, VarRef: none
class LogicalForm {
public:
  enum class Kind { Quant, Predication, Constant, VarRef, Abstraction };

  static LogicalForm qterm(LogicalForm determiner, LogicalForm var, LogicalForm restriction);
  static LogicalForm exists(LogicalForm var, LogicalForm body);
  static LogicalForm abstraction(LogicalForm var, LogicalForm body);
  static LogicalForm predication(std::string predicate, std::vector<LogicalForm> args);
  static LogicalForm constant(std::string name);
  static LogicalForm var(std::string name);

  Kind kind() const noexcept { return kind_; }
  bool is(Kind k) const noexcept { return kind_ == k; }
  /// Quantifier operator, predicate, constant or variable name.
  const std::string& name() const noexcept { return name_; }

  const std::vector<LogicalForm>& children() const noexcept { return children_; }
  std::vector<LogicalForm>& children() noexcept { return children_; }

  /// For Quant and Abstraction nodes: the bound variable node.
  const LogicalForm& bound_var() const;
  /// For Quant and Abstraction nodes: restriction (qterm) or body (exists, abstraction).
  const LogicalForm& scope() const;

  const std::optional<SortTerm>& annotation() const noexcept { return annotation_; }
  void annotate(SortTerm s) { annotation_ = std::move(s); }
  LogicalForm annotated(SortTerm s) const&;
  LogicalForm annotated(SortTerm s) &&;

  friend bool operator==(const LogicalForm&, const LogicalForm&) = default;

private:
  LogicalForm() = default;

  Kind kind_ = Kind::Constant;
  std::string name_;
  std::vector<LogicalForm> children_;
  std::optional<SortTerm> annotation_;
};

/// Parses LF text. Accepts the canonical form produced by `serialize_lf` and
/// the displayed forms it generalizes: postfix `expr ; sort` annotations,
/// unparenthesized functional sorts after `;`, two-argument
/// `qterm(det, (var, restriction))`, and abstraction by juxtaposition
/// `(V;S) body`. Unknown sort names raise HierarchyError.
LogicalForm parse_lf(std::string_view text, const SortHierarchy& h);

/// Canonical one-line text; every node printed once as `(core;sort)`.
/// Throws DataError naming the path of the first unannotated node.
std::string serialize_lf(const LogicalForm& lf);

/// Fills in missing annotations: predications and `exists` get `[prop]`,
/// `qterm` and variable occurrences get the bound variable's sort, and
/// abstractions `([[S]], body sort)`. Unannotated constants and unbound
/// variables are errors.
LogicalForm resolve_sorts(const LogicalForm& lf, const SortHierarchy& h);

/// Checks every node is annotated and every VarRef is bound. Throws DataError.
void check_well_formed(const LogicalForm& lf);

/// Renames bound variables to A, B, ..., Z, A1, ... in order of binding.
LogicalForm canonicalize_variables(const LogicalForm& lf);

/// Renders a node path like `0/2/1` for error messages.
std::string path_string(const std::vector<std::size_t>& path);

}  // namespace sortacq
