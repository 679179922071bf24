#pragma once

#include "sortacq/hierarchy.hpp"
#include "sortacq/sort_term.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sortacq {

enum class RuleKind { Sor, Signature };

/// A selectional restriction `sor(pred, ([args...], result))`, or the
/// permissive `signature(...)` clause of the same shape.
struct SortRule {
  RuleKind kind = RuleKind::Sor;
  std::string predicate;
  std::vector<SortTerm> args;  // empty for zero-arity rules
  SortTerm result = SortTerm::atom("prop");

  std::size_t arity() const noexcept { return args.size(); }
  /// A `sor` rule that still contains variables (hand-entered in the editor).
  bool schematic() const;

  friend bool operator==(const SortRule&, const SortRule&) = default;
};

/// Rule-level alpha-equivalence: same predicate and arity, argument and
/// result sorts alpha-equal. The rule kind is ignored.
bool rules_alpha_equal(const SortRule& a, const SortRule& b);

/// Kind-independent canonical key with positional variable names; two rules
/// have the same key iff they are alpha-equal.
std::string rule_key(const SortRule& r);

/// Same predicate and arity, and `subsumes` on every argument and the result.
bool rule_subsumes(const SortRule& general, const SortRule& specific, const SortHierarchy& h);

/// Positionwise unification of arguments and results succeeds.
bool rules_unify(const SortRule& a, const SortRule& b, const SortHierarchy& h);

void validate(const SortRule& r, const SortHierarchy& h);

enum class MappingCategory { Exact = 0, Incompatible, SubsumedBy, Subsumes, Incomparable };

inline constexpr std::array<MappingCategory, 5> kAllCategories = {
    MappingCategory::Exact, MappingCategory::Incompatible, MappingCategory::SubsumedBy,
    MappingCategory::Subsumes, MappingCategory::Incomparable};

/// Identifier form: "Exact", "Incompatible", "SubsumedBy", "Subsumes", "Incomparable".
std::string_view category_name(MappingCategory c);
/// Table label form ("Subsumed-by" for SubsumedBy).
std::string_view category_label(MappingCategory c);
std::optional<MappingCategory> parse_category(std::string_view s);

/// Categorizes one corpus rule against reference rules, with precedence
/// Exact > SubsumedBy > Subsumes > Incomparable > Incompatible.
/// Reference rules with another predicate or arity are ignored.
MappingCategory compare_rule(const SortRule& corpus, const std::vector<SortRule>& refs,
                             const SortHierarchy& h);

// -- rule files ------------------------------------------------------------

/// `sor(to, ([[flight],[city]],[prop])).` or `sor('BOSTON', ([city])).`
std::string to_string(const SortRule& r);

SortRule rule_from_term(const syntax::Term& clause);
SortRule parse_rule(std::string_view text);
std::vector<SortRule> parse_rules(std::string_view text);
std::vector<SortRule> load_rules(const std::string& path);
std::string serialize_rules(const std::vector<SortRule>& rules);

}  // namespace sortacq
