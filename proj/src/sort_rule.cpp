#include "sortacq/sort_rule.hpp"

#include "sortacq/errors.hpp"
#include "sortacq/syntax.hpp"

#include <cctype>

namespace sortacq {

bool SortRule::schematic() const {
  if (kind != RuleKind::Sor) return false;
  if (result.has_variables()) return true;
  for (const auto& a : args) {
    if (a.has_variables()) return true;
  }
  return false;
}

bool rules_alpha_equal(const SortRule& a, const SortRule& b) {
  if (a.predicate != b.predicate || a.arity() != b.arity()) return false;
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (!alpha_equal(a.args[i], b.args[i])) return false;
  }
  return alpha_equal(a.result, b.result);
}

std::string rule_key(const SortRule& r) {
  int counter = 0;
  std::string key = syntax::quote_name(r.predicate) + "/" + std::to_string(r.arity()) + ":[";
  for (std::size_t i = 0; i < r.arity(); ++i) {
    if (i) key += ",";
    key += canonical_string(r.args[i], counter);
  }
  key += "]," + canonical_string(r.result, counter);
  return key;
}

bool rule_subsumes(const SortRule& general, const SortRule& specific, const SortHierarchy& h) {
  if (general.predicate != specific.predicate || general.arity() != specific.arity()) return false;
  for (std::size_t i = 0; i < general.arity(); ++i) {
    if (!subsumes(general.args[i], specific.args[i], h)) return false;
  }
  return subsumes(general.result, specific.result, h);
}

bool rules_unify(const SortRule& a, const SortRule& b, const SortHierarchy& h) {
  if (a.predicate != b.predicate || a.arity() != b.arity()) return false;
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (!unify(a.args[i], b.args[i], h)) return false;
  }
  return unify(a.result, b.result, h).has_value();
}

void validate(const SortRule& r, const SortHierarchy& h) {
  for (const auto& a : r.args) validate(a, h);
  validate(r.result, h);
}

std::string_view category_name(MappingCategory c) {
  switch (c) {
    case MappingCategory::Exact: return "Exact";
    case MappingCategory::Incompatible: return "Incompatible";
    case MappingCategory::SubsumedBy: return "SubsumedBy";
    case MappingCategory::Subsumes: return "Subsumes";
    case MappingCategory::Incomparable: return "Incomparable";
  }
  return "?";
}

std::string_view category_label(MappingCategory c) {
  return c == MappingCategory::SubsumedBy ? "Subsumed-by" : category_name(c);
}

std::optional<MappingCategory> parse_category(std::string_view s) {
  for (auto c : kAllCategories) {
    if (s == category_name(c) || s == category_label(c)) return c;
  }
  return std::nullopt;
}

MappingCategory compare_rule(const SortRule& corpus, const std::vector<SortRule>& refs,
                             const SortHierarchy& h) {
  std::vector<const SortRule*> same;
  for (const auto& r : refs) {
    if (r.predicate == corpus.predicate && r.arity() == corpus.arity()) same.push_back(&r);
  }
  for (const auto* r : same) {
    if (rules_alpha_equal(corpus, *r)) return MappingCategory::Exact;
  }
  for (const auto* r : same) {
    if (rule_subsumes(*r, corpus, h)) return MappingCategory::SubsumedBy;
  }
  for (const auto* r : same) {
    if (rule_subsumes(corpus, *r, h)) return MappingCategory::Subsumes;
  }
  for (const auto* r : same) {
    if (rules_unify(corpus, *r, h)) return MappingCategory::Incomparable;
  }
  return MappingCategory::Incompatible;
}

std::string to_string(const SortRule& r) {
  std::string out = r.kind == RuleKind::Sor ? "sor(" : "signature(";
  out += syntax::quote_name(r.predicate);
  out += ", (";
  if (!r.args.empty()) {
    out += "[";
    for (std::size_t i = 0; i < r.args.size(); ++i) {
      if (i) out += ",";
      out += to_string(r.args[i]);
    }
    out += "],";
  }
  out += to_string(r.result);
  out += ")).";
  return out;
}

namespace {

using K = syntax::Term::Kind;

bool is_name_like(const syntax::Term& t) { return t.is(K::Name) || t.is(K::Int); }

std::vector<SortTerm> arg_list(const syntax::Term& list) {
  std::vector<SortTerm> args;
  for (const auto& a : list.items) args.push_back(sort_from_term(a));
  return args;
}

// A list term is an argument list (rather than an atom) unless it is `[name]`.
bool is_arg_list(const syntax::Term& t) {
  return t.is(K::List) && !(t.items.size() == 1 && is_name_like(t.items[0]));
}

}  // namespace

SortRule rule_from_term(const syntax::Term& clause) {
  SortRule rule;
  if (clause.is(K::Compound) && clause.text == "sor") {
    rule.kind = RuleKind::Sor;
  } else if (clause.is(K::Compound) && clause.text == "signature") {
    rule.kind = RuleKind::Signature;
  } else {
    throw SyntaxError("expected sor/2 or signature/2 clause", clause.line, clause.column);
  }
  if (clause.items.size() != 2 && clause.items.size() != 3) {
    throw SyntaxError("sort clause needs 2 or 3 arguments", clause.line, clause.column);
  }
  const auto& pred = clause.items[0];
  if (!is_name_like(pred)) throw SyntaxError("predicate must be a name", pred.line, pred.column);
  rule.predicate = pred.text;

  if (clause.items.size() == 3) {
    // sor(pred, [args], result) as printed by the original extraction listing
    if (!is_arg_list(clause.items[1])) {
      throw SyntaxError("expected argument list", clause.items[1].line, clause.items[1].column);
    }
    rule.args = arg_list(clause.items[1]);
    rule.result = sort_from_term(clause.items[2]);
    return rule;
  }

  const auto& body = clause.items[1];
  if (body.is(K::Tuple) && body.items.size() == 2 && is_arg_list(body.items[0])) {
    rule.args = arg_list(body.items[0]);
    rule.result = sort_from_term(body.items[1]);
  } else if (body.is(K::Tuple) && body.items.size() == 1) {
    rule.result = sort_from_term(body.items[0]);
  } else {
    rule.result = sort_from_term(body);
  }
  return rule;
}

SortRule parse_rule(std::string_view text) {
  std::string body(text);
  while (!body.empty() && std::isspace(static_cast<unsigned char>(body.back()))) body.pop_back();
  if (body.empty() || body.back() != '.') body += ".";
  auto clauses = syntax::read_clauses(body);
  if (clauses.size() != 1) throw SyntaxError("expected exactly one rule clause", 1, 1);
  return rule_from_term(clauses.front());
}

std::vector<SortRule> parse_rules(std::string_view text) {
  std::vector<SortRule> rules;
  for (const auto& c : syntax::read_clauses(text)) rules.push_back(rule_from_term(c));
  return rules;
}

std::vector<SortRule> load_rules(const std::string& path) {
  return parse_rules(syntax::read_file(path));
}

std::string serialize_rules(const std::vector<SortRule>& rules) {
  std::string out;
  for (const auto& r : rules) {
    out += to_string(r);
    out += "\n";
  }
  return out;
}

}  // namespace sortacq
