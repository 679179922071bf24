#include "sortacq/siggen.hpp"

#include "sortacq/errors.hpp"

#include <set>
#include <sstream>

namespace sortacq {

std::vector<ConnectorSpec> grammar_connectors(const Grammar& g) {
  std::vector<ConnectorSpec> out;
  std::set<std::pair<std::string, std::size_t>> seen;
  for (const auto& r : g.rules) {
    std::size_t arity = 0;
    if (r.op == SemOp::Connect && r.predicate != kRelConnector) arity = 2;
    if (r.op == SemOp::NounNoun) arity = 2;
    if (r.op == SemOp::Fragment) arity = 1;
    if (arity && seen.emplace(r.predicate, arity).second) out.push_back({r.predicate, arity});
  }
  return out;
}

namespace {

const char* kVarNames[] = {"X", "Y", "Z", "W"};

class Builder {
public:
  explicit Builder(SignatureSet& out) : out_(out) {}

  void add(SortRule r, std::string origin) {
    r.kind = RuleKind::Signature;
    auto key = std::make_pair(r.predicate, r.arity());
    if (auto it = index_.find(key); it != index_.end()) {
      if (rules_alpha_equal(out_.rules[it->second], r)) return;
      throw DataError("conflicting signatures for " + r.predicate + "/" + std::to_string(r.arity()) + ": " +
                      to_string(out_.rules[it->second]) + " vs " + to_string(r));
    }
    index_.emplace(key, out_.rules.size());
    out_.rules.push_back(std::move(r));
    out_.origins.push_back(std::move(origin));
  }

private:
  SignatureSet& out_;
  std::map<std::pair<std::string, std::size_t>, std::size_t> index_;
};

SortTerm inherent_sort(const LexEntry& e, SortHierarchy& h) {
  if (e.inherent) {
    validate(*e.inherent, h);
    return *e.inherent;
  }
  auto fresh = "lex_" + e.predicate;
  h.add_child(fresh, SortHierarchy::kRoot);
  return SortTerm::atom(fresh);
}

SortRule variables(const std::string& predicate, std::size_t arity) {
  SortRule r;
  r.predicate = predicate;
  for (std::size_t i = 0; i < arity; ++i) {
    r.args.push_back(SortTerm::variable(i < 4 ? kVarNames[i] : "V" + std::to_string(i)));
  }
  return r;
}

}  // namespace

SignatureSet generate_signatures(const Lexicon& lexicon, const NameSortTable& names,
                                 const std::vector<ConnectorSpec>& connectors, SortHierarchy& h,
                                 const std::vector<SortRule>& hand) {
  SignatureSet out;
  Builder b(out);
  for (const auto& e : lexicon.entries()) {
    std::string origin(category_name(e.category));
    SortRule r;
    r.predicate = e.predicate;
    switch (e.category) {
      case Category::Noun:
      case Category::Verb:
        r.args = {inherent_sort(e, h)};
        break;
      case Category::Adj:
      case Category::Adv:
        r.args = {inherent_sort(e, h), SortTerm::variable("A"), SortTerm::variable("B")};
        break;
      case Category::Prep:
        r = variables(e.predicate, 2);
        break;
      case Category::Name: {
        auto it = names.find(e.predicate);
        if (it == names.end()) throw DataError("name '" + e.predicate + "' has no entry in the name sort table");
        validate(it->second, h);
        r.result = it->second;
        break;
      }
      case Category::Det:
      case Category::Number:
      case Category::Tool:
        r.result = inherent_sort(e, h);
        break;
    }
    b.add(std::move(r), std::move(origin));
  }
  for (const auto& c : connectors) b.add(variables(c.predicate, c.arity), "connector");
  for (const auto& r : hand) {
    validate(r, h);
    b.add(r, "hand");
  }
  return out;
}

SignatureStats signature_stats(const SignatureSet& set) {
  SignatureStats s;
  for (std::size_t i = 0; i < set.rules.size(); ++i) {
    ++s.total;
    if (set.rules[i].arity() == 0) ++s.zero_arity;
    ++s.by_arity[set.rules[i].arity()];
    const auto& origin = i < set.origins.size() ? set.origins[i] : std::string("unknown");
    if (origin == "hand") ++s.hand_added;
    ++s.by_origin[origin];
  }
  return s;
}

SignatureStats signature_stats(const std::vector<SortRule>& rules) {
  return signature_stats(SignatureSet{rules, std::vector<std::string>(rules.size(), "unknown")});
}

std::string format_stats(const SignatureStats& s) {
  std::ostringstream out;
  out << "total " << s.total << "\n";
  out << "zero_arity " << s.zero_arity << "\n";
  out << "hand_added " << s.hand_added << "\n";
  for (const auto& [a, n] : s.by_arity) out << "arity_" << a << " " << n << "\n";
  for (const auto& [o, n] : s.by_origin) out << "origin_" << o << " " << n << "\n";
  return out.str();
}

}  // namespace sortacq
