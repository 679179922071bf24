#pragma once

// Test-only generators and independent oracles. Nothing here calls the
// library's subsumes/unify/compare_rule; the oracles work from the
// transitive closure of the isa relation computed by graph reachability.

#include "sortacq/hierarchy.hpp"
#include "sortacq/sort_rule.hpp"
#include "sortacq/sort_term.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace sortacq::testing {

/// Reachability closure of an isa relation given as (child, parent) pairs.
class IsaClosure {
public:
  explicit IsaClosure(const std::vector<std::pair<std::string, std::string>>& isa) {
    nodes_.insert("top");
    for (const auto& [c, p] : isa) {
      nodes_.insert(c);
      nodes_.insert(p);
      up_[c].insert(p);
    }
    for (const auto& n : nodes_) {
      // depth-first walk over parent edges
      std::vector<std::string> stack{n};
      std::set<std::string> seen;
      while (!stack.empty()) {
        auto cur = stack.back();
        stack.pop_back();
        if (!seen.insert(cur).second) continue;
        for (const auto& p : up_[cur]) stack.push_back(p);
      }
      ancestors_[n] = std::move(seen);
    }
  }

  bool below_or_equal(const std::string& specific, const std::string& general) const {
    auto it = ancestors_.find(specific);
    return it != ancestors_.end() && it->second.contains(general);
  }

  const std::set<std::string>& nodes() const { return nodes_; }

  bool term_subsumes(const SortTerm& g, const SortTerm& s) const {
    if (g.is_variable()) return true;
    if (s.is_variable()) return false;
    if (g.is_atom() && s.is_atom()) return below_or_equal(s.name(), g.name());
    if (g.is_func() && s.is_func() && g.args().size() == s.args().size()) {
      for (std::size_t i = 0; i < g.args().size(); ++i) {
        if (!term_subsumes(g.args()[i], s.args()[i])) return false;
      }
      return term_subsumes(g.result(), s.result());
    }
    return false;
  }

  /// Whether some term lies below both (the glb exists).
  bool term_unifiable(const SortTerm& a, const SortTerm& b) const {
    if (a.is_variable() || b.is_variable()) return true;
    if (a.is_atom() && b.is_atom()) {
      for (const auto& n : nodes_) {
        if (below_or_equal(n, a.name()) && below_or_equal(n, b.name())) return true;
      }
      return false;
    }
    if (a.is_func() && b.is_func() && a.args().size() == b.args().size()) {
      for (std::size_t i = 0; i < a.args().size(); ++i) {
        if (!term_unifiable(a.args()[i], b.args()[i])) return false;
      }
      return term_unifiable(a.result(), b.result());
    }
    return false;
  }

  bool term_alpha_equal(const SortTerm& a, const SortTerm& b) const {
    return term_subsumes(a, b) && term_subsumes(b, a) && same_shape(a, b);
  }

  static bool same_shape(const SortTerm& a, const SortTerm& b) {
    if (a.kind() != b.kind()) return false;
    if (a.is_atom()) return a.name() == b.name();
    if (a.is_func()) {
      if (a.args().size() != b.args().size()) return false;
      for (std::size_t i = 0; i < a.args().size(); ++i) {
        if (!same_shape(a.args()[i], b.args()[i])) return false;
      }
      return same_shape(a.result(), b.result());
    }
    return true;
  }

  struct Relations {
    bool equal = false;
    bool ref_subsumes_corpus = false;
    bool corpus_subsumes_ref = false;
    bool unify = false;
  };

  Relations relations(const SortRule& corpus, const SortRule& ref) const {
    Relations r;
    if (corpus.predicate != ref.predicate || corpus.args.size() != ref.args.size()) return r;
    auto all = [&](auto&& pred) {
      for (std::size_t i = 0; i < corpus.args.size(); ++i) {
        if (!pred(corpus.args[i], ref.args[i])) return false;
      }
      return pred(corpus.result, ref.result);
    };
    r.equal = all([&](const SortTerm& c, const SortTerm& f) { return term_alpha_equal(c, f); });
    r.ref_subsumes_corpus = all([&](const SortTerm& c, const SortTerm& f) { return term_subsumes(f, c); });
    r.corpus_subsumes_ref = all([&](const SortTerm& c, const SortTerm& f) { return term_subsumes(c, f); });
    r.unify = all([&](const SortTerm& c, const SortTerm& f) { return term_unifiable(c, f); });
    return r;
  }

  /// Brute-force categorization: compute all four relations per reference
  /// rule, then apply the precedence order.
  MappingCategory categorize(const SortRule& corpus, const std::vector<SortRule>& refs) const {
    bool eq = false, sb = false, ss = false, un = false;
    for (const auto& ref : refs) {
      auto r = relations(corpus, ref);
      eq = eq || r.equal;
      sb = sb || r.ref_subsumes_corpus;
      ss = ss || r.corpus_subsumes_ref;
      un = un || r.unify;
    }
    if (eq) return MappingCategory::Exact;
    if (sb) return MappingCategory::SubsumedBy;
    if (ss) return MappingCategory::Subsumes;
    if (un) return MappingCategory::Incomparable;
    return MappingCategory::Incompatible;
  }

private:
  std::set<std::string> nodes_;
  std::map<std::string, std::set<std::string>> up_;
  std::map<std::string, std::set<std::string>> ancestors_;
};

/// Random tree over `n` non-root sorts s1..sn; each node's parent is drawn
/// from the nodes created before it (or top).
inline std::vector<std::pair<std::string, std::string>> random_tree(std::mt19937& rng, int n) {
  std::vector<std::pair<std::string, std::string>> isa;
  for (int i = 1; i <= n; ++i) {
    std::uniform_int_distribution<int> pick(0, i - 1);
    int p = pick(rng);
    isa.emplace_back("s" + std::to_string(i), p == 0 ? "top" : "s" + std::to_string(p));
  }
  return isa;
}

/// Every tree shape over `n` non-root sorts, as parent arrays where node i's
/// parent has a smaller index (covers every rooted tree up to relabeling).
inline std::vector<std::vector<std::pair<std::string, std::string>>> all_trees(int n) {
  std::vector<std::vector<std::pair<std::string, std::string>>> out;
  std::vector<int> parent(n + 1, 0);
  auto emit = [&] {
    std::vector<std::pair<std::string, std::string>> isa;
    for (int i = 1; i <= n; ++i) {
      isa.emplace_back("s" + std::to_string(i), parent[i] == 0 ? "top" : "s" + std::to_string(parent[i]));
    }
    out.push_back(std::move(isa));
  };
  auto rec = [&](auto&& self, int i) -> void {
    if (i > n) {
      emit();
      return;
    }
    for (int p = 0; p < i; ++p) {
      parent[i] = p;
      self(self, i + 1);
    }
  };
  rec(rec, 1);
  return out;
}

inline std::vector<std::string> sort_names(const std::vector<std::pair<std::string, std::string>>& isa) {
  std::vector<std::string> names{"top"};
  for (const auto& [c, p] : isa) names.push_back(c);
  return names;
}

/// Random sort term of bounded depth over the given sort names.
inline SortTerm random_term(std::mt19937& rng, const std::vector<std::string>& sorts, int depth,
                            int& var_counter) {
  std::uniform_int_distribution<int> kind(0, depth > 0 ? 9 : 7);
  int k = kind(rng);
  if (k <= 1) return SortTerm::variable("V" + std::to_string(++var_counter));
  if (k <= 7) {
    std::uniform_int_distribution<std::size_t> pick(0, sorts.size() - 1);
    return SortTerm::atom(sorts[pick(rng)]);
  }
  std::uniform_int_distribution<int> arity(1, 2);
  std::vector<SortTerm> args;
  int n = arity(rng);
  for (int i = 0; i < n; ++i) args.push_back(random_term(rng, sorts, depth - 1, var_counter));
  return SortTerm::func(std::move(args), random_term(rng, sorts, depth - 1, var_counter));
}

/// Random term with the same shape as `t` but each leaf replaced by an
/// ancestor-or-self (atoms) or a variable, giving a term that subsumes `t`.
inline SortTerm generalize(std::mt19937& rng, const SortTerm& t,
                           const std::vector<std::pair<std::string, std::string>>& isa) {
  std::uniform_int_distribution<int> coin(0, 3);
  if (t.is_variable()) return t;
  if (t.is_atom()) {
    if (coin(rng) == 0) return SortTerm::variable("G");
    std::string cur = t.name();
    while (coin(rng) != 0) {
      auto it = std::find_if(isa.begin(), isa.end(), [&](const auto& e) { return e.first == cur; });
      if (it == isa.end()) break;
      cur = it->second;
    }
    return SortTerm::atom(cur);
  }
  if (coin(rng) == 0) return SortTerm::variable("G");
  std::vector<SortTerm> args;
  for (const auto& a : t.args()) args.push_back(generalize(rng, a, isa));
  return SortTerm::func(std::move(args), generalize(rng, t.result(), isa));
}

}  // namespace sortacq::testing
