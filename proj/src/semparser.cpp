#include "sortacq/semparser.hpp"

#include "sortacq/errors.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace sortacq {

using LF = LogicalForm;
using Env = std::map<std::string, SortTerm>;

RuleIndex::RuleIndex(std::vector<SortRule> rules) : rules_(std::move(rules)) {
  std::stable_sort(rules_.begin(), rules_.end(), [](const SortRule& a, const SortRule& b) {
    return std::make_pair(a.predicate, a.args.size()) < std::make_pair(b.predicate, b.args.size());
  });
  for (std::size_t i = 0; i < rules_.size();) {
    std::size_t j = i;
    while (j < rules_.size() && rules_[j].predicate == rules_[i].predicate &&
           rules_[j].arity() == rules_[i].arity()) {
      ++j;
    }
    ranges_[{rules_[i].predicate, rules_[i].arity()}] = {i, j};
    i = j;
  }
}

std::span<const SortRule> RuleIndex::find(const std::string& predicate, std::size_t arity) const {
  auto it = ranges_.find({predicate, arity});
  if (it == ranges_.end()) return {};
  return std::span<const SortRule>(rules_).subspan(it->second.first, it->second.second - it->second.first);
}

namespace {

const SortTerm& prop_sort() {
  static const SortTerm prop = SortTerm::atom("prop");
  return prop;
}

bool licensed_node(const LF& lf, const RuleIndex& rules, const SortHierarchy& h, std::string* why) {
  if (lf.is(LF::Kind::Constant)) {
    for (const auto& r : rules.find(lf.name(), 0)) {
      if (lf.annotation() && unify(*lf.annotation(), r.result, h)) return true;
    }
    if (why) *why = "constant " + lf.name() + " has no licensing rule";
    return false;
  }
  if (lf.is(LF::Kind::Predication) && lf.name() != "and") {
    const auto& args = lf.children();
    bool found = false;
    for (const auto& r : rules.find(lf.name(), args.size())) {
      bool ok = lf.annotation() && unify(*lf.annotation(), r.result, h).has_value();
      for (std::size_t i = 0; ok && i < args.size(); ++i) {
        ok = args[i].annotation() && unify(*args[i].annotation(), r.args[i], h).has_value();
      }
      if (ok) {
        found = true;
        break;
      }
    }
    if (!found) {
      if (why) *why = "predication " + lf.name() + "/" + std::to_string(args.size()) + " has no licensing rule";
      return false;
    }
  }
  for (const auto& c : lf.children()) {
    if (!licensed_node(c, rules, h, why)) return false;
  }
  return true;
}

/// Text of a partially built LF; missing annotations are left out.
void debug_into(const LF& lf, std::string& out) {
  switch (lf.kind()) {
    case LF::Kind::Constant: out += "c:" + lf.name(); break;
    case LF::Kind::VarRef: out += "v:" + lf.name(); break;
    case LF::Kind::Predication:
    case LF::Kind::Quant:
    case LF::Kind::Abstraction:
      out += lf.is(LF::Kind::Abstraction) ? "\\" : lf.name();
      out += '[';
      for (std::size_t i = 0; i < lf.children().size(); ++i) {
        if (i) out += ',';
        debug_into(lf.children()[i], out);
      }
      out += ']';
      break;
  }
  if (lf.annotation() && !lf.is(LF::Kind::VarRef)) out += ";" + to_string(*lf.annotation());
}

LF conjunction(std::vector<LF> conj) {
  if (conj.size() == 1) return std::move(conj.front());
  return LF::predication("and", std::move(conj)).annotated(prop_sort());
}

/// Closes an open meaning: its referent becomes existentially bound.
LF close_open(const PartialSem& s) {
  return LF::exists(LF::var(s.referent), conjunction(s.conj));
}

/// Argument term standing for a meaning, if it can fill an argument slot.
std::optional<LF> argument_of(const PartialSem& s) {
  switch (s.shape) {
    case PartialSem::Shape::Open: return LF::var(s.referent);
    case PartialSem::Shape::Closed: return *s.term;
    case PartialSem::Shape::Relation: return std::nullopt;
  }
  return std::nullopt;
}

Env merged(const Env& a, const Env& b) {
  Env out = a;
  out.insert(b.begin(), b.end());
  return out;
}

void annotate_vars(LF& lf, const Env& env) {
  if (lf.is(LF::Kind::VarRef)) {
    if (auto it = env.find(lf.name()); it != env.end()) lf.annotate(it->second);
    return;
  }
  for (auto& c : lf.children()) annotate_vars(c, env);
}

void count_nodes(const LF& lf, const std::set<std::string>& fragments, const std::set<std::string>& connectors,
                 int depth, Score& s) {
  if (lf.is(LF::Kind::Predication) && lf.name() != "and") {
    ++s.predications;
    if (fragments.contains(lf.name())) ++s.fragments;
    if (connectors.contains(lf.name())) s.depth_sum += depth;
  }
  for (const auto& c : lf.children()) count_nodes(c, fragments, connectors, depth + 1, s);
}

}  // namespace

bool is_licensed(const LogicalForm& lf, const RuleIndex& rules, const SortHierarchy& h, std::string* why) {
  return licensed_node(lf, rules, h, why);
}

std::string PartialSem::key() const {
  std::string out;
  switch (shape) {
    case Shape::Open: out = "O:" + referent; break;
    case Shape::Closed: out = "C:"; break;
    case Shape::Relation: out = "R:" + relation; break;
  }
  out += '{';
  for (const auto& c : conj) {
    debug_into(c, out);
    out += ' ';
  }
  out += '}';
  if (term) debug_into(*term, out);
  out += '|';
  for (const auto& [v, s] : env) out += v + "=" + to_string(s) + ",";
  out += "|f" + std::to_string(fragments);
  return out;
}

std::size_t select_plf(std::span<const Analysis> analyses) {
  if (analyses.empty()) throw std::invalid_argument("select_plf: no analyses");
  std::size_t best = 0;
  for (std::size_t i = 1; i < analyses.size(); ++i) {
    if (analyses[i].score < analyses[best].score) best = i;
  }
  return best;
}

SemParser::SemParser(const Grammar& grammar, const Lexicon& lexicon, std::vector<SortRule> rules,
                     const SortHierarchy& h, ParserLimits limits)
    : grammar_(&grammar), lexicon_(&lexicon), rules_(std::move(rules)), h_(&h), limits_(limits) {
  for (const auto& p : grammar.connector_predicates()) connectors_.insert(p);
  for (const auto& e : lexicon.entries()) {
    if (e.category == Category::Prep) connectors_.insert(e.predicate);
  }
  for (const auto& p : grammar.fragment_predicates()) fragment_preds_.insert(p);
  for (const auto& r : grammar.rules) {
    if (r.op == SemOp::Fragment) fragment_cats_.insert(r.lhs);
  }
}

std::optional<SortTerm> SemParser::arg_sort(const LF& arg, const Env& env) const {
  switch (arg.kind()) {
    case LF::Kind::VarRef: {
      auto it = env.find(arg.name());
      if (it == env.end()) return std::nullopt;
      return it->second;
    }
    case LF::Kind::Constant:
    case LF::Kind::Predication: return arg.annotation();
    case LF::Kind::Quant: {
      if (arg.name() != "qterm") return prop_sort();
      auto it = env.find(arg.bound_var().name());
      if (it == env.end()) return std::nullopt;
      return it->second;
    }
    case LF::Kind::Abstraction: {
      auto it = env.find(arg.bound_var().name());
      if (it == env.end()) return std::nullopt;
      return SortTerm::func({it->second}, prop_sort());
    }
  }
  return std::nullopt;
}

std::vector<SemParser::Licensed> SemParser::license(const std::string& predicate, std::vector<LF> args,
                                                    const Env& env) const {
  std::vector<Licensed> out;
  std::vector<SortTerm> sorts;
  for (const auto& a : args) {
    auto s = arg_sort(a, env);
    if (!s) return out;
    sorts.push_back(std::move(*s));
  }
  std::set<std::string> seen;
  for (const auto& rule : rules_.find(predicate, args.size())) {
    Licensed l{env, LF::predication(predicate, {})};
    std::vector<LF> refined = args;
    bool ok = true;
    for (std::size_t i = 0; ok && i < args.size(); ++i) {
      auto glb = unify(sorts[i], rule.args[i], *h_);
      if (!glb) {
        ok = false;
        break;
      }
      LF& a = refined[i];
      switch (a.kind()) {
        case LF::Kind::VarRef: l.env.insert_or_assign(a.name(), *glb); break;
        case LF::Kind::Constant: a.annotate(*glb); break;
        case LF::Kind::Quant:
          if (a.name() == "qterm") l.env.insert_or_assign(a.bound_var().name(), *glb);
          break;
        case LF::Kind::Abstraction:
          if (glb->is_func() && glb->args().size() == 1) {
            l.env.insert_or_assign(a.bound_var().name(), glb->args()[0]);
          }
          break;
        case LF::Kind::Predication: break;
      }
    }
    if (!ok) continue;
    l.predication = LF::predication(predicate, std::move(refined)).annotated(rule.result);
    // Two rules can refine to the same sorts; keep one branch per outcome.
    std::string key;
    debug_into(l.predication, key);
    for (const auto& [v, s] : l.env) key += v + "=" + to_string(s) + ",";
    if (seen.insert(key).second) out.push_back(std::move(l));
  }
  return out;
}

std::vector<LF> SemParser::license_constant(const std::string& name) const {
  std::vector<LF> out;
  std::set<std::string> seen;
  for (const auto& rule : rules_.find(name, 0)) {
    if (seen.insert(to_string(rule.result)).second) out.push_back(LF::constant(name).annotated(rule.result));
  }
  return out;
}

std::vector<PartialSem> SemParser::lexical(const LexEntry& entry, int index) const {
  std::vector<PartialSem> out;
  switch (entry.category) {
    case Category::Noun:
    case Category::Verb: {
      const bool verb = entry.category == Category::Verb;
      PartialSem s;
      s.shape = PartialSem::Shape::Open;
      s.referent = (verb ? "E" : "X") + std::to_string(index);
      s.env.emplace(s.referent, SortTerm::variable("S"));
      for (auto& head : license(entry.predicate, {LF::var(s.referent)}, s.env)) {
        if (!verb || !entry.aspect) {
          PartialSem r = s;
          r.env = std::move(head.env);
          r.conj.push_back(std::move(head.predication));
          out.push_back(std::move(r));
          continue;
        }
        for (const auto& aspect : license_constant(*entry.aspect)) {
          for (auto& asp : license("has_aspect", {LF::var(s.referent), aspect}, head.env)) {
            PartialSem r = s;
            r.env = std::move(asp.env);
            r.conj.push_back(head.predication);
            r.conj.push_back(std::move(asp.predication));
            out.push_back(std::move(r));
          }
        }
      }
      break;
    }
    case Category::Prep: {
      PartialSem s;
      s.shape = PartialSem::Shape::Relation;
      s.relation = entry.predicate;
      out.push_back(std::move(s));
      break;
    }
    case Category::Det:
    case Category::Name:
    case Category::Number:
    case Category::Tool:
      for (auto& c : license_constant(entry.predicate)) {
        PartialSem s;
        s.shape = PartialSem::Shape::Closed;
        s.term = std::move(c);
        out.push_back(std::move(s));
      }
      break;
    case Category::Adj:
    case Category::Adv:
      // Modifier semantics are outside the rule inventory; such words get
      // signatures but no chart edges.
      break;
  }
  return out;
}

std::vector<PartialSem> SemParser::apply(const GrammarRule& rule, std::span<const PartialSem* const> children) const {
  if (children.size() != rule.rhs.size()) throw std::invalid_argument("apply: child count mismatch");
  switch (rule.op) {
    case SemOp::HeadOnly: return {*children[rule.first - 1]};
    case SemOp::Connect:
      return rule.predicate == kRelConnector ? connect_relation(rule, children) : connect(rule, children);
    case SemOp::Quantify: return quantify(rule, children);
    case SemOp::NounNoun: return noun_noun(rule, children);
    case SemOp::Fragment: return fragment(rule, children);
  }
  return {};
}

std::vector<PartialSem> SemParser::connect(const GrammarRule& rule, std::span<const PartialSem* const> children) const {
  const PartialSem& a1 = *children[rule.first - 1];
  const PartialSem& a2 = *children[rule.second - 1];
  auto x1 = argument_of(a1);
  auto x2 = argument_of(a2);
  if (!x1 || !x2) return {};

  // The result continues the child of the lhs category, else the first argument.
  std::size_t head = rule.first - 1;
  for (std::size_t i = 0; i < rule.rhs.size(); ++i) {
    if (rule.rhs[i] == rule.lhs) head = i;
  }
  const PartialSem& h = *children[head];
  const PartialSem& dep = *children[1 - head];
  if (h.shape != PartialSem::Shape::Open) return {};

  std::vector<PartialSem> out;
  for (auto& l : license(rule.predicate, {*x1, *x2}, merged(a1.env, a2.env))) {
    PartialSem r = h;
    r.env = std::move(l.env);
    r.fragments = a1.fragments + a2.fragments;
    if (dep.shape == PartialSem::Shape::Open) {
      // An open dependent (an event) is closed around the connecting predication.
      std::vector<LF> body = dep.conj;
      body.push_back(std::move(l.predication));
      r.conj.push_back(LF::exists(LF::var(dep.referent), conjunction(std::move(body))));
    } else {
      r.conj.push_back(std::move(l.predication));
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<PartialSem> SemParser::connect_relation(const GrammarRule& rule,
                                                    std::span<const PartialSem* const> children) const {
  const PartialSem& c1 = *children[0];
  const PartialSem& c2 = *children[1];
  using Shape = PartialSem::Shape;

  // Building the pp: a bare preposition takes a closed object.
  for (int k = 0; k < 2; ++k) {
    const PartialSem& rel = k == 0 ? c1 : c2;
    const PartialSem& obj = k == 0 ? c2 : c1;
    if (rel.shape == Shape::Relation && !rel.term) {
      if (obj.shape != Shape::Closed) return {};
      PartialSem r = rel;
      r.term = obj.term;
      r.env = merged(rel.env, obj.env);
      r.fragments = rel.fragments + obj.fragments;
      return {r};
    }
  }
  // Attaching the pp to an open head.
  for (int k = 0; k < 2; ++k) {
    const PartialSem& pp = k == 0 ? c1 : c2;
    const PartialSem& head = k == 0 ? c2 : c1;
    if (pp.shape != Shape::Relation || !pp.term) continue;
    if (head.shape != Shape::Open) return {};
    std::vector<PartialSem> out;
    for (auto& l : license(pp.relation, {LF::var(head.referent), *pp.term}, merged(head.env, pp.env))) {
      PartialSem r = head;
      r.env = std::move(l.env);
      r.fragments = head.fragments + pp.fragments;
      r.conj.push_back(std::move(l.predication));
      out.push_back(std::move(r));
    }
    return out;
  }
  (void)rule;
  return {};
}

std::vector<PartialSem> SemParser::quantify(const GrammarRule& rule, std::span<const PartialSem* const> children) const {
  const PartialSem& head = *children[rule.second - 1];
  if (head.shape != PartialSem::Shape::Open) return {};
  std::vector<LF> dets;
  Env env = head.env;
  int fragments = head.fragments;
  if (rule.first == 0) {
    dets = license_constant(grammar_->implicit_determiner);
  } else {
    const PartialSem& det = *children[rule.first - 1];
    if (det.shape != PartialSem::Shape::Closed || !det.term->is(LF::Kind::Constant)) return {};
    dets.push_back(*det.term);
    env = merged(env, det.env);
    fragments += det.fragments;
  }
  std::vector<PartialSem> out;
  for (auto& d : dets) {
    PartialSem r;
    r.shape = PartialSem::Shape::Closed;
    r.term = LF::qterm(std::move(d), LF::var(head.referent), conjunction(head.conj));
    r.env = env;
    r.fragments = fragments;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<PartialSem> SemParser::noun_noun(const GrammarRule& rule, std::span<const PartialSem* const> children) const {
  const PartialSem& mod = *children[rule.first - 1];
  const PartialSem& head = *children[rule.second - 1];
  if (mod.shape != PartialSem::Shape::Open || head.shape != PartialSem::Shape::Open) return {};
  LF property = LF::abstraction(LF::var(mod.referent), conjunction(mod.conj));
  std::vector<PartialSem> out;
  for (auto& l : license(rule.predicate, {std::move(property), LF::var(head.referent)}, merged(mod.env, head.env))) {
    PartialSem r = head;
    r.env = std::move(l.env);
    r.fragments = mod.fragments + head.fragments;
    r.conj.push_back(std::move(l.predication));
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<PartialSem> SemParser::fragment(const GrammarRule& rule, std::span<const PartialSem* const> children) const {
  const PartialSem& c = *children[0];
  std::optional<LF> arg;
  if (c.shape == PartialSem::Shape::Closed) arg = *c.term;
  if (c.shape == PartialSem::Shape::Open) arg = close_open(c);
  if (!arg) return {};
  std::vector<PartialSem> out;
  for (auto& l : license(rule.predicate, {std::move(*arg)}, c.env)) {
    PartialSem r;
    r.shape = PartialSem::Shape::Closed;
    r.term = std::move(l.predication);
    r.env = std::move(l.env);
    r.fragments = c.fragments + 1;
    out.push_back(std::move(r));
  }
  return out;
}

PartialSem SemParser::combine_fragments(std::span<const PartialSem* const> parts) const {
  PartialSem r;
  r.shape = PartialSem::Shape::Closed;
  std::vector<LF> conj;
  for (const auto* p : parts) {
    conj.push_back(p->shape == PartialSem::Shape::Open ? close_open(*p) : *p->term);
    r.env.insert(p->env.begin(), p->env.end());
    r.fragments += p->fragments;
  }
  r.term = conjunction(std::move(conj));
  return r;
}

std::optional<LF> SemParser::finalize(const PartialSem& sem) const {
  std::optional<LF> lf;
  if (sem.shape == PartialSem::Shape::Closed) lf = *sem.term;
  if (sem.shape == PartialSem::Shape::Open) lf = close_open(sem);
  if (!lf) return std::nullopt;
  annotate_vars(*lf, sem.env);
  try {
    LF out = canonicalize_variables(resolve_sorts(*lf, *h_));
    check_well_formed(out);
    if (!is_licensed(out, rules_, *h_)) return std::nullopt;
    return out;
  } catch (const DataError&) {
    return std::nullopt;
  }
}

Score SemParser::score(const LF& lf) const {
  Score s;
  count_nodes(lf, fragment_preds_, connectors_, 0, s);
  s.serialization = serialize_lf(lf);
  return s;
}

namespace {

struct Edge {
  std::string cat;
  PartialSem sem;
};

struct Cell {
  std::vector<Edge> edges;
  std::unordered_set<std::string> keys;
  std::unordered_map<std::string, std::vector<std::size_t>> by_cat;
};

}  // namespace

ParseResult SemParser::parse(const Sentence& sentence) const {
  ParseResult result;
  result.sentence_id = sentence.id;
  const int n = static_cast<int>(sentence.tokens.size());
  if (n == 0) {
    result.failure = "empty sentence";
    return result;
  }

  std::multimap<std::string, const GrammarRule*> unary;
  std::multimap<std::pair<std::string, std::string>, const GrammarRule*> binary;
  for (const auto& r : grammar_->rules) {
    if (r.rhs.size() == 1) unary.emplace(r.rhs[0], &r);
    else binary.emplace(std::make_pair(r.rhs[0], r.rhs[1]), &r);
  }

  std::vector<Cell> chart(static_cast<std::size_t>(n) * (n + 1));
  auto cell = [&](int i, int j) -> Cell& { return chart[static_cast<std::size_t>(i) * (n + 1) + j]; };

  auto add = [&](Cell& c, std::string cat, PartialSem sem) -> bool {
    auto key = cat + "#" + sem.key();
    if (!c.keys.insert(std::move(key)).second) return false;
    if (c.edges.size() >= limits_.max_edges_per_cell) {
      throw DataError("chart cell limit exceeded (" + std::to_string(limits_.max_edges_per_cell) + " edges)");
    }
    c.by_cat[cat].push_back(c.edges.size());
    c.edges.push_back({std::move(cat), std::move(sem)});
    return true;
  };

  auto close_unary = [&](Cell& c, std::size_t from) {
    for (std::size_t e = from; e < c.edges.size(); ++e) {
      auto [lo, hi] = unary.equal_range(c.edges[e].cat);
      for (auto it = lo; it != hi; ++it) {
        const PartialSem* kids[1] = {&c.edges[e].sem};
        for (auto& sem : apply(*it->second, kids)) add(c, it->second->lhs, std::move(sem));
      }
    }
  };

  try {
    for (int i = 0; i < n; ++i) {
      auto entries = lexicon_->lookup(sentence.tokens[i]);
      if (entries.empty()) {
        result.failure = "unknown word '" + sentence.tokens[i] + "'";
        return result;
      }
      Cell& c = cell(i, i + 1);
      for (const auto* e : entries) {
        for (auto& sem : lexical(*e, i)) add(c, std::string(category_name(e->category)), std::move(sem));
      }
      close_unary(c, 0);
    }

    for (int len = 2; len <= n; ++len) {
      for (int i = 0; i + len <= n; ++i) {
        const int j = i + len;
        Cell& target = cell(i, j);
        for (int k = i + 1; k < j; ++k) {
          const Cell& left = cell(i, k);
          const Cell& right = cell(k, j);
          for (const auto& [rhs, rule] : binary) {
            auto l = left.by_cat.find(rhs.first);
            auto r = right.by_cat.find(rhs.second);
            if (l == left.by_cat.end() || r == right.by_cat.end()) continue;
            for (auto li : l->second) {
              for (auto ri : r->second) {
                const PartialSem* kids[2] = {&left.edges[li].sem, &right.edges[ri].sem};
                for (auto& sem : apply(*rule, kids)) add(target, rule->lhs, std::move(sem));
              }
            }
          }
        }
        close_unary(target, 0);
      }
    }

    std::map<std::string, Analysis> found;
    auto keep = [&](const PartialSem& sem) {
      if (auto lf = finalize(sem)) {
        auto s = score(*lf);
        auto text = s.serialization;
        found.emplace(std::move(text), Analysis{std::move(*lf), std::move(s)});
      }
    };

    const Cell& top = cell(0, n);
    if (auto it = top.by_cat.find(grammar_->start); it != top.by_cat.end()) {
      for (auto e : it->second) keep(top.edges[e].sem);
    }

    if (found.empty()) {
      // No spanning analysis: cover the sentence with the fewest fragments.
      std::vector<std::vector<std::pair<int, const PartialSem*>>> starts(n);  // (end, sem) per start
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
          for (const auto& cat : fragment_cats_) {
            auto it = cell(i, j).by_cat.find(cat);
            if (it == cell(i, j).by_cat.end()) continue;
            for (auto e : it->second) starts[i].emplace_back(j, &cell(i, j).edges[e].sem);
          }
        }
      }
      const int inf = n + 1;
      std::vector<int> best(n + 1, inf);
      best[n] = 0;
      for (int i = n - 1; i >= 0; --i) {
        for (const auto& [j, sem] : starts[i]) best[i] = std::min(best[i], best[j] + 1);
      }
      if (best[0] < inf) {
        std::vector<const PartialSem*> parts;
        std::size_t covers = 0;
        auto walk = [&](auto&& self, int i) -> void {
          if (covers >= limits_.max_fragment_covers) return;
          if (i == n) {
            ++covers;
            keep(combine_fragments(parts));
            return;
          }
          for (const auto& [j, sem] : starts[i]) {
            if (best[j] + 1 != best[i]) continue;
            parts.push_back(sem);
            self(self, j);
            parts.pop_back();
          }
        };
        walk(walk, 0);
      }
    }

    if (found.empty()) {
      result.failure = "no licensed analysis";
      return result;
    }
    for (auto& [text, a] : found) result.analyses.push_back(std::move(a));
    result.plf_index = select_plf(result.analyses);
  } catch (const Error& e) {
    result.analyses.clear();
    result.failure = e.what();
  }
  return result;
}

std::vector<ParseResult> SemParser::parse_corpus(const std::vector<Sentence>& corpus) const {
  std::vector<ParseResult> out(corpus.size());
  const auto count = static_cast<long>(corpus.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < count; ++i) out[i] = parse(corpus[i]);
  return out;
}

std::vector<ParseResult> SemParser::parse_corpus_serial(const std::vector<Sentence>& corpus) const {
  std::vector<ParseResult> out;
  out.reserve(corpus.size());
  for (const auto& s : corpus) out.push_back(parse(s));
  return out;
}

}  // namespace sortacq
