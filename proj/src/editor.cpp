#include "sortacq/editor.hpp"

#include "sortacq/pipeline.hpp"
#include "sortacq/syntax.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>
#include <set>

namespace sortacq {

namespace fs = std::filesystem;

namespace {

EditorError not_found(const std::string& what) { return EditorError(404, "not_found", what); }

}  // namespace

EditorSession::EditorSession(fs::path workspace) : workspace_(std::move(workspace)) {
  auto hier = workspace_ / "hierarchy.pl";
  if (!fs::exists(hier)) throw DataError("workspace has no hierarchy.pl: " + workspace_.string());
  hierarchy_ = SortHierarchy::load(hier.string());
  if (auto h = workspace_ / "harvest.txt"; fs::exists(h)) initial_ = load_harvest(h.string());
  for (auto& s : initial_) {
    validate(s.rule, hierarchy_);
    rules_.emplace(next_id_++, s);
  }
  if (auto c = workspace_ / "corpus.txt"; fs::exists(c)) corpus_ = load_corpus(c.string());
  auto ex = workspace_ / "exclusions.pl";
  excluded_ = fs::exists(ex) ? ExclusionList::load(ex.string()) : ExclusionList::defaults();
}

RulePage EditorSession::list_rules(const RuleQuery& q) const {
  std::shared_lock lock(mutex_);
  if (q.mapping && !has_mapping_) throw EditorError(409, "no_mapping", "no mapping has been run in this session");
  std::vector<std::pair<int, const RuleStats*>> hits;
  for (const auto& [id, s] : rules_) {
    if (q.functor && s.rule.predicate != *q.functor) continue;
    if (q.min_p && s.probability(q.family) < *q.min_p) continue;
    if (q.mapping) {
      auto it = mapping_.find(id);
      if (it == mapping_.end() || it->second != *q.mapping) continue;
    }
    hits.emplace_back(id, &s);
  }
  std::stable_sort(hits.begin(), hits.end(), [&](const auto& a, const auto& b) {
    if (a.second->rule.predicate != b.second->rule.predicate) return a.second->rule.predicate < b.second->rule.predicate;
    const auto& pa = a.second->probability(q.family);
    const auto& pb = b.second->probability(q.family);
    if (pa != pb) return pa > pb;
    return a.first < b.first;
  });
  RulePage page;
  page.total = hits.size();
  for (std::size_t i = q.offset; i < hits.size(); ++i) {
    if (q.limit && page.rules.size() >= q.limit) break;
    page.rules.emplace_back(hits[i].first, *hits[i].second);
  }
  return page;
}

RuleStats EditorSession::get_rule(int id) const {
  std::shared_lock lock(mutex_);
  auto it = rules_.find(id);
  if (it == rules_.end()) throw not_found("no rule with id " + std::to_string(id));
  return it->second;
}

void EditorSession::delete_rule(int id) {
  std::unique_lock lock(mutex_);
  if (rules_.erase(id) == 0) throw not_found("no rule with id " + std::to_string(id));
  mapping_.erase(id);
  dirty_ = true;
  append_journal("delete\t" + std::to_string(id));
}

int EditorSession::insert_rule(const std::string& text) {
  SortRule rule;
  try {
    rule = parse_rule(text);
  } catch (const SyntaxError& e) {
    throw EditorError(400, "parse_error", e.what());
  }
  rule.kind = RuleKind::Sor;
  std::unique_lock lock(mutex_);
  try {
    validate(rule, hierarchy_);
  } catch (const HierarchyError& e) {
    throw EditorError(422, "unknown_sort", e.what());
  }
  const auto key = rule_key(rule);
  for (const auto& [id, s] : rules_) {
    if (rule_key(s.rule) == key) {
      throw EditorError(409, "duplicate", "rule already present with id " + std::to_string(id));
    }
  }
  const int id = next_id_++;
  RuleStats s;
  s.rule = rule;
  rules_.emplace(id, s);
  dirty_ = true;
  append_journal("insert\t" + std::to_string(id) + "\t" + to_string(rule));
  return id;
}

std::vector<Sentence> EditorSession::rule_sentences(int id) const {
  std::shared_lock lock(mutex_);
  auto it = rules_.find(id);
  if (it == rules_.end()) throw not_found("no rule with id " + std::to_string(id));
  if (!corpus_) throw EditorError(409, "no_corpus", "workspace has no corpus.txt");
  auto ids = it->second.sample_sentences;
  std::sort(ids.begin(), ids.end());
  std::vector<Sentence> out;
  for (int sid : ids) {
    auto s = std::find_if(corpus_->begin(), corpus_->end(), [&](const Sentence& x) { return x.id == sid; });
    if (s == corpus_->end()) {
      throw EditorError(422, "data_error", "sample sentence " + std::to_string(sid) + " is not in the corpus");
    }
    out.push_back(*s);
  }
  return out;
}

std::map<std::string, std::size_t> EditorSession::functors() const {
  std::shared_lock lock(mutex_);
  std::map<std::string, std::size_t> out;
  for (const auto& [id, s] : rules_) ++out[s.rule.predicate];
  return out;
}

std::vector<std::string> EditorSession::functors_by_argument(const std::string& sort) const {
  std::shared_lock lock(mutex_);
  if (!hierarchy_.contains(sort)) throw EditorError(422, "unknown_sort", "unknown sort '" + sort + "'");
  const auto query = SortTerm::atom(sort);
  std::set<std::string> out;
  for (const auto& [id, s] : rules_) {
    for (const auto& a : s.rule.args) {
      if (subsumes(query, a, hierarchy_)) {
        out.insert(s.rule.predicate);
        break;
      }
    }
  }
  return {out.begin(), out.end()};
}

MappingReport EditorSession::run_mapping(const std::optional<std::string>& reference_path) {
  fs::path path = reference_path ? fs::path(*reference_path) : workspace_ / "reference.sor";
  if (!fs::exists(path)) throw EditorError(404, "not_found", "no reference file " + path.string());
  std::vector<SortRule> reference;
  try {
    reference = load_rules(path.string());
  } catch (const SyntaxError& e) {
    throw EditorError(400, "parse_error", e.what());
  }
  std::unique_lock lock(mutex_);
  std::vector<SortRule> corpus;
  std::vector<int> ids;
  for (const auto& [id, s] : rules_) {
    corpus.push_back(s.rule);
    ids.push_back(id);
  }
  MappingReport report;
  try {
    report = map_rules(corpus, reference, hierarchy_);
  } catch (const HierarchyError& e) {
    throw EditorError(422, "unknown_sort", e.what());
  }
  std::map<std::string, MappingCategory> by_key;
  for (const auto& e : report.entries) by_key.emplace(rule_key(e.rule), e.category);
  mapping_.clear();
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (auto it = by_key.find(rule_key(corpus[i])); it != by_key.end()) mapping_[ids[i]] = it->second;
  }
  has_mapping_ = true;
  return report;
}

std::optional<MappingCategory> EditorSession::mapping_of(int id) const {
  std::shared_lock lock(mutex_);
  auto it = mapping_.find(id);
  if (it == mapping_.end()) return std::nullopt;
  return it->second;
}

fs::path EditorSession::save() {
  std::unique_lock lock(mutex_);
  std::vector<RuleStats> out;
  for (const auto& [id, s] : rules_) out.push_back(s);
  auto path = workspace_ / "harvest.txt";
  write_file_atomic(path, serialize_harvest(out));
  dirty_ = false;
  append_journal("save\t" + path.string());
  return path;
}

ExclusionList EditorSession::excluded() const {
  std::shared_lock lock(mutex_);
  return excluded_;
}

void EditorSession::set_hierarchy(const std::string& path) {
  SortHierarchy h;
  try {
    h = SortHierarchy::load(path);
  } catch (const SyntaxError& e) {
    throw EditorError(400, "parse_error", e.what());
  } catch (const HierarchyError& e) {
    throw EditorError(422, "hierarchy_error", e.what());
  } catch (const Error& e) {
    throw EditorError(404, "not_found", e.what());
  }
  std::unique_lock lock(mutex_);
  for (const auto& [id, s] : rules_) {
    try {
      validate(s.rule, h);
    } catch (const HierarchyError& e) {
      throw EditorError(422, "hierarchy_error", "rule " + std::to_string(id) + ": " + e.what());
    }
  }
  hierarchy_ = std::move(h);
  mapping_.clear();
  has_mapping_ = false;
  append_journal("hierarchy\t" + path);
}

std::vector<WhiteboardNote> EditorSession::whiteboard() const {
  std::shared_lock lock(mutex_);
  return notes_;
}

WhiteboardNote EditorSession::add_note(std::string text, std::optional<int> sentence_id, std::optional<int> rule_id) {
  std::unique_lock lock(mutex_);
  if (text.empty()) throw EditorError(400, "bad_request", "empty note");
  if (rule_id && !rules_.contains(*rule_id)) throw not_found("no rule with id " + std::to_string(*rule_id));
  if (sentence_id && corpus_ &&
      std::none_of(corpus_->begin(), corpus_->end(), [&](const Sentence& s) { return s.id == *sentence_id; })) {
    throw not_found("no sentence with id " + std::to_string(*sentence_id));
  }
  WhiteboardNote n{static_cast<int>(notes_.size()) + 1, std::move(text), sentence_id, rule_id};
  notes_.push_back(n);
  std::string flat = n.text;
  std::replace(flat.begin(), flat.end(), '\n', ' ');
  std::replace(flat.begin(), flat.end(), '\t', ' ');
  append_journal("note\t" + std::to_string(n.id) + "\t" + flat);
  return n;
}

bool EditorSession::dirty() const {
  std::shared_lock lock(mutex_);
  return dirty_;
}

std::size_t EditorSession::size() const {
  std::shared_lock lock(mutex_);
  return rules_.size();
}

std::vector<std::pair<int, RuleStats>> EditorSession::rules() const {
  std::shared_lock lock(mutex_);
  return {rules_.begin(), rules_.end()};
}

std::vector<std::string> EditorSession::journal() const {
  std::shared_lock lock(mutex_);
  return journal_;
}

std::optional<int> EditorSession::token_result(const std::string& token) const {
  std::shared_lock lock(mutex_);
  auto it = tokens_.find(token);
  if (it == tokens_.end()) return std::nullopt;
  return it->second;
}

void EditorSession::remember_token(const std::string& token, int id) {
  std::unique_lock lock(mutex_);
  tokens_.emplace(token, id);
}

void EditorSession::append_journal(std::string line) {
  // caller holds the unique lock
  std::ofstream out(workspace_ / "journal.log", std::ios::app);
  out << line << "\n";
  journal_.push_back(std::move(line));
}

std::vector<std::pair<int, RuleStats>> replay_journal(const std::vector<RuleStats>& initial,
                                                      const std::vector<std::string>& journal) {
  std::map<int, RuleStats> rules;
  int id = 1;
  for (const auto& s : initial) rules.emplace(id++, s);
  int lineno = 0;
  for (const auto& line : journal) {
    ++lineno;
    auto tab = line.find('\t');
    auto op = line.substr(0, tab);
    auto field = [&](std::size_t from, std::size_t to) {
      try {
        std::size_t used = 0;
        auto text = line.substr(from, to == std::string::npos ? to : to - from);
        int v = std::stoi(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
      } catch (const std::exception&) {
        throw DataError("journal line " + std::to_string(lineno) + ": malformed id");
      }
    };
    if (tab == std::string::npos) throw DataError("journal line " + std::to_string(lineno) + ": missing fields");
    if (op == "delete") {
      rules.erase(field(tab + 1, std::string::npos));
    } else if (op == "insert") {
      auto tab2 = line.find('\t', tab + 1);
      if (tab2 == std::string::npos) throw DataError("journal line " + std::to_string(lineno) + ": missing rule");
      RuleStats s;
      s.rule = parse_rule(line.substr(tab2 + 1));
      rules.emplace(field(tab + 1, tab2), std::move(s));
    } else if (op != "save" && op != "hierarchy" && op != "note") {
      throw DataError("journal line " + std::to_string(lineno) + ": unknown operation '" + op + "'");
    }
  }
  return {rules.begin(), rules.end()};
}

}  // namespace sortacq
