#include "sortacq/grammar.hpp"

#include "sortacq/errors.hpp"
#include "sortacq/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace sortacq {

using syntax::Term;
using K = syntax::Term::Kind;

std::string_view category_name(Category c) {
  switch (c) {
    case Category::Noun: return "noun";
    case Category::Verb: return "verb";
    case Category::Adj: return "adj";
    case Category::Adv: return "adv";
    case Category::Prep: return "prep";
    case Category::Det: return "det";
    case Category::Name: return "name";
    case Category::Number: return "number";
    case Category::Tool: return "tool";
  }
  return "?";
}

std::optional<Category> parse_lex_category(std::string_view s) {
  for (auto c : {Category::Noun, Category::Verb, Category::Adj, Category::Adv, Category::Prep,
                 Category::Det, Category::Name, Category::Number, Category::Tool}) {
    if (category_name(c) == s) return c;
  }
  return std::nullopt;
}

namespace {

[[noreturn]] void bad(const Term& t, const std::string& msg) {
  throw SyntaxError(msg, t.line, t.column);
}

const std::string& name_of(const Term& t, const char* what) {
  if (!t.is(K::Name) && !t.is(K::Int)) bad(t, std::string("expected ") + what);
  return t.text;
}

int index_of(const Term& t) {
  if (!t.is(K::Int)) bad(t, "expected an rhs position");
  return std::stoi(t.text);
}

}  // namespace

Lexicon::Lexicon(std::vector<LexEntry> entries) : entries_(std::move(entries)) {
  std::set<std::tuple<std::string, Category, std::string>> seen;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    if (!seen.emplace(e.word, e.category, e.predicate).second) {
      throw DataError("duplicate lexical entry for '" + e.word + "'");
    }
    by_word_[e.word].push_back(i);
  }
}

Lexicon Lexicon::parse(std::string_view text) {
  std::vector<LexEntry> entries;
  std::vector<std::pair<std::string, std::string>> aspects;
  for (const auto& c : syntax::read_clauses(text)) {
    if (c.is_compound("aspect", 2)) {
      aspects.emplace_back(name_of(c.items[0], "word"), name_of(c.items[1], "aspect constant"));
      continue;
    }
    if (!(c.is_compound("lex", 3) || c.is_compound("lex", 4))) bad(c, "expected lex/3, lex/4 or aspect/2");
    LexEntry e;
    e.word = name_of(c.items[0], "word");
    for (auto& ch : e.word) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    auto cat = parse_lex_category(name_of(c.items[1], "category"));
    if (!cat) bad(c.items[1], "unknown lexical category '" + c.items[1].text + "'");
    e.category = *cat;
    e.predicate = name_of(c.items[2], "predicate");
    if (c.items.size() == 4) e.inherent = sort_from_term(c.items[3]);
    entries.push_back(std::move(e));
  }
  for (const auto& [word, constant] : aspects) {
    bool found = false;
    for (auto& e : entries) {
      if (e.word == word && e.category == Category::Verb) {
        e.aspect = constant;
        found = true;
      }
    }
    if (!found) throw DataError("aspect/2 for '" + word + "' names no verb entry");
  }
  return Lexicon(std::move(entries));
}

Lexicon Lexicon::load(const std::string& path) { return parse(syntax::read_file(path)); }

std::vector<const LexEntry*> Lexicon::lookup(std::string_view word) const {
  std::vector<const LexEntry*> out;
  auto it = by_word_.find(word);
  if (it == by_word_.end()) return out;
  for (auto i : it->second) out.push_back(&entries_[i]);
  return out;
}

NameSortTable parse_name_sorts(std::string_view text) {
  NameSortTable table;
  for (const auto& c : syntax::read_clauses(text)) {
    if (!c.is_compound("name", 2)) bad(c, "expected name(Constant, Sort)");
    const auto& name = name_of(c.items[0], "constant name");
    if (!table.emplace(name, sort_from_term(c.items[1])).second) {
      throw DataError("duplicate name sort for '" + name + "'");
    }
  }
  return table;
}

NameSortTable load_name_sorts(const std::string& path) { return parse_name_sorts(syntax::read_file(path)); }

Grammar Grammar::parse(std::string_view text) {
  Grammar g;
  for (const auto& c : syntax::read_clauses(text)) {
    if (c.is_compound("start", 1)) {
      g.start = name_of(c.items[0], "start category");
      continue;
    }
    if (c.is_compound("implicit_determiner", 1)) {
      g.implicit_determiner = name_of(c.items[0], "determiner");
      continue;
    }
    if (!c.is_compound("rule", 3)) bad(c, "expected rule(lhs, [rhs...], op)");
    GrammarRule r;
    r.lhs = name_of(c.items[0], "category");
    if (!c.items[1].is(K::List) || c.items[1].items.empty() || c.items[1].items.size() > 2) {
      bad(c.items[1], "rhs must list one or two categories");
    }
    for (const auto& s : c.items[1].items) r.rhs.push_back(name_of(s, "category"));
    const auto& op = c.items[2];
    const int n = static_cast<int>(r.rhs.size());
    auto in_range = [&](int i, bool allow_zero) {
      if (i < (allow_zero ? 0 : 1) || i > n) bad(op, "rhs position out of range");
    };
    if (op.is_compound("head", 1)) {
      r.op = SemOp::HeadOnly;
      r.first = index_of(op.items[0]);
      in_range(r.first, false);
      if (n != 1) bad(op, "head/1 requires a unary rule");
    } else if (op.is_compound("connect", 3)) {
      r.op = SemOp::Connect;
      r.predicate = name_of(op.items[0], "connector predicate");
      r.first = index_of(op.items[1]);
      r.second = index_of(op.items[2]);
      in_range(r.first, false);
      in_range(r.second, false);
      if (n != 2 || r.first == r.second) bad(op, "connect/3 needs two distinct positions of a binary rule");
    } else if (op.is_compound("quantify", 2)) {
      r.op = SemOp::Quantify;
      r.first = index_of(op.items[0]);
      r.second = index_of(op.items[1]);
      in_range(r.first, true);
      in_range(r.second, false);
      if (r.first == 0 ? n != 1 : (n != 2 || r.first == r.second)) bad(op, "malformed quantify/2");
    } else if (op.is(K::Name) && op.text == "nn_rel") {
      r.op = SemOp::NounNoun;
      r.predicate = "n_n_rel";
      if (n != 2) bad(op, "nn_rel requires a binary rule");
      r.first = 1;
      r.second = 2;
    } else if (op.is_compound("fragment", 1)) {
      r.op = SemOp::Fragment;
      r.predicate = name_of(op.items[0], "fragment predicate");
      if (n != 1) bad(op, "fragment/1 requires a unary rule");
      r.first = 1;
    } else {
      bad(op, "unknown semantic operation");
    }
    g.rules.push_back(std::move(r));
  }
  return g;
}

Grammar Grammar::load(const std::string& path) { return parse(syntax::read_file(path)); }

std::vector<std::string> Grammar::connector_predicates() const {
  std::set<std::string> out;
  for (const auto& r : rules) {
    if ((r.op == SemOp::Connect && r.predicate != kRelConnector) || r.op == SemOp::NounNoun) {
      out.insert(r.predicate);
    }
  }
  return {out.begin(), out.end()};
}

std::vector<std::string> Grammar::fragment_predicates() const {
  std::set<std::string> out;
  for (const auto& r : rules) {
    if (r.op == SemOp::Fragment) out.insert(r.predicate);
  }
  return {out.begin(), out.end()};
}

std::vector<Sentence> parse_corpus(std::string_view text) {
  std::vector<Sentence> out;
  std::set<int> ids;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) throw SyntaxError("expected id<TAB>sentence", lineno, 1);
    Sentence s;
    try {
      std::size_t used = 0;
      s.id = std::stoi(line.substr(0, tab), &used);
      if (used != tab) throw std::invalid_argument("id");
    } catch (const std::exception&) {
      throw SyntaxError("malformed sentence id", lineno, 1);
    }
    s.text = line.substr(tab + 1);
    std::istringstream words(s.text);
    std::string w;
    while (words >> w) {
      while (!w.empty() && std::string_view("?.,!").find(w.back()) != std::string_view::npos) w.pop_back();
      if (w.empty()) continue;
      for (auto& ch : w) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
      s.tokens.push_back(w);
    }
    if (s.tokens.empty()) throw SyntaxError("empty sentence", lineno, static_cast<int>(tab) + 2);
    if (!ids.insert(s.id).second) throw DataError("duplicate sentence id " + std::to_string(s.id));
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<Sentence> load_corpus(const std::string& path) { return parse_corpus(syntax::read_file(path)); }

}  // namespace sortacq
