#include "sortacq/harvest.hpp"

#include "sortacq/errors.hpp"
#include "sortacq/syntax.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sortacq {

using LF = LogicalForm;

ExclusionList ExclusionList::defaults() {
  return {{"and", "equal", "exists", "has_aspect", "qterm", "the"}};
}

ExclusionList ExclusionList::parse(std::string_view text) {
  ExclusionList out;
  for (const auto& c : syntax::read_clauses(text)) {
    if (!c.is_compound("exclude", 1) || c.items[0].is(syntax::Term::Kind::Var)) {
      throw SyntaxError("expected exclude(name)", c.line, c.column);
    }
    out.predicates.insert(c.items[0].text);
  }
  return out;
}

ExclusionList ExclusionList::load(const std::string& path) { return parse(syntax::read_file(path)); }

namespace {

void extract_into(const LF& lf, const ExtractOptions& opt, std::vector<std::size_t>& path,
                  std::vector<SortRule>& out) {
  if (lf.is(LF::Kind::Predication) && !opt.excluded.contains(lf.name())) {
    SortRule r;
    r.predicate = lf.name();
    for (std::size_t i = 0; i < lf.children().size(); ++i) {
      const auto& a = lf.children()[i].annotation();
      if (!a) {
        path.push_back(i);
        auto where = path_string(path);
        path.pop_back();
        throw DataError("unannotated node at " + where);
      }
      r.args.push_back(*a);
    }
    if (!lf.annotation()) throw DataError("unannotated node at " + path_string(path));
    r.result = *lf.annotation();
    out.push_back(std::move(r));
  } else if (lf.is(LF::Kind::Constant) && opt.include_constants && !opt.excluded.contains(lf.name())) {
    if (!lf.annotation()) throw DataError("unannotated node at " + path_string(path));
    SortRule r;
    r.predicate = lf.name();
    r.result = *lf.annotation();
    out.push_back(std::move(r));
  }
  for (std::size_t i = 0; i < lf.children().size(); ++i) {
    path.push_back(i);
    extract_into(lf.children()[i], opt, path, out);
    path.pop_back();
  }
}

struct Tally {
  SortRule rule;
  long invocations = 0;
  long lf_count = 0;
  // (corpus position, sentence id), kept as the smallest positions seen
  std::set<std::pair<std::size_t, int>> samples;
};

using Tallies = std::map<std::string, Tally>;

void add_samples(Tally& t, const std::set<std::pair<std::size_t, int>>& more, std::size_t cap) {
  for (const auto& s : more) {
    t.samples.insert(s);
    if (t.samples.size() > cap) t.samples.erase(std::prev(t.samples.end()));
  }
}

void merge_into(Tallies& into, const Tallies& from, std::size_t cap) {
  for (const auto& [key, t] : from) {
    auto [it, fresh] = into.try_emplace(key, t);
    if (fresh) continue;
    it->second.invocations += t.invocations;
    it->second.lf_count += t.lf_count;
    add_samples(it->second, t.samples, cap);
  }
}

void tally_result(const ParseResult& r, std::size_t position, HarvestMode mode, const ExtractOptions& opt,
                  std::size_t cap, Tallies& out) {
  if (!r.ok()) return;
  auto tally_lf = [&](const LF& lf) {
    std::map<std::string, std::pair<SortRule, long>> here;
    for (auto& rule : extract_rules(lf, opt)) {
      if (rule.schematic() || rule.result.has_variables()) continue;
      bool vars = false;
      for (const auto& a : rule.args) vars = vars || a.has_variables();
      if (vars) continue;
      auto key = rule_key(rule);
      auto [it, fresh] = here.try_emplace(key, std::move(rule), 0);
      ++it->second.second;
    }
    for (auto& [key, entry] : here) {
      auto [it, fresh] = out.try_emplace(key, Tally{entry.first, 0, 0, {}});
      it->second.invocations += entry.second;
      it->second.lf_count += 1;
      add_samples(it->second, {{position, r.sentence_id}}, cap);
    }
  };
  if (mode == HarvestMode::PLFs) {
    tally_lf(r.plf().lf);
  } else {
    for (const auto& a : r.analyses) tally_lf(a.lf);
  }
}

std::vector<RuleStats> finish(const Tallies& tallies) {
  std::vector<RuleStats> out;
  for (const auto& [key, t] : tallies) {
    RuleStats s;
    s.rule = t.rule;
    s.rule.kind = RuleKind::Sor;
    s.invocations = t.invocations;
    s.lf_count = t.lf_count;
    s.theta_bar = Rational(t.invocations, t.lf_count);
    for (const auto& [pos, id] : t.samples) s.sample_sentences.push_back(id);
    out.push_back(std::move(s));
  }
  std::stable_sort(out.begin(), out.end(), [](const RuleStats& a, const RuleStats& b) {
    return std::make_tuple(a.rule.predicate, a.rule.arity(), to_string(a.rule)) <
           std::make_tuple(b.rule.predicate, b.rule.arity(), to_string(b.rule));
  });
  return out;
}

}  // namespace

std::vector<SortRule> extract_rules(const LogicalForm& lf, const ExtractOptions& options) {
  std::vector<SortRule> out;
  std::vector<std::size_t> path;
  extract_into(lf, options, path, out);
  return out;
}

std::string_view mode_name(HarvestMode m) { return m == HarvestMode::LFs ? "lfs" : "plfs"; }

std::optional<HarvestMode> parse_mode(std::string_view s) {
  if (s == "lfs") return HarvestMode::LFs;
  if (s == "plfs") return HarvestMode::PLFs;
  return std::nullopt;
}

std::string_view family_name(ProbFamily f) {
  switch (f) {
    case ProbFamily::Global: return "global";
    case ProbFamily::GivenPred: return "pred";
    case ProbFamily::GivenPredArg1: return "arg1";
  }
  return "?";
}

std::optional<ProbFamily> parse_family(std::string_view s) {
  for (auto f : {ProbFamily::Global, ProbFamily::GivenPred, ProbFamily::GivenPredArg1}) {
    if (family_name(f) == s) return f;
  }
  return std::nullopt;
}

const Rational& RuleStats::probability(ProbFamily f) const {
  switch (f) {
    case ProbFamily::Global: return p_global;
    case ProbFamily::GivenPred: return p_given_pred;
    case ProbFamily::GivenPredArg1: return p_given_pred_arg1;
  }
  return p_global;
}

std::string arg1_class(const SortRule& r) {
  if (r.args.empty()) return r.predicate;
  int counter = 0;
  return r.predicate + "|" + canonical_string(r.args.front(), counter);
}

std::vector<RuleStats> harvest_corpus(const std::vector<ParseResult>& results, HarvestMode mode,
                                      const ExtractOptions& options, std::size_t sample_cap) {
  Tallies total;
  const auto count = static_cast<long>(results.size());
#pragma omp parallel
  {
    Tallies local;
#pragma omp for schedule(dynamic) nowait
    for (long i = 0; i < count; ++i) {
      tally_result(results[i], static_cast<std::size_t>(i), mode, options, sample_cap, local);
    }
#pragma omp critical(sortacq_harvest_merge)
    merge_into(total, local, sample_cap);
  }
  return finish(total);
}

std::vector<RuleStats> harvest_corpus_serial(const std::vector<ParseResult>& results, HarvestMode mode,
                                             const ExtractOptions& options, std::size_t sample_cap) {
  Tallies total;
  for (std::size_t i = 0; i < results.size(); ++i) {
    tally_result(results[i], i, mode, options, sample_cap, total);
  }
  return finish(total);
}

std::vector<RuleStats> compute_probabilities(std::vector<RuleStats> stats) {
  Rational all{0};
  std::map<std::string, Rational> by_pred, by_arg1;
  for (const auto& s : stats) {
    all += s.theta_bar;
    by_pred[s.rule.predicate] += s.theta_bar;
    by_arg1[arg1_class(s.rule)] += s.theta_bar;
  }
  for (auto& s : stats) {
    auto ratio = [&](const Rational& denom) { return denom == 0 ? Rational(0) : Rational(s.theta_bar / denom); };
    s.p_global = ratio(all);
    s.p_given_pred = ratio(by_pred[s.rule.predicate]);
    s.p_given_pred_arg1 = ratio(by_arg1[arg1_class(s.rule)]);
  }
  return stats;
}

std::string format_decimal(const Rational& r, int digits) {
  using boost::multiprecision::cpp_int;
  cpp_int scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  const bool neg = r < 0;
  Rational a = neg ? Rational(-r) : r;
  // round half up on the magnitude
  cpp_int scaled = (boost::multiprecision::numerator(a) * scale * 2 + boost::multiprecision::denominator(a)) /
                   (boost::multiprecision::denominator(a) * 2);
  cpp_int whole = scaled / scale;
  std::string frac = cpp_int(scaled % scale).str();
  frac.insert(0, static_cast<std::size_t>(digits) - frac.size(), '0');
  std::string out = (neg && scaled != 0 ? "-" : "") + whole.str();
  if (digits > 0) out += "." + frac;
  return out;
}

Rational parse_decimal(std::string_view text) {
  using boost::multiprecision::cpp_int;
  std::string s(text);
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s.erase(0, 1);
  }
  auto dot = s.find('.');
  std::string whole = s.substr(0, dot);
  std::string frac = dot == std::string::npos ? "" : s.substr(dot + 1);
  if ((whole.empty() && frac.empty()) || s.find_first_not_of("0123456789.") != std::string::npos ||
      std::count(s.begin(), s.end(), '.') > 1) {
    throw DataError("malformed decimal '" + std::string(text) + "'");
  }
  cpp_int num(whole.empty() ? "0" : whole);
  cpp_int den = 1;
  for (char c : frac) {
    num = num * 10 + (c - '0');
    den *= 10;
  }
  Rational r(num, den);
  return neg ? Rational(-r) : r;
}

std::string serialize_harvest(const std::vector<RuleStats>& stats) {
  std::ostringstream out;
  for (const auto& s : stats) {
    out << to_string(s.rule) << "\n";
    out << "%% theta=" << s.invocations << " lfs=" << s.lf_count << " theta_bar=" << format_decimal(s.theta_bar)
        << " p=" << format_decimal(s.p_global) << " p_pred=" << format_decimal(s.p_given_pred)
        << " p_arg=" << format_decimal(s.p_given_pred_arg1) << " sents=[";
    for (std::size_t i = 0; i < s.sample_sentences.size(); ++i) {
      if (i) out << ",";
      out << s.sample_sentences[i];
    }
    out << "]\n";
  }
  return out.str();
}

namespace {

void parse_metadata(const std::string& line, int lineno, RuleStats& s) {
  std::istringstream in(line.substr(2));
  std::string field;
  std::set<std::string> seen;
  while (in >> field) {
    auto eq = field.find('=');
    if (eq == std::string::npos) throw SyntaxError("malformed metadata field '" + field + "'", lineno, 1);
    auto key = field.substr(0, eq);
    auto value = field.substr(eq + 1);
    seen.insert(key);
    try {
      if (key == "theta") {
        s.invocations = std::stol(value);
      } else if (key == "lfs") {
        s.lf_count = std::stol(value);
      } else if (key == "theta_bar") {
        s.theta_bar = parse_decimal(value);
      } else if (key == "p") {
        s.p_global = parse_decimal(value);
      } else if (key == "p_pred") {
        s.p_given_pred = parse_decimal(value);
      } else if (key == "p_arg") {
        s.p_given_pred_arg1 = parse_decimal(value);
      } else if (key == "sents") {
        if (value.size() < 2 || value.front() != '[' || value.back() != ']') throw DataError("sents");
        std::istringstream ids(value.substr(1, value.size() - 2));
        std::string id;
        while (std::getline(ids, id, ',')) s.sample_sentences.push_back(std::stoi(id));
      } else {
        throw SyntaxError("unknown metadata field '" + key + "'", lineno, 1);
      }
    } catch (const SyntaxError&) {
      throw;
    } catch (const std::exception&) {
      throw SyntaxError("malformed value for '" + key + "'", lineno, 1);
    }
  }
  // theta and lfs give the exact value when the decimal was rounded
  if (seen.contains("theta") && seen.contains("lfs") && s.lf_count > 0) {
    s.theta_bar = Rational(s.invocations, s.lf_count);
  }
}

}  // namespace

std::vector<RuleStats> parse_harvest(std::string_view text) {
  std::vector<RuleStats> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  bool meta_allowed = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (line.compare(first, 2, "%%") == 0) {
      if (!meta_allowed) throw SyntaxError("metadata line without a preceding rule", lineno, 1);
      parse_metadata(line.substr(first), lineno, out.back());
      meta_allowed = false;
      continue;
    }
    if (line[first] == '%') continue;
    RuleStats s;
    try {
      s.rule = parse_rule(line);
    } catch (const SyntaxError& e) {
      throw SyntaxError(e.what(), lineno, e.column());
    }
    out.push_back(std::move(s));
    meta_allowed = true;
  }
  return out;
}

std::vector<RuleStats> load_harvest(const std::string& path) { return parse_harvest(syntax::read_file(path)); }

}  // namespace sortacq
