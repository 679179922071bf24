#include "sortacq/pipeline.hpp"

#include "sortacq/errors.hpp"
#include "sortacq/syntax.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

namespace sortacq {

namespace fs = std::filesystem;

void write_file_atomic(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

WorkspaceLock::WorkspaceLock(const fs::path& dir) : path_(dir / ".sortacq.lock") {
  fs::create_directories(dir);
  int fd = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
  if (fd < 0) {
    if (errno == EEXIST) throw DataError("workspace " + dir.string() + " is locked by another run");
    throw Error("cannot create lock " + path_.string() + ": " + std::strerror(errno));
  }
  auto pid = std::to_string(::getpid()) + "\n";
  [[maybe_unused]] auto n = ::write(fd, pid.data(), pid.size());
  ::close(fd);
}

WorkspaceLock::~WorkspaceLock() {
  std::error_code ec;
  fs::remove(path_, ec);
}

std::vector<RuleStats> apply_filter(const std::vector<RuleStats>& stats, const ThresholdFilter& f) {
  std::vector<RuleStats> out;
  for (const auto& s : stats) {
    if (s.probability(f.family) >= f.threshold) out.push_back(s);
  }
  return out;
}

std::vector<RuleStats> reference_filter(const std::vector<RuleStats>& stats, const std::vector<SortRule>& reference,
                                        const SortHierarchy& h) {
  std::vector<RuleStats> out;
  for (const auto& s : stats) {
    if (compare_rule(s.rule, reference, h) != MappingCategory::Incompatible) out.push_back(s);
  }
  return out;
}

RuleDiff diff_rules(const std::vector<SortRule>& a, const std::vector<SortRule>& b) {
  std::set<std::string> ka, kb;
  for (const auto& r : a) ka.insert(rule_key(r));
  for (const auto& r : b) kb.insert(rule_key(r));
  RuleDiff d;
  std::set<std::string> seen;
  for (const auto& r : b) {
    auto k = rule_key(r);
    if (!ka.contains(k) && seen.insert(k).second) d.added.push_back(r);
  }
  seen.clear();
  for (const auto& r : a) {
    auto k = rule_key(r);
    if (!kb.contains(k) && seen.insert(k).second) d.removed.push_back(r);
  }
  return d;
}

RuleDiff diff_rule_files(const std::string& a_path, const std::string& b_path) {
  return diff_rules(load_rules(a_path), load_rules(b_path));
}

std::string format_diff(const RuleDiff& d) {
  std::string out;
  for (const auto& r : d.added) out += "+ " + to_string(r) + "\n";
  for (const auto& r : d.removed) out += "- " + to_string(r) + "\n";
  return out;
}

std::string serialize_parse_results(const std::vector<ParseResult>& results) {
  std::ostringstream out;
  for (const auto& r : results) {
    if (!r.ok()) {
      std::string msg = r.failure.value_or("no analysis");
      for (auto& c : msg) {
        if (c == '\t' || c == '\n') c = ' ';
      }
      out << r.sentence_id << "\tFAIL\t" << msg << "\n";
      continue;
    }
    for (std::size_t k = 0; k < r.analyses.size(); ++k) {
      const auto& a = r.analyses[k];
      out << r.sentence_id << "\t" << k << "\t" << a.score.fragments << "," << a.score.predications << ","
          << a.score.depth_sum << "\t" << (k == r.plf_index ? "*" : "-") << "\t" << serialize_lf(a.lf) << "\n";
    }
  }
  return out.str();
}

std::vector<ParseResult> parse_parse_results(std::string_view text, const SortHierarchy& h) {
  std::vector<ParseResult> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::size_t start = 0;
    for (int i = 0; i < 4; ++i) {
      auto tab = line.find('\t', start);
      if (tab == std::string::npos) break;
      f.push_back(line.substr(start, tab - start));
      start = tab + 1;
    }
    f.push_back(line.substr(start));
    try {
      const int id = std::stoi(f.at(0));
      if (f.at(1) == "FAIL") {
        ParseResult r;
        r.sentence_id = id;
        // the message may itself have been split on tabs above
        r.failure = line.substr(line.find('\t', line.find('\t') + 1) + 1);
        out.push_back(std::move(r));
        continue;
      }
      if (f.size() != 5) throw SyntaxError("expected 5 tab-separated fields", lineno, 1);
      if (out.empty() || out.back().sentence_id != id || out.back().failure) {
        ParseResult r;
        r.sentence_id = id;
        out.push_back(std::move(r));
      }
      ParseResult& r = out.back();
      if (static_cast<std::size_t>(std::stoul(f[1])) != r.analyses.size()) {
        throw SyntaxError("analysis index out of sequence", lineno, 1);
      }
      Analysis a{parse_lf(f[4], h), {}};
      std::istringstream sc(f[2]);
      char c1 = 0, c2 = 0;
      if (!(sc >> a.score.fragments >> c1 >> a.score.predications >> c2 >> a.score.depth_sum) || c1 != ',' ||
          c2 != ',') {
        throw SyntaxError("malformed score", lineno, 1);
      }
      a.score.serialization = serialize_lf(a.lf);
      if (f[3] == "*") r.plf_index = r.analyses.size();
      r.analyses.push_back(std::move(a));
    } catch (const SyntaxError& e) {
      throw SyntaxError(e.what(), lineno, e.column());
    } catch (const std::logic_error&) {
      throw SyntaxError("malformed parse record", lineno, 1);
    }
  }
  return out;
}

IterationState IterationState::next() const {
  IterationState s;
  s.iteration = iteration + 1;
  s.rule_file = next_rule_file;
  return s;
}

std::vector<SortRule> next_rule_set(const std::vector<RuleStats>& kept, const std::vector<SortRule>& previous,
                                    const ExclusionList& excluded) {
  std::vector<SortRule> out;
  std::set<std::string> seen;
  auto push = [&](SortRule r) {
    if (seen.insert(rule_key(r)).second) out.push_back(std::move(r));
  };
  for (const auto& s : kept) {
    SortRule r = s.rule;
    r.kind = RuleKind::Sor;
    push(std::move(r));
  }
  for (const auto& r : previous) {
    if (r.arity() == 0 || excluded.contains(r.predicate)) push(r);
  }
  return out;
}

IterationState run_iteration(const IterationState& state, const Domain& domain, const IterationOptions& options) {
  if (state.iteration < 1) throw DataError("iteration numbers start at 1");
  IterationState done = state;
  auto previous = load_rules(state.rule_file.string());
  for (const auto& r : previous) validate(r, domain.hierarchy);

  SemParser parser(domain.grammar, domain.lexicon, previous, domain.hierarchy);
  auto results = options.parallel ? parser.parse_corpus(domain.corpus) : parser.parse_corpus_serial(domain.corpus);

  done.analysis_counts.clear();
  done.parsed = 0;
  for (const auto& r : results) {
    done.analysis_counts.push_back(r.ok() ? r.analyses.size() : 0);
    if (r.ok()) ++done.parsed;
  }
  if (done.parsed == 0) throw DataError("iteration " + std::to_string(state.iteration) + ": no sentence parsed");

  auto stats = options.parallel ? harvest_corpus(results, options.mode, options.extract, options.sample_cap)
                                : harvest_corpus_serial(results, options.mode, options.extract, options.sample_cap);
  stats = compute_probabilities(std::move(stats));
  if (options.filter) stats = apply_filter(stats, *options.filter);
  if (options.reference) stats = reference_filter(stats, *options.reference, domain.hierarchy);
  if (stats.empty()) std::cerr << "warning: iteration " << state.iteration << " harvested no rules\n";
  done.harvest = stats;

  auto next = next_rule_set(stats, previous, options.extract.excluded);
  const auto n = std::to_string(state.iteration);
  fs::create_directories(options.out_dir);
  write_file_atomic(options.out_dir / ("parses." + n + ".tsv"), serialize_parse_results(results));
  write_file_atomic(options.out_dir / ("harvest." + n + ".txt"), serialize_harvest(stats));
  done.next_rule_file = options.out_dir / ("rules." + std::to_string(state.iteration + 1) + ".sor");
  write_file_atomic(done.next_rule_file, serialize_rules(next));

  auto d = diff_rules(previous, next);
  done.converged = d.added.empty() && d.removed.empty();
  return done;
}

std::vector<IterationState> run_pipeline(const fs::path& initial_rules, const Domain& domain,
                                         const IterationOptions& options, int max_iterations) {
  std::vector<IterationState> out;
  IterationState s;
  s.iteration = 1;
  s.rule_file = initial_rules;
  for (int i = 0; i < max_iterations; ++i) {
    out.push_back(run_iteration(s, domain, options));
    if (out.back().converged) break;
    s = out.back().next();
  }
  return out;
}

}  // namespace sortacq
