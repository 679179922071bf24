// Command-line front end: one subcommand per pipeline step.
//
// Exit codes: 0 success, 1 usage error, 2 data error.

#include "sortacq/editor_api.hpp"
#include "sortacq/evalmap.hpp"
#include "sortacq/harvest.hpp"
#include "sortacq/pipeline.hpp"
#include "sortacq/semparser.hpp"
#include "sortacq/siggen.hpp"
#include "sortacq/syntax.hpp"

#include "CLI11.hpp"

#include <csignal>
#include <iostream>

namespace fs = std::filesystem;
using namespace sortacq;

namespace {

struct Flags {
  std::string hierarchy, grammar, lexicon, rules, corpus, out = ".";
  std::string mode = "plfs";
  std::string names, hand, parses, harvest, reference, exclusions, reference_filter;
  std::string family = "global", threshold;
  std::string a, b, workspace, host = "127.0.0.1";
  bool closure = false, serial = false;
  int port = 8080, max_iterations = 5;
  std::size_t sample_cap = 5;
};

HarvestMode mode_of(const Flags& f) {
  auto m = parse_mode(f.mode);
  if (!m) throw CLI::ValidationError("--mode", "expected lfs or plfs");
  return *m;
}

ExtractOptions extract_of(const Flags& f) {
  ExtractOptions o;
  if (!f.exclusions.empty()) o.excluded = ExclusionList::load(f.exclusions);
  return o;
}

std::optional<ThresholdFilter> filter_of(const Flags& f) {
  if (f.threshold.empty()) return std::nullopt;
  auto fam = parse_family(f.family);
  if (!fam) throw CLI::ValidationError("--family", "expected global, pred or arg1");
  ThresholdFilter t{*fam, 0};
  try {
    t.threshold = parse_decimal(f.threshold);
  } catch (const DataError&) {
    throw CLI::ValidationError("--threshold", "expected a decimal number");
  }
  if (t.threshold < 0 || t.threshold > 1) throw CLI::ValidationError("--threshold", "must lie in [0,1]");
  return t;
}

void write_out(const Flags& f, const std::string& name, const std::string& content) {
  fs::create_directories(f.out);
  write_file_atomic(fs::path(f.out) / name, content);
}

int cmd_siggen(const Flags& f) {
  auto h = SortHierarchy::load(f.hierarchy);
  auto lex = Lexicon::load(f.lexicon);
  auto g = Grammar::load(f.grammar);
  auto names = f.names.empty() ? NameSortTable{} : load_name_sorts(f.names);
  auto hand = f.hand.empty() ? std::vector<SortRule>{} : load_rules(f.hand);
  auto sigs = generate_signatures(lex, names, grammar_connectors(g), h, hand);
  auto stats = format_stats(signature_stats(sigs));
  write_out(f, "signatures.sig", serialize_rules(sigs.rules));
  write_out(f, "hierarchy.pl", h.serialize());
  write_out(f, "signature_stats.txt", stats);
  std::cout << stats;
  return 0;
}

int cmd_parse(const Flags& f) {
  auto h = SortHierarchy::load(f.hierarchy);
  auto g = Grammar::load(f.grammar);
  auto lex = Lexicon::load(f.lexicon);
  auto rules = load_rules(f.rules);
  for (const auto& r : rules) validate(r, h);
  auto corpus = load_corpus(f.corpus);
  SemParser p(g, lex, rules, h);
  auto results = f.serial ? p.parse_corpus_serial(corpus) : p.parse_corpus(corpus);
  write_out(f, "parses.tsv", serialize_parse_results(results));
  std::size_t ok = 0, analyses = 0;
  for (const auto& r : results) {
    if (r.ok()) ++ok;
    analyses += r.analyses.size();
    if (!r.ok()) std::cerr << "sentence " << r.sentence_id << ": " << r.failure.value_or("no analysis") << "\n";
  }
  std::cout << "parsed " << ok << "/" << results.size() << " sentences, " << analyses << " analyses\n";
  return 0;
}

int cmd_harvest(const Flags& f) {
  auto h = SortHierarchy::load(f.hierarchy);
  auto results = parse_parse_results(syntax::read_file(f.parses), h);
  auto opts = extract_of(f);
  auto stats = f.serial ? harvest_corpus_serial(results, mode_of(f), opts, f.sample_cap)
                        : harvest_corpus(results, mode_of(f), opts, f.sample_cap);
  if (stats.empty()) std::cerr << "warning: no rules harvested\n";
  write_out(f, "harvest.txt", serialize_harvest(stats));
  std::cout << "harvested " << stats.size() << " rules (" << mode_name(mode_of(f)) << ")\n";
  return 0;
}

int cmd_probabilities(const Flags& f) {
  auto stats = compute_probabilities(load_harvest(f.harvest));
  write_out(f, "harvest.txt", serialize_harvest(stats));
  std::cout << "probabilities for " << stats.size() << " rules\n";
  return 0;
}

int cmd_filter(const Flags& f) {
  auto filter = filter_of(f);
  if (!filter) throw CLI::ValidationError("--threshold", "required");
  auto stats = load_harvest(f.harvest);
  auto kept = apply_filter(stats, *filter);
  write_out(f, "harvest.txt", serialize_harvest(kept));
  std::cout << "kept " << kept.size() << "/" << stats.size() << " rules\n";
  return 0;
}

int cmd_map(const Flags& f) {
  auto h = SortHierarchy::load(f.hierarchy);
  auto report = map_rules(load_rules(f.rules), load_rules(f.reference), h, MapOptions{f.closure});
  auto table = format_report(report);
  write_out(f, "mapping.txt", table);
  write_out(f, "mapping.tsv", format_records(report));
  std::cout << table;
  return 0;
}

int cmd_iterate(const Flags& f) {
  Domain d{SortHierarchy::load(f.hierarchy), Grammar::load(f.grammar), Lexicon::load(f.lexicon), load_corpus(f.corpus)};
  IterationOptions o;
  o.mode = mode_of(f);
  o.filter = filter_of(f);
  if (!f.reference_filter.empty()) o.reference = load_rules(f.reference_filter);
  o.extract = extract_of(f);
  o.sample_cap = f.sample_cap;
  o.out_dir = f.out;
  o.parallel = !f.serial;
  WorkspaceLock lock(f.out);
  auto states = run_pipeline(f.rules, d, o, f.max_iterations);
  for (const auto& s : states) {
    std::size_t analyses = 0;
    for (auto c : s.analysis_counts) analyses += c;
    std::cout << "iteration " << s.iteration << ": parsed " << s.parsed << "/" << s.analysis_counts.size()
              << ", analyses " << analyses << ", rules kept " << s.harvest.size() << ", next "
              << s.next_rule_file.string() << (s.converged ? " (fixpoint)" : "") << "\n";
  }
  if (!states.back().converged) std::cout << "no fixpoint after " << states.size() << " iterations\n";
  return 0;
}

int cmd_diff(const Flags& f) {
  std::cout << format_diff(diff_rule_files(f.a, f.b));
  return 0;
}

EditorServer* g_server = nullptr;

int cmd_serve(const Flags& f) {
  EditorSession session(f.workspace);
  EditorServer server(session);
  g_server = &server;
  std::signal(SIGINT, [](int) {
    if (g_server) g_server->stop();
  });
  std::signal(SIGTERM, [](int) {
    if (g_server) g_server->stop();
  });
  std::cout << "serving " << f.workspace << " on http://" << f.host << ":" << f.port << std::endl;
  if (!server.listen(f.host, f.port)) {
    std::cerr << "cannot listen on " << f.host << ":" << f.port << "\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sort-rule acquisition toolkit"};
  app.require_subcommand(1);
  Flags f;

  auto existing = CLI::ExistingFile;
  auto add_out = [&](CLI::App* c) { c->add_option("--out", f.out, "output directory")->default_val("."); };

  auto* siggen = app.add_subcommand("siggen", "generate the signature file from a lexicon");
  siggen->add_option("--hierarchy", f.hierarchy)->required()->check(existing);
  siggen->add_option("--lexicon", f.lexicon)->required()->check(existing);
  siggen->add_option("--grammar", f.grammar)->required()->check(existing);
  siggen->add_option("--names", f.names, "name sort table")->check(existing);
  siggen->add_option("--hand", f.hand, "hand-added signatures")->check(existing);
  add_out(siggen);

  auto* parse = app.add_subcommand("parse", "parse a corpus under a rule file");
  parse->add_option("--hierarchy", f.hierarchy)->required()->check(existing);
  parse->add_option("--grammar", f.grammar)->required()->check(existing);
  parse->add_option("--lexicon", f.lexicon)->required()->check(existing);
  parse->add_option("--rules", f.rules, "signature or sort file")->required()->check(existing);
  parse->add_option("--corpus", f.corpus)->required()->check(existing);
  parse->add_flag("--serial", f.serial, "parse without OpenMP");
  add_out(parse);

  auto* harvest = app.add_subcommand("harvest", "extract rules and counts from parse results");
  harvest->add_option("--hierarchy", f.hierarchy)->required()->check(existing);
  harvest->add_option("--parses", f.parses, "parses.tsv from `parse`")->required()->check(existing);
  harvest->add_option("--mode", f.mode, "lfs or plfs")->default_val("plfs");
  harvest->add_option("--exclusions", f.exclusions, "exclude(name). clauses")->check(existing);
  harvest->add_option("--sample-cap", f.sample_cap)->default_val(5);
  harvest->add_flag("--serial", f.serial, "tally without OpenMP");
  add_out(harvest);

  auto* probs = app.add_subcommand("probabilities", "compute the three probability families");
  probs->add_option("--harvest", f.harvest)->required()->check(existing);
  add_out(probs);

  auto* filter = app.add_subcommand("filter", "keep rules whose probability reaches a threshold");
  filter->add_option("--harvest", f.harvest)->required()->check(existing);
  filter->add_option("--family", f.family, "global, pred or arg1")->default_val("global");
  filter->add_option("--threshold", f.threshold)->required();
  add_out(filter);

  auto* map = app.add_subcommand("map", "categorize rules against a reference file");
  map->add_option("--hierarchy", f.hierarchy)->required()->check(existing);
  map->add_option("--rules", f.rules)->required()->check(existing);
  map->add_option("--reference", f.reference)->required()->check(existing);
  map->add_flag("--closure", f.closure, "expand both sets one hierarchy level first");
  add_out(map);

  auto* iterate = app.add_subcommand("iterate", "run parse/harvest/filter iterations to a fixpoint");
  iterate->add_option("--hierarchy", f.hierarchy)->required()->check(existing);
  iterate->add_option("--grammar", f.grammar)->required()->check(existing);
  iterate->add_option("--lexicon", f.lexicon)->required()->check(existing);
  iterate->add_option("--rules", f.rules, "initial signature file")->required()->check(existing);
  iterate->add_option("--corpus", f.corpus)->required()->check(existing);
  iterate->add_option("--mode", f.mode)->default_val("plfs");
  iterate->add_option("--family", f.family)->default_val("global");
  iterate->add_option("--threshold", f.threshold);
  iterate->add_option("--reference-filter", f.reference_filter, "drop rules Incompatible with this file")
      ->check(existing);
  iterate->add_option("--exclusions", f.exclusions)->check(existing);
  iterate->add_option("--sample-cap", f.sample_cap)->default_val(5);
  iterate->add_option("--max-iterations", f.max_iterations)->default_val(5)->check(CLI::PositiveNumber);
  iterate->add_flag("--serial", f.serial);
  add_out(iterate);

  auto* diff = app.add_subcommand("diff", "added and removed rules between two rule files");
  diff->add_option("a", f.a)->required()->check(existing);
  diff->add_option("b", f.b)->required()->check(existing);

  auto* serve = app.add_subcommand("serve", "run the editor HTTP API over a workspace");
  serve->add_option("--workspace", f.workspace)->required()->check(CLI::ExistingDirectory);
  serve->add_option("--port", f.port)->default_val(8080);
  serve->add_option("--host", f.host)->default_val("127.0.0.1");

  try {
    app.parse(argc, argv);
    if (*siggen) return cmd_siggen(f);
    if (*parse) return cmd_parse(f);
    if (*harvest) return cmd_harvest(f);
    if (*probs) return cmd_probabilities(f);
    if (*filter) return cmd_filter(f);
    if (*map) return cmd_map(f);
    if (*iterate) return cmd_iterate(f);
    if (*diff) return cmd_diff(f);
    if (*serve) return cmd_serve(f);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  } catch (const sortacq::SyntaxError& e) {
    std::cerr << "error: " << e.what() << " (line " << e.line() << ", column " << e.column() << ")\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
