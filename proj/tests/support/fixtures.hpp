#pragma once

// Shared inputs: the bundled toy domain and the published example LF.

#include "sortacq/grammar.hpp"
#include "sortacq/hierarchy.hpp"
#include "sortacq/siggen.hpp"
#include "sortacq/sort_rule.hpp"
#include "sortacq/syntax.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace sortacq::testing {

inline std::filesystem::path source_path(const std::string& rel) {
  return std::filesystem::path(SORTACQ_SOURCE_DIR) / rel;
}

inline std::string golden(const std::string& name) {
  return syntax::read_file(source_path("tests/golden/" + name).string());
}

inline std::string toy_path(const std::string& name) { return source_path("data/toy/" + name).string(); }

/// Toy domain with its signature set generated (the hierarchy gains the
/// lex_* sorts siggen adds).
struct Toy {
  SortHierarchy h = SortHierarchy::load(toy_path("hierarchy.pl"));
  Grammar grammar = Grammar::load(toy_path("grammar.pl"));
  Lexicon lexicon = Lexicon::load(toy_path("lexicon.pl"));
  NameSortTable names = load_name_sorts(toy_path("names.pl"));
  std::vector<SortRule> hand = load_rules(toy_path("hand_signatures.pl"));
  std::vector<Sentence> corpus = load_corpus(toy_path("corpus.txt"));
  std::vector<SortRule> reference = load_rules(toy_path("reference.sor"));
  SignatureSet signatures = generate_signatures(lexicon, names, grammar_connectors(grammar), h, hand);
};

/// Sorts used by the published morning-flights LF.
inline SortHierarchy paper_lf_sorts() {
  return SortHierarchy::parse(
      "isa(flight, top). isa(prop, top). isa(location, top). isa(city, location).\n"
      "isa(day_part, top). isa(aspect, top). isa(event, top). isa(departure, event).\n"
      "isa(determiner, top). isa(non_symmetric_determiner, determiner).\n");
}

/// "the morning flights flying to denver", transcribed from the displayed LF.
inline const char* kMorningFlights = R"(
qterm(the;[non_symmetric_determiner],
    A;[flight],
        [and,
          [flight,(A;[flight])],
          [n_n_rel,
              (B;[day_part]) [and,
                              [morning,
                              (B;[day_part])]]
              ;[[day_part]],[prop],
              A;[flight]],
          exists(C;[flight],
                        [and,
                          [fly,(C;[flight])],
                          [actor,(C;[flight]),
                                     (A;[flight])],
                          [has_aspect,
                                  (C;[flight]),
                                  (in_progress;[aspect])],
                          [to,(C;[flight]),
                                  ('DENVER';[city])]])])
;[flight]
)";

}  // namespace sortacq::testing
