#include "doctest.h"

#include "sortacq/errors.hpp"
#include "sortacq/hierarchy.hpp"
#include "sortacq/sort_rule.hpp"
#include "sortacq/sort_term.hpp"
#include "support/oracles.hpp"

#include <random>

using namespace sortacq;

namespace {

SortHierarchy travel() {
  return SortHierarchy::parse(
      "% toy fragment\n"
      "isa(location, top).\n"
      "isa(city, location).\n"
      "isa(airport, location).\n"
      "isa(flight, top).\n"
      "isa(prop, top).\n"
      "isa(day_part, top).\n");
}

SortTerm A(const char* s) { return SortTerm::atom(s); }
SortTerm V(const char* s) { return SortTerm::variable(s); }

}  // namespace

TEST_CASE("hierarchy loader") {
  auto h = travel();
  CHECK(h.size() == 7);
  CHECK(h.contains("city"));
  CHECK(h.name(*h.parent(h.id("city"))) == "location");
  CHECK(h.depth(h.id("city")) == 2);

  SUBCASE("forward references are allowed") {
    auto f = SortHierarchy::parse("isa(city, location). isa(location, top).");
    CHECK(f.is_ancestor_or_self(f.id("location"), f.id("city")));
  }
  SUBCASE("rejects cycles") {
    CHECK_THROWS_AS(SortHierarchy::parse("isa(a, b). isa(b, a)."), HierarchyError);
    CHECK_THROWS_AS(SortHierarchy::parse("isa(a, a)."), HierarchyError);
  }
  SUBCASE("rejects re-parenting") {
    CHECK_THROWS_AS(SortHierarchy::parse("isa(a, top). isa(b, top). isa(a, b)."), HierarchyError);
  }
  SUBCASE("rejects unknown parents") {
    CHECK_THROWS_AS(SortHierarchy::parse("isa(a, nowhere)."), HierarchyError);
  }
  SUBCASE("rejects non-isa clauses") {
    CHECK_THROWS_AS(SortHierarchy::parse("sort(a)."), SyntaxError);
  }
  SUBCASE("serialize round-trips") {
    auto again = SortHierarchy::parse(h.serialize());
    CHECK(again == h);
    CHECK(again.serialize() == h.serialize());
  }
}

TEST_CASE("subsumes") {
  auto h = travel();
  CHECK(subsumes(V("X"), A("flight"), h));
  CHECK(subsumes(A("flight"), A("flight"), h));
  CHECK(subsumes(A("location"), A("city"), h));
  CHECK_FALSE(subsumes(A("city"), A("location"), h));
  CHECK_FALSE(subsumes(A("city"), V("X"), h));
  CHECK(subsumes(V("Y"), V("X"), h));
  CHECK(subsumes(A("top"), A("city"), h));

  auto f1 = SortTerm::func({A("location")}, A("prop"));
  auto f2 = SortTerm::func({A("city")}, A("prop"));
  CHECK(subsumes(f1, f2, h));
  CHECK_FALSE(subsumes(f2, f1, h));
  CHECK_FALSE(subsumes(A("top"), f1, h));
  CHECK_FALSE(subsumes(f1, SortTerm::func({A("city"), A("city")}, A("prop")), h));

  CHECK_THROWS_AS(subsumes(A("nowhere"), A("city"), h), HierarchyError);
  CHECK_THROWS_AS(subsumes(V("X"), A("nowhere"), h), HierarchyError);
}

TEST_CASE("subsumes agrees with reachability over the isa file") {
  std::vector<std::pair<std::string, std::string>> isa = {
      {"location", "top"}, {"city", "location"}, {"airport", "location"}, {"flight", "top"}};
  auto h = SortHierarchy::from_pairs(isa);
  testing::IsaClosure closure(isa);
  for (const auto& g : closure.nodes()) {
    for (const auto& s : closure.nodes()) {
      CHECK(subsumes(A(g.c_str()), A(s.c_str()), h) == closure.below_or_equal(s, g));
    }
  }
}

TEST_CASE("unify") {
  auto h = travel();
  CHECK(unify(V("X"), A("city"), h) == A("city"));
  CHECK_FALSE(unify(A("flight"), A("city"), h).has_value());
  CHECK(unify(A("location"), A("city"), h) == A("city"));
  CHECK(unify(A("city"), A("location"), h) == A("city"));
  CHECK_FALSE(unify(A("city"), A("airport"), h).has_value());
  CHECK_FALSE(unify(A("city"), SortTerm::func({A("city")}, A("prop")), h).has_value());

  auto u = unify(SortTerm::func({V("X"), A("location")}, A("prop")),
                 SortTerm::func({A("flight"), A("city")}, V("R")), h);
  REQUIRE(u);
  CHECK(to_string(*u) == "([[flight],[city]],[prop])");
  CHECK_THROWS_AS(unify(A("nowhere"), V("X"), h), HierarchyError);
}

TEST_CASE("sort term text") {
  CHECK(to_string(parse_sort("[city]")) == "[city]");
  CHECK(to_string(parse_sort("X")) == "X");
  CHECK(to_string(parse_sort("([[day_part]], [prop])")) == "([[day_part]],[prop])");
  CHECK(to_string(parse_sort("([X,[flight]],[prop])")) == "([X,[flight]],[prop])");
  CHECK_THROWS_AS(parse_sort("([city],[prop])"), SyntaxError);
  CHECK_THROWS_AS(parse_sort("city"), SyntaxError);
}

TEST_CASE("rule text") {
  auto r = parse_rule("sor(to, ([[flight],[city]], [prop])).");
  CHECK(r.kind == RuleKind::Sor);
  CHECK(r.predicate == "to");
  CHECK(r.arity() == 2);
  CHECK(to_string(r) == "sor(to, ([[flight],[city]],[prop])).");

  auto z = parse_rule("signature('LA_GUARDIA',([airport]))");
  CHECK(z.kind == RuleKind::Signature);
  CHECK(z.arity() == 0);
  CHECK(z.predicate == "LA_GUARDIA");
  CHECK(to_string(z) == "signature('LA_GUARDIA', ([airport])).");

  auto paper_style = parse_rule("sor('BOSTON', [city]).");
  CHECK(paper_style.arity() == 0);
  CHECK(paper_style.result == SortTerm::atom("city"));

  auto listing = parse_rule("sor(n_n_rel,[([[day_part]],[prop]),[flight]],[prop]).");
  CHECK(to_string(listing) == "sor(n_n_rel, ([([[day_part]],[prop]),[flight]],[prop])).");

  auto num = parse_rule("signature(3,([number])).");
  CHECK(num.predicate == "3");
  CHECK(to_string(num) == "signature(3, ([number])).");

  CHECK_THROWS_AS(parse_rule("foo(a, [b])."), SyntaxError);
  CHECK_THROWS_AS(parse_rule("sor(to, ([[flight],[city]] [prop]))."), SyntaxError);
}

TEST_CASE("rule_subsumes") {
  auto h = SortHierarchy::parse(
      "isa(location, top). isa(city, location). isa(airport, location). isa(flight, top). isa(prop, top).");
  auto sig = parse_rule("signature(at, ([X,Y],[prop])).");
  auto inst = parse_rule("sor(at, ([[airport],[city]],[prop])).");
  CHECK(rule_subsumes(sig, inst, h));
  CHECK_FALSE(rule_subsumes(inst, sig, h));
  CHECK(rule_subsumes(inst, inst, h));
  CHECK_FALSE(rule_subsumes(parse_rule("sor(to, ([[flight],[city]],[prop]))."),
                            parse_rule("sor(at, ([[flight],[city]],[prop]))."), h));
  CHECK_FALSE(rule_subsumes(parse_rule("sor(at, ([X],[prop]))."), inst, h));
}

TEST_CASE("alpha equivalence of rules") {
  auto a = parse_rule("signature(at, ([X,Y],[prop])).");
  auto b = parse_rule("sor(at, ([P,Q],[prop])).");
  auto c = parse_rule("sor(at, ([P,P],[prop])).");
  CHECK(rules_alpha_equal(a, b));
  CHECK(rules_alpha_equal(a, c));
  CHECK(rule_key(a) == rule_key(b));
  CHECK(rule_key(a) == rule_key(c));
  CHECK(rule_key(a) != rule_key(parse_rule("sor(at, ([X,[city]],[prop])).")));
  CHECK(b.schematic());
  CHECK_FALSE(a.schematic());
}

TEST_CASE("compare_rule") {
  auto h = SortHierarchy::parse(
      "isa(location, top). isa(city, location). isa(airport, location). isa(flight, top). isa(prop, top).");
  auto to = parse_rule("sor(to, ([[flight],[city]],[prop])).");
  CHECK(compare_rule(to, {to}, h) == MappingCategory::Exact);

  auto at = parse_rule("sor(at, ([[airport],[city]],[prop])).");
  CHECK(compare_rule(at, {parse_rule("sor(at, ([X,Y],[prop])).")}, h) == MappingCategory::SubsumedBy);

  auto corpus = parse_rule("sor(at, ([[airport],[location]],[prop])).");
  auto ref = parse_rule("sor(at, ([[location],[city]],[prop])).");
  CHECK(compare_rule(corpus, {ref}, h) == MappingCategory::Incomparable);

  CHECK(compare_rule(ref, {at}, h) == MappingCategory::Subsumes);
  CHECK(compare_rule(parse_rule("sor(at, ([[flight],[city]],[prop])).") , {at}, h) ==
        MappingCategory::Incompatible);
  // other predicates and arities count as absent
  CHECK(compare_rule(at, {parse_rule("sor(to, ([X,Y],[prop])).") , parse_rule("sor(at, ([X],[prop])).")}, h) ==
        MappingCategory::Incompatible);
  // precedence: SubsumedBy beats Subsumes when both hold against different refs
  CHECK(compare_rule(ref, {at, parse_rule("sor(at, ([X,Y],[prop])).")}, h) == MappingCategory::SubsumedBy);
}

TEST_CASE("compare_rule agrees with the brute-force oracle on random rule sets") {
  std::mt19937 rng(7);
  for (int round = 0; round < 300; ++round) {
    auto isa = testing::random_tree(rng, 5);
    auto h = SortHierarchy::from_pairs(isa);
    testing::IsaClosure oracle(isa);
    auto names = testing::sort_names(isa);
    int vars = 0;
    auto rule = [&](int arity) {
      SortRule r;
      r.predicate = "p";
      for (int i = 0; i < arity; ++i) r.args.push_back(testing::random_term(rng, names, 1, vars));
      r.result = testing::random_term(rng, names, 0, vars);
      return r;
    };
    std::vector<SortRule> refs;
    for (int i = 0; i < 4; ++i) refs.push_back(rule(i % 3));
    for (int k = 0; k < 5; ++k) {
      auto c = rule(k % 3);
      CHECK(compare_rule(c, refs, h) == oracle.categorize(c, refs));
    }
  }
}

TEST_CASE("sort algebra laws on random terms") {
  std::mt19937 rng(11);
  for (int round = 0; round < 500; ++round) {
    auto isa = testing::random_tree(rng, 1 + round % 7);
    auto h = SortHierarchy::from_pairs(isa);
    auto names = testing::sort_names(isa);
    int vars = 0;
    auto a = testing::random_term(rng, names, 2, vars);
    auto b = testing::random_term(rng, names, 2, vars);
    auto c = testing::random_term(rng, names, 2, vars);
    CHECK(subsumes(a, a, h));
    if (subsumes(a, b, h) && subsumes(b, c, h)) CHECK(subsumes(a, c, h));
    if (subsumes(a, b, h) && subsumes(b, a, h)) CHECK(alpha_equal(a, b));
    auto ab = unify(a, b, h);
    auto ba = unify(b, a, h);
    CHECK(ab.has_value() == ba.has_value());
    if (ab) {
      CHECK(alpha_equal(*ab, *ba));
      CHECK(subsumes(a, *ab, h));
      CHECK(subsumes(b, *ab, h));
      if (subsumes(a, c, h) && subsumes(b, c, h)) CHECK(subsumes(*ab, c, h));
    } else {
      CHECK_FALSE((subsumes(a, c, h) && subsumes(b, c, h)));
    }
  }
}
