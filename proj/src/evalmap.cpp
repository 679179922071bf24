#include "sortacq/evalmap.hpp"

#include "sortacq/errors.hpp"

#include <cstdio>
#include <map>
#include <set>
#include <sstream>

namespace sortacq {

Metrics compute_metrics(const CategoryCounts& counts, std::size_t total, std::size_t reference_size,
                        std::optional<std::size_t> distinct_exact) {
  if (total == 0) throw DataError("metrics need at least one corpus rule");
  if (reference_size == 0) throw DataError("metrics need at least one reference rule");
  std::size_t sum = 0;
  for (auto c : counts) sum += c;
  if (sum != total) {
    throw DataError("category counts sum to " + std::to_string(sum) + ", expected " + std::to_string(total));
  }
  auto at = [&](MappingCategory c) { return static_cast<double>(counts[static_cast<std::size_t>(c)]); };
  const double t = static_cast<double>(total);
  Metrics m;
  m.precision_low = at(MappingCategory::Exact) / t;
  m.precision_high = (at(MappingCategory::Exact) + at(MappingCategory::SubsumedBy)) / t;
  m.overgeneration = at(MappingCategory::Incompatible) / t;
  const double hits = distinct_exact ? static_cast<double>(*distinct_exact) : at(MappingCategory::Exact);
  m.recall = hits / static_cast<double>(reference_size);
  return m;
}

std::vector<SortRule> expand_one_level(const std::vector<SortRule>& rules, const SortHierarchy& h) {
  std::vector<SortRule> out;
  std::set<std::string> seen;
  auto push = [&](SortRule r) {
    if (seen.insert(rule_key(r)).second) out.push_back(std::move(r));
  };
  for (const auto& r : rules) push(r);
  for (const auto& r : rules) {
    // positions: args then result
    for (std::size_t pos = 0; pos <= r.args.size(); ++pos) {
      const SortTerm& t = pos < r.args.size() ? r.args[pos] : r.result;
      for (std::size_t i = 0; i < atom_count(t); ++i) {
        for (auto child : h.children(h.id(atom_at(t, i)))) {
          SortRule v = r;
          SortTerm& slot = pos < v.args.size() ? v.args[pos] : v.result;
          slot = replace_atom_at(t, i, h.name(child));
          push(std::move(v));
        }
      }
    }
  }
  return out;
}

namespace {

struct Prepared {
  std::vector<SortRule> corpus;
  std::vector<SortRule> reference;
};

Prepared prepare(const std::vector<SortRule>& corpus, const std::vector<SortRule>& reference,
                 const SortHierarchy& h, const MapOptions& options) {
  Prepared p;
  std::set<std::string> seen;
  for (const auto& r : corpus) {
    validate(r, h);
    if (r.arity() > 0 && seen.insert(rule_key(r)).second) p.corpus.push_back(r);
  }
  seen.clear();
  for (const auto& r : reference) {
    validate(r, h);
    if (r.arity() > 0 && seen.insert(rule_key(r)).second) p.reference.push_back(r);
  }
  if (options.closure) {
    p.corpus = expand_one_level(p.corpus, h);
    p.reference = expand_one_level(p.reference, h);
  }
  return p;
}

MappingReport tabulate(const Prepared& p, std::vector<MappingCategory> cats) {
  MappingReport r;
  r.total = p.corpus.size();
  r.reference_size = p.reference.size();
  std::set<std::string> ref_keys;
  for (const auto& ref : p.reference) ref_keys.insert(rule_key(ref));
  std::set<std::string> hit;
  for (std::size_t i = 0; i < p.corpus.size(); ++i) {
    r.entries.push_back({p.corpus[i], cats[i]});
    ++r.counts[static_cast<std::size_t>(cats[i])];
    if (cats[i] == MappingCategory::Exact) {
      auto key = rule_key(p.corpus[i]);
      if (ref_keys.contains(key)) hit.insert(key);
    }
  }
  r.distinct_exact = hit.size();
  if (r.total > 0 && r.reference_size > 0) {
    r.metrics = compute_metrics(r.counts, r.total, r.reference_size, r.distinct_exact);
  }
  return r;
}

/// Reference rules grouped by predicate and arity.
std::map<std::pair<std::string, std::size_t>, std::vector<SortRule>> group(const std::vector<SortRule>& refs) {
  std::map<std::pair<std::string, std::size_t>, std::vector<SortRule>> out;
  for (const auto& r : refs) out[{r.predicate, r.arity()}].push_back(r);
  return out;
}

}  // namespace

MappingReport map_rules(const std::vector<SortRule>& corpus, const std::vector<SortRule>& reference,
                        const SortHierarchy& h, const MapOptions& options) {
  auto p = prepare(corpus, reference, h, options);
  auto groups = group(p.reference);
  const std::vector<SortRule> none;
  std::vector<MappingCategory> cats(p.corpus.size());
  const auto n = static_cast<long>(p.corpus.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    auto it = groups.find({p.corpus[i].predicate, p.corpus[i].arity()});
    cats[i] = compare_rule(p.corpus[i], it == groups.end() ? none : it->second, h);
  }
  return tabulate(p, std::move(cats));
}

MappingReport map_rules_serial(const std::vector<SortRule>& corpus, const std::vector<SortRule>& reference,
                               const SortHierarchy& h, const MapOptions& options) {
  auto p = prepare(corpus, reference, h, options);
  std::vector<MappingCategory> cats;
  for (const auto& c : p.corpus) cats.push_back(compare_rule(c, p.reference, h));
  return tabulate(p, std::move(cats));
}

namespace {

std::string fixed(double v, int digits) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::string lpad(std::string s, std::size_t width) {
  if (s.size() < width) s.insert(0, width - s.size(), ' ');
  return s;
}

}  // namespace

std::string format_report(const MappingReport& r) {
  std::ostringstream out;
  out << pad("Category", 16) << lpad("Rules", 8) << lpad("%", 9) << "\n";
  for (auto c : kAllCategories) {
    double pct = r.total ? 100.0 * double(r.count(c)) / double(r.total) : 0.0;
    out << pad(std::string(category_label(c)), 16) << lpad(std::to_string(r.count(c)), 8)
        << lpad(fixed(pct, 1), 9) << "\n";
  }
  out << pad("Total", 16) << lpad(std::to_string(r.total), 8) << "\n";
  out << "\n";
  out << "reference rules (arity >= 1): " << r.reference_size << "\n";
  out << "distinct exact matches: " << r.distinct_exact << "\n";
  out << "precision: " << fixed(r.metrics.precision_low, 3) << " - " << fixed(r.metrics.precision_high, 3) << "\n";
  out << "overgeneration: " << fixed(r.metrics.overgeneration, 3) << "\n";
  out << "recall: " << fixed(r.metrics.recall, 3) << "\n";
  return out.str();
}

std::string format_records(const MappingReport& r) {
  std::string out;
  for (const auto& e : r.entries) {
    out += std::string(category_name(e.category)) + "\t" + to_string(e.rule) + "\n";
  }
  return out;
}

}  // namespace sortacq
