#include "sortacq/sort_term.hpp"

#include "sortacq/errors.hpp"

#include <cassert>

namespace sortacq {

SortTerm SortTerm::variable(std::string name) {
  SortTerm t;
  t.kind_ = Kind::Variable;
  t.name_ = std::move(name);
  return t;
}

SortTerm SortTerm::atom(std::string sort) {
  SortTerm t;
  t.kind_ = Kind::Atom;
  t.name_ = std::move(sort);
  return t;
}

SortTerm SortTerm::func(std::vector<SortTerm> args, SortTerm result) {
  if (args.empty()) throw DataError("functional sort needs at least one argument");
  SortTerm t;
  t.kind_ = Kind::Func;
  t.parts_ = std::move(args);
  t.parts_.push_back(std::move(result));
  return t;
}

std::span<const SortTerm> SortTerm::args() const {
  assert(kind_ == Kind::Func);
  return {parts_.data(), parts_.size() - 1};
}

const SortTerm& SortTerm::result() const {
  assert(kind_ == Kind::Func);
  return parts_.back();
}

bool SortTerm::has_variables() const {
  if (kind_ == Kind::Variable) return true;
  for (const auto& p : parts_) {
    if (p.has_variables()) return true;
  }
  return false;
}

bool subsumes(const SortTerm& general, const SortTerm& specific, const SortHierarchy& h) {
  if (general.is_variable()) {
    validate(specific, h);
    return true;
  }
  if (specific.is_variable()) {
    validate(general, h);
    return false;
  }
  if (general.is_atom() && specific.is_atom()) {
    return h.is_ancestor_or_self(h.id(general.name()), h.id(specific.name()));
  }
  if (general.is_func() && specific.is_func()) {
    auto ga = general.args();
    auto sa = specific.args();
    if (ga.size() != sa.size()) {
      validate(general, h);
      validate(specific, h);
      return false;
    }
    bool ok = true;
    for (std::size_t i = 0; i < ga.size(); ++i) ok = subsumes(ga[i], sa[i], h) && ok;
    return subsumes(general.result(), specific.result(), h) && ok;
  }
  validate(general, h);
  validate(specific, h);
  return false;
}

std::optional<SortTerm> unify(const SortTerm& a, const SortTerm& b, const SortHierarchy& h) {
  if (a.is_variable()) {
    validate(b, h);
    return b;
  }
  if (b.is_variable()) {
    validate(a, h);
    return a;
  }
  if (a.is_atom() && b.is_atom()) {
    SortId ia = h.id(a.name());
    SortId ib = h.id(b.name());
    if (h.is_ancestor_or_self(ia, ib)) return b;
    if (h.is_ancestor_or_self(ib, ia)) return a;
    return std::nullopt;
  }
  if (a.is_func() && b.is_func() && a.args().size() == b.args().size()) {
    std::vector<SortTerm> args;
    args.reserve(a.args().size());
    bool failed = false;
    for (std::size_t i = 0; i < a.args().size(); ++i) {
      auto u = unify(a.args()[i], b.args()[i], h);
      if (!u) {
        failed = true;
        continue;  // keep going so unknown sorts still raise
      }
      args.push_back(std::move(*u));
    }
    auto r = unify(a.result(), b.result(), h);
    if (failed || !r) return std::nullopt;
    return SortTerm::func(std::move(args), std::move(*r));
  }
  validate(a, h);
  validate(b, h);
  return std::nullopt;
}

bool alpha_equal(const SortTerm& a, const SortTerm& b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case SortTerm::Kind::Variable:
      return true;
    case SortTerm::Kind::Atom:
      return a.name() == b.name();
    case SortTerm::Kind::Func:
      if (a.args().size() != b.args().size()) return false;
      for (std::size_t i = 0; i < a.args().size(); ++i) {
        if (!alpha_equal(a.args()[i], b.args()[i])) return false;
      }
      return alpha_equal(a.result(), b.result());
  }
  return false;
}

void validate(const SortTerm& t, const SortHierarchy& h) {
  switch (t.kind()) {
    case SortTerm::Kind::Variable:
      return;
    case SortTerm::Kind::Atom:
      h.id(t.name());
      return;
    case SortTerm::Kind::Func:
      for (const auto& a : t.args()) validate(a, h);
      validate(t.result(), h);
      return;
  }
}

namespace {

void print(const SortTerm& t, std::string& out, int* counter) {
  switch (t.kind()) {
    case SortTerm::Kind::Variable:
      if (counter) {
        out += "_" + std::to_string(++*counter);
      } else {
        out += t.name();
      }
      return;
    case SortTerm::Kind::Atom:
      out += "[" + syntax::quote_name(t.name()) + "]";
      return;
    case SortTerm::Kind::Func:
      out += "([";
      for (std::size_t i = 0; i < t.args().size(); ++i) {
        if (i) out += ",";
        print(t.args()[i], out, counter);
      }
      out += "],";
      print(t.result(), out, counter);
      out += ")";
      return;
  }
}

}  // namespace

std::string to_string(const SortTerm& t) {
  std::string out;
  print(t, out, nullptr);
  return out;
}

std::string canonical_string(const SortTerm& t, int& counter) {
  std::string out;
  print(t, out, &counter);
  return out;
}

std::size_t atom_count(const SortTerm& t) {
  switch (t.kind()) {
    case SortTerm::Kind::Variable: return 0;
    case SortTerm::Kind::Atom: return 1;
    case SortTerm::Kind::Func: {
      std::size_t n = atom_count(t.result());
      for (const auto& a : t.args()) n += atom_count(a);
      return n;
    }
  }
  return 0;
}

namespace {

const SortTerm* find_atom(const SortTerm& t, std::size_t& k) {
  switch (t.kind()) {
    case SortTerm::Kind::Variable:
      return nullptr;
    case SortTerm::Kind::Atom:
      if (k == 0) return &t;
      --k;
      return nullptr;
    case SortTerm::Kind::Func:
      for (const auto& a : t.args()) {
        if (auto* r = find_atom(a, k)) return r;
      }
      return find_atom(t.result(), k);
  }
  return nullptr;
}

SortTerm replace_atom(const SortTerm& t, std::size_t& k, const std::string& sort, bool& done) {
  if (done) return t;
  switch (t.kind()) {
    case SortTerm::Kind::Variable:
      return t;
    case SortTerm::Kind::Atom:
      if (k == 0) {
        done = true;
        return SortTerm::atom(sort);
      }
      --k;
      return t;
    case SortTerm::Kind::Func: {
      std::vector<SortTerm> args;
      for (const auto& a : t.args()) args.push_back(replace_atom(a, k, sort, done));
      SortTerm r = replace_atom(t.result(), k, sort, done);
      return SortTerm::func(std::move(args), std::move(r));
    }
  }
  return t;
}

}  // namespace

const std::string& atom_at(const SortTerm& t, std::size_t atom_index) {
  std::size_t k = atom_index;
  const SortTerm* a = find_atom(t, k);
  if (!a) throw DataError("atom index out of range");
  return a->name();
}

SortTerm replace_atom_at(const SortTerm& t, std::size_t atom_index, const std::string& sort) {
  std::size_t k = atom_index;
  bool done = false;
  SortTerm out = replace_atom(t, k, sort, done);
  if (!done) throw DataError("atom index out of range");
  return out;
}

SortTerm sort_from_term(const syntax::Term& term) {
  using K = syntax::Term::Kind;
  switch (term.kind) {
    case K::Var:
      return SortTerm::variable(term.text);
    case K::List:
      if (term.items.size() == 1 &&
          (term.items[0].is(K::Name) || term.items[0].is(K::Int))) {
        return SortTerm::atom(term.items[0].text);
      }
      break;
    case K::Tuple:
      if (term.items.size() == 2 && term.items[0].is(K::List) && !term.items[0].items.empty()) {
        const auto& list = term.items[0];
        bool atom_list = list.items.size() == 1 && (list.items[0].is(K::Name) || list.items[0].is(K::Int));
        if (!atom_list) {
          std::vector<SortTerm> args;
          for (const auto& a : list.items) args.push_back(sort_from_term(a));
          return SortTerm::func(std::move(args), sort_from_term(term.items[1]));
        }
      }
      if (term.items.size() == 1) return sort_from_term(term.items[0]);
      break;
    default:
      break;
  }
  throw SyntaxError("malformed sort", term.line, term.column);
}

SortTerm parse_sort(std::string_view text) {
  syntax::TokenStream ts(syntax::tokenize(text));
  auto term = syntax::read_term(ts);
  if (!ts.at(syntax::TokenKind::End)) ts.fail("trailing input after sort");
  return sort_from_term(term);
}

}  // namespace sortacq
