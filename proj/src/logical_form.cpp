#include "sortacq/logical_form.hpp"

#include "sortacq/errors.hpp"
#include "sortacq/syntax.hpp"

#include <algorithm>
#include <map>

namespace sortacq {

using syntax::TokenKind;

LogicalForm LogicalForm::qterm(LogicalForm determiner, LogicalForm var, LogicalForm restriction) {
  LogicalForm n;
  n.kind_ = Kind::Quant;
  n.name_ = "qterm";
  n.children_ = {std::move(determiner), std::move(var), std::move(restriction)};
  return n;
}

LogicalForm LogicalForm::exists(LogicalForm var, LogicalForm body) {
  LogicalForm n;
  n.kind_ = Kind::Quant;
  n.name_ = "exists";
  n.children_ = {std::move(var), std::move(body)};
  return n;
}

LogicalForm LogicalForm::abstraction(LogicalForm var, LogicalForm body) {
  LogicalForm n;
  n.kind_ = Kind::Abstraction;
  n.children_ = {std::move(var), std::move(body)};
  return n;
}

LogicalForm LogicalForm::predication(std::string predicate, std::vector<LogicalForm> args) {
  LogicalForm n;
  n.kind_ = Kind::Predication;
  n.name_ = std::move(predicate);
  n.children_ = std::move(args);
  return n;
}

LogicalForm LogicalForm::constant(std::string name) {
  LogicalForm n;
  n.kind_ = Kind::Constant;
  n.name_ = std::move(name);
  return n;
}

LogicalForm LogicalForm::var(std::string name) {
  LogicalForm n;
  n.kind_ = Kind::VarRef;
  n.name_ = std::move(name);
  return n;
}

const LogicalForm& LogicalForm::bound_var() const {
  if (kind_ == Kind::Quant && name_ == "qterm") return children_.at(1);
  if (kind_ == Kind::Quant || kind_ == Kind::Abstraction) return children_.at(0);
  throw DataError("node binds no variable");
}

const LogicalForm& LogicalForm::scope() const {
  if (kind_ == Kind::Quant || kind_ == Kind::Abstraction) return children_.back();
  throw DataError("node has no scope");
}

LogicalForm LogicalForm::annotated(SortTerm s) const& {
  LogicalForm copy = *this;
  copy.annotation_ = std::move(s);
  return copy;
}

LogicalForm LogicalForm::annotated(SortTerm s) && {
  annotation_ = std::move(s);
  return std::move(*this);
}

std::string path_string(const std::vector<std::size_t>& path) {
  if (path.empty()) return "root";
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) out += "/";
    out += std::to_string(path[i]);
  }
  return out;
}

// -- parsing ---------------------------------------------------------------

namespace {

class LfParser {
public:
  LfParser(std::string_view text, const SortHierarchy& h) : ts_(syntax::tokenize(text)), h_(h) {}

  LogicalForm parse_all() {
    LogicalForm lf = expr();
    ts_.accept(TokenKind::Dot);
    if (!ts_.at(TokenKind::End)) ts_.fail("trailing input after logical form");
    return lf;
  }

private:
  LogicalForm expr() {
    LogicalForm node = unary();
    return postfix(std::move(node));
  }

  LogicalForm postfix(LogicalForm node) {
    if (ts_.at(TokenKind::Semi)) {
      const auto& semi = ts_.next();
      if (node.annotation()) throw SyntaxError("expression annotated twice", semi.line, semi.column);
      SortTerm s = sort();
      validate(s, h_);
      node.annotate(std::move(s));
    }
    return node;
  }

  static bool starts_expr(TokenKind k) {
    return k == TokenKind::LParen || k == TokenKind::LBrack || k == TokenKind::Name ||
           k == TokenKind::Var || k == TokenKind::Int;
  }

  LogicalForm unary() {
    const auto& t = ts_.peek();
    switch (t.kind) {
      case TokenKind::LParen: {
        ts_.next();
        LogicalForm inner = expr();
        ts_.expect(TokenKind::RParen, "')'");
        if (inner.is(LogicalForm::Kind::VarRef) && starts_expr(ts_.peek().kind)) {
          LogicalForm body = unary();
          return LogicalForm::abstraction(std::move(inner), std::move(body));
        }
        return inner;
      }
      case TokenKind::LBrack: {
        ts_.next();
        const auto& pred = ts_.peek();
        if (pred.kind != TokenKind::Name && pred.kind != TokenKind::Int) ts_.fail("expected predicate name");
        std::string name = ts_.next().text;
        std::vector<LogicalForm> args;
        while (ts_.accept(TokenKind::Comma)) args.push_back(expr());
        ts_.expect(TokenKind::RBrack, "']'");
        return LogicalForm::predication(std::move(name), std::move(args));
      }
      case TokenKind::Var:
        return LogicalForm::var(ts_.next().text);
      case TokenKind::Int:
        return LogicalForm::constant(ts_.next().text);
      case TokenKind::Name: {
        const auto& name_tok = ts_.next();
        if (!name_tok.quoted && ts_.at(TokenKind::LParen)) {
          if (name_tok.text == "qterm") return qterm();
          if (name_tok.text == "exists") return exists();
          throw SyntaxError("unsupported operator '" + name_tok.text + "'", name_tok.line, name_tok.column);
        }
        return LogicalForm::constant(name_tok.text);
      }
      default:
        ts_.fail("expected an expression");
    }
  }

  void require_var(const LogicalForm& v) {
    if (!v.is(LogicalForm::Kind::VarRef)) ts_.fail("quantifier must bind a variable");
  }

  LogicalForm qterm() {
    ts_.expect(TokenKind::LParen, "'('");
    LogicalForm det = expr();
    ts_.expect(TokenKind::Comma, "','");
    if (ts_.at(TokenKind::LParen)) {
      // Either the annotated variable `(A;[s])` or the pair `((A;[s]), restriction)`.
      ts_.next();
      LogicalForm first = expr();
      if (ts_.accept(TokenKind::Comma)) {
        LogicalForm restriction = expr();
        ts_.expect(TokenKind::RParen, "')'");
        ts_.expect(TokenKind::RParen, "')'");
        require_var(first);
        return LogicalForm::qterm(std::move(det), std::move(first), std::move(restriction));
      }
      ts_.expect(TokenKind::RParen, "')'");
      LogicalForm var = postfix(std::move(first));
      require_var(var);
      ts_.expect(TokenKind::Comma, "','");
      LogicalForm restriction = expr();
      ts_.expect(TokenKind::RParen, "')'");
      return LogicalForm::qterm(std::move(det), std::move(var), std::move(restriction));
    }
    LogicalForm var = expr();
    require_var(var);
    ts_.expect(TokenKind::Comma, "','");
    LogicalForm restriction = expr();
    ts_.expect(TokenKind::RParen, "')'");
    return LogicalForm::qterm(std::move(det), std::move(var), std::move(restriction));
  }

  LogicalForm exists() {
    ts_.expect(TokenKind::LParen, "'('");
    LogicalForm var = expr();
    require_var(var);
    ts_.expect(TokenKind::Comma, "','");
    LogicalForm body = expr();
    ts_.expect(TokenKind::RParen, "')'");
    return LogicalForm::exists(std::move(var), std::move(body));
  }

  bool atom_ahead() const {
    return ts_.at(TokenKind::LBrack) &&
           (ts_.at(TokenKind::Name, 1) || ts_.at(TokenKind::Int, 1)) && ts_.at(TokenKind::RBrack, 2);
  }

  std::vector<SortTerm> sort_list() {
    ts_.expect(TokenKind::LBrack, "'['");
    std::vector<SortTerm> items{sort()};
    while (ts_.accept(TokenKind::Comma)) items.push_back(sort());
    ts_.expect(TokenKind::RBrack, "']'");
    return items;
  }

  SortTerm sort() {
    if (ts_.at(TokenKind::Var)) return SortTerm::variable(ts_.next().text);
    if (atom_ahead()) {
      ts_.next();
      std::string name = ts_.next().text;
      ts_.next();
      return SortTerm::atom(std::move(name));
    }
    if (ts_.at(TokenKind::LBrack)) {
      // unparenthesized functional sort: [a1,...],result
      auto args = sort_list();
      ts_.expect(TokenKind::Comma, "',' before result sort");
      SortTerm result = sort();
      return SortTerm::func(std::move(args), std::move(result));
    }
    if (ts_.accept(TokenKind::LParen)) {
      if (ts_.at(TokenKind::LBrack) && !atom_ahead()) {
        auto args = sort_list();
        ts_.expect(TokenKind::Comma, "',' before result sort");
        SortTerm result = sort();
        ts_.expect(TokenKind::RParen, "')'");
        return SortTerm::func(std::move(args), std::move(result));
      }
      SortTerm inner = sort();
      ts_.expect(TokenKind::RParen, "')'");
      return inner;
    }
    ts_.fail("expected a sort");
  }

  syntax::TokenStream ts_;
  const SortHierarchy& h_;
};

void serialize_into(const LogicalForm& lf, std::string& out, std::vector<std::size_t>& path) {
  if (!lf.annotation()) throw DataError("unannotated node at " + path_string(path));
  out += "(";
  auto child = [&](std::size_t i) {
    path.push_back(i);
    serialize_into(lf.children()[i], out, path);
    path.pop_back();
  };
  switch (lf.kind()) {
    case LogicalForm::Kind::Constant:
      out += syntax::quote_name(lf.name());
      break;
    case LogicalForm::Kind::VarRef:
      out += lf.name();
      break;
    case LogicalForm::Kind::Predication:
      out += "[" + syntax::quote_name(lf.name());
      for (std::size_t i = 0; i < lf.children().size(); ++i) {
        out += ",";
        child(i);
      }
      out += "]";
      break;
    case LogicalForm::Kind::Quant:
      out += lf.name() + "(";
      for (std::size_t i = 0; i < lf.children().size(); ++i) {
        if (i) out += ",";
        child(i);
      }
      out += ")";
      break;
    case LogicalForm::Kind::Abstraction:
      child(0);
      child(1);
      break;
  }
  out += ";" + to_string(*lf.annotation()) + ")";
}

}  // namespace

LogicalForm parse_lf(std::string_view text, const SortHierarchy& h) {
  LfParser p(text, h);
  return p.parse_all();
}

std::string serialize_lf(const LogicalForm& lf) {
  std::string out;
  std::vector<std::size_t> path;
  serialize_into(lf, out, path);
  return out;
}

// -- resolution ------------------------------------------------------------

namespace {

using VarSorts = std::map<std::string, SortTerm>;

void find_var_annotation(const LogicalForm& lf, const std::string& var, std::optional<SortTerm>& found) {
  if (found) return;
  if (lf.is(LogicalForm::Kind::VarRef) && lf.name() == var && lf.annotation()) {
    found = *lf.annotation();
    return;
  }
  for (const auto& c : lf.children()) find_var_annotation(c, var, found);
}

LogicalForm resolve(const LogicalForm& lf, const SortHierarchy& h, VarSorts& scope,
                    std::vector<std::size_t>& path) {
  const SortTerm prop = SortTerm::atom("prop");
  auto sub = [&](std::size_t i) {
    path.push_back(i);
    LogicalForm r = resolve(lf.children()[i], h, scope, path);
    path.pop_back();
    return r;
  };

  switch (lf.kind()) {
    case LogicalForm::Kind::Constant:
      if (!lf.annotation()) throw DataError("unannotated constant '" + lf.name() + "' at " + path_string(path));
      return lf;
    case LogicalForm::Kind::VarRef: {
      if (lf.annotation()) return lf;
      auto it = scope.find(lf.name());
      if (it == scope.end()) throw DataError("unbound variable " + lf.name() + " at " + path_string(path));
      return lf.annotated(it->second);
    }
    case LogicalForm::Kind::Predication: {
      std::vector<LogicalForm> args;
      for (std::size_t i = 0; i < lf.children().size(); ++i) args.push_back(sub(i));
      LogicalForm out = LogicalForm::predication(lf.name(), std::move(args));
      if (lf.annotation()) {
        out.annotate(*lf.annotation());
      } else {
        h.id("prop");
        out.annotate(prop);
      }
      return out;
    }
    case LogicalForm::Kind::Quant:
    case LogicalForm::Kind::Abstraction: {
      const LogicalForm& v = lf.bound_var();
      std::optional<SortTerm> vs = v.annotation();
      if (!vs) find_var_annotation(lf.scope(), v.name(), vs);
      if (!vs) throw DataError("unsorted variable " + v.name() + " at " + path_string(path));
      std::optional<SortTerm> saved;
      if (auto it = scope.find(v.name()); it != scope.end()) saved = it->second;
      scope.insert_or_assign(v.name(), *vs);

      std::vector<LogicalForm> kids;
      for (std::size_t i = 0; i < lf.children().size(); ++i) kids.push_back(sub(i));

      if (saved) {
        scope.insert_or_assign(v.name(), *saved);
      } else {
        scope.erase(v.name());
      }

      LogicalForm out = lf;
      out.children() = std::move(kids);
      if (!lf.annotation()) {
        if (lf.is(LogicalForm::Kind::Abstraction)) {
          out.annotate(SortTerm::func({*vs}, *out.scope().annotation()));
        } else if (lf.name() == "qterm") {
          out.annotate(*vs);
        } else {
          h.id("prop");
          out.annotate(prop);
        }
      }
      return out;
    }
  }
  return lf;
}

void check(const LogicalForm& lf, std::vector<std::string>& bound, std::vector<std::size_t>& path) {
  if (!lf.annotation()) throw DataError("unannotated node at " + path_string(path));
  if (lf.is(LogicalForm::Kind::VarRef)) {
    if (std::find(bound.begin(), bound.end(), lf.name()) == bound.end()) {
      throw DataError("unbound variable " + lf.name() + " at " + path_string(path));
    }
    return;
  }
  bool binds = lf.is(LogicalForm::Kind::Quant) || lf.is(LogicalForm::Kind::Abstraction);
  if (binds) bound.push_back(lf.bound_var().name());
  for (std::size_t i = 0; i < lf.children().size(); ++i) {
    path.push_back(i);
    check(lf.children()[i], bound, path);
    path.pop_back();
  }
  if (binds) bound.pop_back();
}

std::string nth_var_name(std::size_t n) {
  std::string name(1, static_cast<char>('A' + n % 26));
  if (n >= 26) name += std::to_string(n / 26);
  return name;
}

LogicalForm rename(const LogicalForm& lf, std::map<std::string, std::string>& scope, std::size_t& counter) {
  if (lf.is(LogicalForm::Kind::VarRef)) {
    auto it = scope.find(lf.name());
    if (it == scope.end()) return lf;
    LogicalForm out = LogicalForm::var(it->second);
    if (lf.annotation()) out.annotate(*lf.annotation());
    return out;
  }
  bool binds = lf.is(LogicalForm::Kind::Quant) || lf.is(LogicalForm::Kind::Abstraction);
  std::optional<std::string> saved;
  std::string bound_name;
  if (binds) {
    bound_name = lf.bound_var().name();
    if (auto it = scope.find(bound_name); it != scope.end()) saved = it->second;
    scope[bound_name] = nth_var_name(counter++);
  }
  LogicalForm out = lf;
  for (auto& c : out.children()) c = rename(c, scope, counter);
  if (binds) {
    if (saved) {
      scope[bound_name] = *saved;
    } else {
      scope.erase(bound_name);
    }
  }
  return out;
}

}  // namespace

LogicalForm resolve_sorts(const LogicalForm& lf, const SortHierarchy& h) {
  VarSorts scope;
  std::vector<std::size_t> path;
  return resolve(lf, h, scope, path);
}

void check_well_formed(const LogicalForm& lf) {
  std::vector<std::string> bound;
  std::vector<std::size_t> path;
  check(lf, bound, path);
}

LogicalForm canonicalize_variables(const LogicalForm& lf) {
  std::map<std::string, std::string> scope;
  std::size_t counter = 0;
  return rename(lf, scope, counter);
}

}  // namespace sortacq
