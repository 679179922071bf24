#include "sortacq/editor_api.hpp"

#include "httplib.h"

#include <cctype>
#include <regex>

namespace sortacq {

using nlohmann::json;

namespace {

ApiResponse error(int status, const std::string& code, const std::string& message) {
  return {status, json{{"error", {{"code", code}, {"message", message}}}}};
}

double to_double(const Rational& r) { return static_cast<double>(r); }

json note_json(const WhiteboardNote& n) {
  json j{{"id", n.id}, {"text", n.text}};
  j["sentence_id"] = n.sentence_id ? json(*n.sentence_id) : json(nullptr);
  j["rule_id"] = n.rule_id ? json(*n.rule_id) : json(nullptr);
  return j;
}

std::size_t to_index(const std::string& name, const std::string& v) {
  try {
    if (v.empty() || !std::isdigit(static_cast<unsigned char>(v[0]))) throw std::invalid_argument(v);
    std::size_t used = 0;
    auto n = std::stoul(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return n;
  } catch (const std::exception&) {
    throw EditorError(400, "bad_request", "parameter '" + name + "' must be a non-negative integer");
  }
}

int to_id(const std::string& v) {
  return static_cast<int>(to_index("id", v));
}

json parse_body(const ApiRequest& req) {
  if (req.body.empty()) return json::object();
  try {
    auto j = json::parse(req.body);
    if (!j.is_object()) throw EditorError(400, "bad_request", "request body must be a JSON object");
    return j;
  } catch (const json::parse_error& e) {
    throw EditorError(400, "bad_request", std::string("malformed JSON body: ") + e.what());
  }
}

std::string string_field(const json& body, const char* name) {
  auto it = body.find(name);
  if (it == body.end() || !it->is_string()) {
    throw EditorError(400, "bad_request", std::string("missing string field '") + name + "'");
  }
  return it->get<std::string>();
}

std::optional<int> optional_int(const json& body, const char* name) {
  auto it = body.find(name);
  if (it == body.end() || it->is_null()) return std::nullopt;
  if (!it->is_number_integer()) throw EditorError(400, "bad_request", std::string("field '") + name + "' must be an integer");
  return it->get<int>();
}

RuleQuery parse_query(const std::map<std::string, std::string>& p) {
  RuleQuery q;
  if (auto it = p.find("functor"); it != p.end()) q.functor = it->second;
  if (auto it = p.find("family"); it != p.end()) {
    auto f = parse_family(it->second);
    if (!f) throw EditorError(400, "bad_request", "unknown probability family '" + it->second + "'");
    q.family = *f;
  }
  if (auto it = p.find("min_p"); it != p.end()) {
    try {
      q.min_p = parse_decimal(it->second);
    } catch (const DataError&) {
      throw EditorError(400, "bad_request", "min_p must be a decimal number");
    }
  }
  if (auto it = p.find("mapping"); it != p.end()) {
    auto c = parse_category(it->second);
    if (!c) throw EditorError(400, "bad_request", "unknown mapping category '" + it->second + "'");
    q.mapping = *c;
  }
  if (auto it = p.find("offset"); it != p.end()) q.offset = to_index("offset", it->second);
  if (auto it = p.find("limit"); it != p.end()) q.limit = to_index("limit", it->second);
  return q;
}

ApiResponse route(EditorSession& s, const ApiRequest& req) {
  static const std::regex rule_path(R"(/rules/(\d+))");
  static const std::regex sentences_path(R"(/rules/(\d+)/sentences)");
  const auto& m = req.method;
  std::smatch match;

  if (req.path == "/health") {
    if (m != "GET") return error(405, "method_not_allowed", "use GET");
    return {200, json{{"status", "ok"}, {"rules", s.size()}, {"dirty", s.dirty()}}};
  }
  if (req.path == "/rules") {
    if (m == "GET") {
      auto q = parse_query(req.params);
      auto page = s.list_rules(q);
      json rules = json::array();
      for (const auto& [id, st] : page.rules) rules.push_back(rule_json(id, st, s.mapping_of(id)));
      return {200, json{{"total", page.total}, {"offset", q.offset}, {"rules", rules}}};
    }
    if (m == "POST") {
      auto body = parse_body(req);
      auto text = string_field(body, "rule");
      std::optional<std::string> token;
      if (body.contains("client_token") && body["client_token"].is_string()) token = body["client_token"].get<std::string>();
      if (token) {
        if (auto id = s.token_result(*token)) return {200, rule_json(*id, s.get_rule(*id), s.mapping_of(*id))};
      }
      int id = s.insert_rule(text);
      if (token) s.remember_token(*token, id);
      return {201, rule_json(id, s.get_rule(id), std::nullopt)};
    }
    return error(405, "method_not_allowed", "use GET or POST");
  }
  if (std::regex_match(req.path, match, sentences_path)) {
    if (m != "GET") return error(405, "method_not_allowed", "use GET");
    json out = json::array();
    for (const auto& sent : s.rule_sentences(to_id(match[1]))) out.push_back({{"id", sent.id}, {"text", sent.text}});
    return {200, json{{"sentences", out}}};
  }
  if (std::regex_match(req.path, match, rule_path)) {
    const int id = to_id(match[1]);
    if (m == "GET") return {200, rule_json(id, s.get_rule(id), s.mapping_of(id))};
    if (m == "DELETE") {
      s.delete_rule(id);
      return {200, json{{"deleted", id}, {"rules", s.size()}}};
    }
    return error(405, "method_not_allowed", "use GET or DELETE");
  }
  if (req.path == "/functors") {
    if (m != "GET") return error(405, "method_not_allowed", "use GET");
    json out = json::array();
    for (const auto& [p, n] : s.functors()) out.push_back({{"predicate", p}, {"rules", n}});
    return {200, json{{"functors", out}}};
  }
  if (req.path == "/functors/by-arg") {
    if (m != "GET") return error(405, "method_not_allowed", "use GET");
    auto it = req.params.find("sort");
    if (it == req.params.end()) return error(400, "bad_request", "missing parameter 'sort'");
    return {200, json{{"sort", it->second}, {"functors", s.functors_by_argument(it->second)}}};
  }
  if (req.path == "/mapping") {
    if (m != "POST") return error(405, "method_not_allowed", "use POST");
    auto body = parse_body(req);
    std::optional<std::string> ref;
    if (body.contains("reference")) ref = string_field(body, "reference");
    return {200, report_json(s.run_mapping(ref))};
  }
  if (req.path == "/save") {
    if (m != "POST") return error(405, "method_not_allowed", "use POST");
    auto path = s.save();
    return {200, json{{"path", path.string()}, {"rules", s.size()}}};
  }
  if (req.path == "/excluded") {
    if (m != "GET") return error(405, "method_not_allowed", "use GET");
    auto ex = s.excluded();
    return {200, json{{"excluded", std::vector<std::string>(ex.predicates.begin(), ex.predicates.end())}}};
  }
  if (req.path == "/hierarchy") {
    if (m != "POST") return error(405, "method_not_allowed", "use POST");
    auto body = parse_body(req);
    s.set_hierarchy(string_field(body, "path"));
    return {200, json{{"status", "ok"}}};
  }
  if (req.path == "/whiteboard") {
    if (m == "GET") {
      json out = json::array();
      for (const auto& n : s.whiteboard()) out.push_back(note_json(n));
      return {200, json{{"notes", out}}};
    }
    if (m == "POST") {
      auto body = parse_body(req);
      auto note = s.add_note(string_field(body, "text"), optional_int(body, "sentence_id"), optional_int(body, "rule_id"));
      return {201, note_json(note)};
    }
    return error(405, "method_not_allowed", "use GET or POST");
  }
  return error(404, "not_found", "no route for " + req.path);
}

}  // namespace

json rule_json(int id, const RuleStats& s, std::optional<MappingCategory> mapping) {
  json j{{"id", id},
         {"rule", to_string(s.rule)},
         {"predicate", s.rule.predicate},
         {"arity", s.rule.arity()},
         {"theta", s.invocations},
         {"lfs", s.lf_count},
         {"theta_bar", to_double(s.theta_bar)},
         {"p_global", to_double(s.p_global)},
         {"p_pred", to_double(s.p_given_pred)},
         {"p_arg1", to_double(s.p_given_pred_arg1)},
         {"sentences", s.sample_sentences}};
  j["mapping"] = mapping ? json(std::string(category_name(*mapping))) : json(nullptr);
  return j;
}

json report_json(const MappingReport& r) {
  json counts = json::object();
  for (auto c : kAllCategories) counts[std::string(category_name(c))] = r.count(c);
  json rules = json::array();
  for (const auto& e : r.entries) {
    rules.push_back({{"rule", to_string(e.rule)}, {"category", std::string(category_name(e.category))}});
  }
  return json{{"counts", counts},
              {"total", r.total},
              {"reference_size", r.reference_size},
              {"distinct_exact", r.distinct_exact},
              {"precision_low", r.metrics.precision_low},
              {"precision_high", r.metrics.precision_high},
              {"overgeneration", r.metrics.overgeneration},
              {"recall", r.metrics.recall},
              {"rules", rules}};
}

ApiResponse handle_request(EditorSession& session, const ApiRequest& request) {
  try {
    return route(session, request);
  } catch (const EditorError& e) {
    return error(e.status(), e.code(), e.what());
  } catch (const SyntaxError& e) {
    return error(400, "parse_error", e.what());
  } catch (const HierarchyError& e) {
    return error(422, "unknown_sort", e.what());
  } catch (const Error& e) {
    return error(422, "data_error", e.what());
  }
}

struct EditorServer::Impl {
  httplib::Server server;
};

EditorServer::EditorServer(EditorSession& session) : impl_(std::make_unique<Impl>()) {
  auto handler = [&session](const httplib::Request& req, httplib::Response& res) {
    ApiRequest r{req.method, req.path, {}, req.body};
    for (const auto& [k, v] : req.params) r.params.emplace(k, v);
    auto out = handle_request(session, r);
    res.status = out.status;
    res.set_content(out.body.dump(), "application/json");
  };
  auto& srv = impl_->server;
  const std::string any = R"(/.*)";
  srv.Get(any, handler);
  srv.Post(any, handler);
  srv.Delete(any, handler);
}

EditorServer::~EditorServer() { stop(); }

bool EditorServer::listen(const std::string& host, int port) { return impl_->server.listen(host, port); }

int EditorServer::bind_to_any_port(const std::string& host) { return impl_->server.bind_to_any_port(host); }

bool EditorServer::listen_after_bind() { return impl_->server.listen_after_bind(); }

void EditorServer::stop() {
  if (impl_->server.is_running()) impl_->server.stop();
}

}  // namespace sortacq
