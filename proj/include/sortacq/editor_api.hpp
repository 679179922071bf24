#pragma once

#include "sortacq/editor.hpp"

#include "json.hpp"

#include <map>
#include <memory>
#include <string>

namespace sortacq {

struct ApiRequest {
  std::string method;
  std::string path;
  std::map<std::string, std::string> params;
  std::string body;
};

struct ApiResponse {
  int status = 200;
  nlohmann::json body;
};

/// Routes one request against a session. Transport-free, so the endpoint
/// contracts in docs/api.md can be tested without sockets. Errors come back
/// as `{"error": {"code": ..., "message": ...}}` with a 4xx status.
ApiResponse handle_request(EditorSession& session, const ApiRequest& request);

nlohmann::json rule_json(int id, const RuleStats& s, std::optional<MappingCategory> mapping);
nlohmann::json report_json(const MappingReport& r);

/// HTTP front end over handle_request.
class EditorServer {
public:
  explicit EditorServer(EditorSession& session);
  ~EditorServer();

  /// Binds and serves until stop(); returns false if binding fails.
  bool listen(const std::string& host, int port);
  /// Binds an ephemeral port and returns it (or -1); serve with listen_after_bind().
  int bind_to_any_port(const std::string& host);
  bool listen_after_bind();
  void stop();

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace sortacq
