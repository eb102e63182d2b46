#include "pathword/http_api.hpp"

#include <httplib.h>

#include <json.hpp>

#include "pathword/error.hpp"
#include "pathword/service.hpp"

namespace pathword {
namespace {

using nlohmann::json;

ApiResponse reply(int status, const json& body) { return {status, body.dump()}; }

ApiResponse error_reply(int status, std::string_view code, std::string_view message) {
  return reply(status, {{"error", code}, {"message", message}});
}

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDuplicateEnrollment: return 409;
    case ErrorCode::kUnknownEnrollment: return 404;
    case ErrorCode::kStorage:
    case ErrorCode::kCrypto: return 500;
    default: return 400;
  }
}

std::string required_string(const json& body, const char* field) {
  if (!body.contains(field) || !body.at(field).is_string()) {
    throw Error(ErrorCode::kSchema, std::string("missing string field '") + field + "'");
  }
  return body.at(field).get<std::string>();
}

json parse_body(std::string_view body) {
  json parsed = json::parse(body, nullptr, false);
  if (parsed.is_discarded() || !parsed.is_object()) {
    throw Error(ErrorCode::kSchema, "request body must be a JSON object");
  }
  return parsed;
}

ApiResponse enroll(AuthService& service, std::string_view body) {
  const json request = parse_body(body);
  const std::string user = required_string(request, "user");
  const std::string label = required_string(request, "label");
  if (!request.contains("path")) throw Error(ErrorCode::kSchema, "missing field 'path'");
  const Path path = path_from_json(request.at("path"));
  const GridParams params = request.contains("grid_params")
                                ? grid_params_from_json(request.at("grid_params"))
                                : GridParams::standard();
  const EnrollmentRecord record = service.enroll(user, label, path, params);
  // The path itself is never echoed back.
  return reply(201, {{"record",
                      {{"user", record.user},
                       {"label", record.label},
                       {"grid_params", grid_params_to_json(record.grid_params)},
                       {"path_length", record.path.size()},
                       {"created_at", to_unix_millis(record.created_at)}}}});
}

ApiResponse challenge(AuthService& service, std::string_view body) {
  const json request = parse_body(body);
  const Challenge c =
      service.issue_challenge(required_string(request, "user"), required_string(request, "label"));
  return reply(200, {{"challenge_id", c.id},
                     {"diagram", diagram_to_json(c.diagram)},
                     {"expires_at", to_unix_millis(c.expires_at)}});
}

ApiResponse verify(AuthService& service, std::string_view body) {
  const json request = parse_body(body);
  const VerifyOutcome outcome =
      service.verify(required_string(request, "challenge_id"), required_string(request, "password"));
  return reply(200, {{"outcome", to_string(outcome)}});
}

std::vector<std::string_view> split_path(std::string_view path) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (start < path.size()) {
    if (path[start] == '/') {
      ++start;
      continue;
    }
    const std::size_t end = std::min(path.find('/', start), path.size());
    parts.push_back(path.substr(start, end - start));
    start = end;
  }
  return parts;
}

}  // namespace

ApiResponse handle_request(AuthService& service, std::string_view method, std::string_view path,
                           std::string_view body) {
  try {
    if (method == "POST" && path == "/enroll") return enroll(service, body);
    if (method == "POST" && path == "/challenge") return challenge(service, body);
    if (method == "POST" && path == "/verify") return verify(service, body);
    const auto parts = split_path(path);
    if (method == "DELETE" && parts.size() == 3 && parts[0] == "enrollment") {
      service.revoke(parts[1], parts[2]);
      return {204, ""};
    }
    return error_reply(404, "not-found", "no route for " + std::string(method) + " " + std::string(path));
  } catch (const Error& e) {
    return error_reply(status_for(e.code()), to_string(e.code()), e.what());
  } catch (const std::exception& e) {
    return error_reply(500, "internal", e.what());
  }
}

void register_routes(httplib::Server& server, AuthService& service) {
  auto adapter = [&service](const httplib::Request& req, httplib::Response& res) {
    const ApiResponse response = handle_request(service, req.method, req.path, req.body);
    res.status = response.status;
    if (!response.body.empty()) res.set_content(response.body, "application/json");
  };
  server.Post(".*", adapter);
  server.Delete(".*", adapter);
  server.Get(".*", adapter);
}

}  // namespace pathword
