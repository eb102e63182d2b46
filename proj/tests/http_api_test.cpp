#include "pathword/http_api.hpp"

#include <httplib.h>

#include <json.hpp>
#include <thread>

#include "gtest/gtest.h"
#include "pathword/service.hpp"
#include "service_support.hpp"

namespace pathword {
namespace {

using nlohmann::json;
using pathword::testing::FakeClock;
using pathword::testing::TempDir;
using pathword::testing::make_config;

class HandleRequestTest : public ::testing::Test {
 protected:
  HandleRequestTest() : service_(make_config(dir_.path(), MasterKey::generate(), clock_)) {}

  json call(std::string_view method, std::string_view path, const json& body, int expect) {
    const ApiResponse r = handle_request(service_, method, path, body.is_null() ? "" : body.dump());
    EXPECT_EQ(r.status, expect) << method << " " << path << ": " << r.body;
    return r.body.empty() ? json() : json::parse(r.body);
  }

  static json enroll_body(const std::string& user) {
    return {{"user", user},
            {"label", "high"},
            {"path", path_to_json(random_path({10, 10}, 10, 55))},
            {"grid_params", {{"alphabet", "digit-pairs"}, {"rows", 10}, {"cols", 10}}}};
  }

  TempDir dir_;
  FakeClock clock_;
  AuthService service_;
};

TEST_F(HandleRequestTest, FullProtocol) {
  const json record = call("POST", "/enroll", enroll_body("alice"), 201).at("record");
  EXPECT_EQ(record.at("user"), "alice");
  EXPECT_EQ(record.at("path_length"), 10);
  EXPECT_FALSE(record.contains("path"));
  call("POST", "/enroll", enroll_body("alice"), 409);

  const json challenge = call("POST", "/challenge", {{"user", "alice"}, {"label", "high"}}, 200);
  const Diagram d = diagram_from_json(challenge.at("diagram"));
  EXPECT_EQ(challenge.at("expires_at"), to_unix_millis(clock_.now() + kDefaultChallengeTtl));
  const std::string password = derive(random_path({10, 10}, 10, 55), d).text;
  const json verify = {{"challenge_id", challenge.at("challenge_id")}, {"password", password}};
  EXPECT_EQ(call("POST", "/verify", verify, 200).at("outcome"), "accepted");
  EXPECT_EQ(call("POST", "/verify", verify, 200).at("outcome"), "replayed");
  EXPECT_EQ(call("POST", "/verify", {{"challenge_id", "x"}, {"password", "y"}}, 200).at("outcome"),
            "unknown-challenge");

  call("DELETE", "/enrollment/alice/high", nullptr, 204);
  call("DELETE", "/enrollment/alice/high", nullptr, 404);
  call("POST", "/challenge", {{"user", "alice"}, {"label", "high"}}, 404);
}

TEST_F(HandleRequestTest, DefaultsToStandardGrid) {
  json body = enroll_body("bob");
  body.erase("grid_params");
  const json record = call("POST", "/enroll", body, 201).at("record");
  EXPECT_EQ(record.at("grid_params").at("alphabet"), "digit-pairs");
  EXPECT_EQ(record.at("grid_params").at("rows"), 10);
}

TEST_F(HandleRequestTest, BadRequests) {
  EXPECT_EQ(handle_request(service_, "POST", "/enroll", "not json").status, 400);
  EXPECT_EQ(handle_request(service_, "POST", "/enroll", "[]").status, 400);
  call("POST", "/enroll", {{"user", "alice"}}, 400);
  json mismatch = enroll_body("carol");
  mismatch["path"] = path_to_json(random_path({6, 6}, 4, 1));
  const json error = call("POST", "/enroll", mismatch, 400);
  EXPECT_EQ(error.at("error"), "dimension-mismatch");
  call("POST", "/verify", {{"challenge_id", 3}}, 400);
  call("GET", "/enroll", nullptr, 404);
  call("POST", "/nowhere", json::object(), 404);
}

TEST(HttpServerTest, RoundTripOverSockets) {
  TempDir dir;
  FakeClock clock;
  AuthService service(make_config(dir.path(), MasterKey::generate(), clock));
  httplib::Server server;
  register_routes(server, service);
  const int port = server.bind_to_any_port("127.0.0.1");
  ASSERT_GT(port, 0);
  std::thread thread([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  httplib::Client client("127.0.0.1", port);
  const Path path = random_path({10, 10}, 10, 8);
  const json enroll = {{"user", "alice"}, {"label", "high"}, {"path", path_to_json(path)}};
  auto res = client.Post("/enroll", enroll.dump(), "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 201);

  res = client.Post("/challenge", json{{"user", "alice"}, {"label", "high"}}.dump(), "application/json");
  ASSERT_TRUE(res);
  ASSERT_EQ(res->status, 200);
  const json challenge = json::parse(res->body);
  const std::string password = derive(path, diagram_from_json(challenge.at("diagram"))).text;

  res = client.Post("/verify",
                    json{{"challenge_id", challenge.at("challenge_id")}, {"password", password}}.dump(),
                    "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(json::parse(res->body).at("outcome"), "accepted");

  res = client.Delete("/enrollment/alice/high");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 204);

  server.stop();
  thread.join();
}

}  // namespace
}  // namespace pathword
