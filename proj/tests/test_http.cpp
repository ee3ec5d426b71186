#include <atomic>
#include <string>
#include <thread>
#include <vector>

#include "doctest.h"
#include "httplib.h"
#include "json.hpp"

#include "thinksum/http_backend.hpp"

using namespace thinksum;
using nlohmann::json;

namespace {

/**
 * Loopback completion server with a one-byte-per-token model: token i covers
 * byte i, the first token has a null log-probability, every later token
 * scores -0.5. Generations always return `generation_text`.
 */
class LoopbackServer {
 public:
  LoopbackServer() {
    server_.Post("/v1/completions", [this](const httplib::Request& req,
                                           httplib::Response& res) {
      requests_.fetch_add(1);
      last_auth_ = req.get_header_value("Authorization");
      if (fail_next_.load() > 0) {
        fail_next_.fetch_sub(1);
        res.status = 503;
        return;
      }
      if (!body_override_.empty()) {
        res.set_content(body_override_, content_type_.c_str());
        return;
      }
      const json body = json::parse(req.body);
      json response;
      if (body.value("echo", false)) {
        const std::string text = body["prompt"].get<std::string>();
        json token_logprobs = json::array();
        json text_offset = json::array();
        for (size_t i = 0; i < text.size(); ++i) {
          if (i == 0) {
            token_logprobs.push_back(nullptr);
          } else {
            token_logprobs.push_back(-0.5);
          }
          text_offset.push_back(i);
        }
        json choice;
        choice["text"] = text;
        choice["logprobs"]["token_logprobs"] = token_logprobs;
        choice["logprobs"]["text_offset"] = text_offset;
        response["choices"] = json::array({choice});
      } else {
        json choice;
        choice["text"] = generation_text_;
        response["choices"] = json::array({choice});
      }
      res.set_content(response.dump(), "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }

  ~LoopbackServer() {
    server_.stop();
    thread_.join();
  }

  RemoteBackendOptions options() const {
    RemoteBackendOptions opts;
    opts.endpoint = "http://127.0.0.1:" + std::to_string(port_);
    opts.model = "test-model";
    opts.max_retries = 2;
    opts.retry_backoff_ms = 1;
    return opts;
  }

  void fail_next(int n) { fail_next_.store(n); }
  void respond_raw(std::string body, std::string content_type = "application/json") {
    body_override_ = std::move(body);
    content_type_ = std::move(content_type);
  }
  int requests() const { return requests_.load(); }
  std::string last_auth() const { return last_auth_; }

 private:
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::atomic<int> requests_{0};
  std::atomic<int> fail_next_{0};
  std::string body_override_;
  std::string content_type_ = "application/json";
  std::string generation_text_ = "hello STOP world";
  std::string last_auth_;
};

}  // namespace

TEST_CASE("split_endpoint separates base URL and path") {
  CHECK(split_endpoint("http://127.0.0.1:8080") ==
        std::pair<std::string, std::string>{"http://127.0.0.1:8080", "/v1/completions"});
  CHECK(split_endpoint("http://127.0.0.1:8080/") ==
        std::pair<std::string, std::string>{"http://127.0.0.1:8080", "/v1/completions"});
  CHECK(split_endpoint("http://host:1234/v2/engines/x") ==
        std::pair<std::string, std::string>{"http://host:1234", "/v2/engines/x"});
}

TEST_CASE("build_completion_request carries the wire fields") {
  const json body = build_completion_request("m", "p", 16, 0.5, 1, true, {"\n"});
  CHECK(body["model"] == "m");
  CHECK(body["prompt"] == "p");
  CHECK(body["max_tokens"] == 16);
  CHECK(body["temperature"] == 0.5);
  CHECK(body["logprobs"] == 1);
  CHECK(body["echo"] == true);
  CHECK(body["stop"] == json::array({"\n"}));
  CHECK(!build_completion_request("m", "p", 16, 0.5, 0, false, {}).contains("stop"));
}

TEST_CASE("parse_scored_response sums tokens at or past the prompt boundary") {
  const json response = json::parse(R"({
    "choices": [{"logprobs": {
      "token_logprobs": [null, -1.0, -2.0, -4.0],
      "text_offset":    [0,     1,    2,    3]
    }}]
  })");
  CHECK(parse_scored_response(response, "ab") == -6.0);   // offsets 2 and 3
  CHECK(parse_scored_response(response, "a") == -7.0);    // offsets 1..3
  CHECK(parse_scored_response(response, "abc") == -4.0);  // offset 3 only
}

TEST_CASE("parse_scored_response skips null entries inside the continuation") {
  const json response = json::parse(R"({
    "choices": [{"logprobs": {
      "token_logprobs": [null, -1.0],
      "text_offset":    [0,     1]
    }}]
  })");
  // Empty prompt: the null initial token is skipped, not counted.
  CHECK(parse_scored_response(response, "") == -1.0);
}

TEST_CASE("parse_scored_response rejects malformed shapes") {
  CHECK_THROWS_AS(parse_scored_response(json::parse(R"({})"), "p"), MalformedResponse);
  CHECK_THROWS_AS(parse_scored_response(json::parse(R"({"choices": []})"), "p"),
                  MalformedResponse);
  CHECK_THROWS_AS(parse_scored_response(json::parse(R"({"choices": [{}]})"), "p"),
                  MalformedResponse);
  CHECK_THROWS_AS(
      parse_scored_response(
          json::parse(R"({"choices": [{"logprobs": {"token_logprobs": [-1.0]}}]})"), "p"),
      MalformedResponse);
  CHECK_THROWS_AS(parse_scored_response(json::parse(R"({"choices": [{"logprobs":
      {"token_logprobs": [-1.0, -2.0], "text_offset": [0]}}]})"), "p"),
      MalformedResponse);
  CHECK_THROWS_AS(parse_scored_response(json::parse(R"({"choices": [{"logprobs":
      {"token_logprobs": [-1.0], "text_offset": ["x"]}}]})"), "p"),
      MalformedResponse);
  CHECK_THROWS_AS(parse_scored_response(json::parse(R"({"choices": [{"logprobs":
      {"token_logprobs": ["x"], "text_offset": [5]}}]})"), "ab"),
      MalformedResponse);
  // All tokens inside the prompt: nothing to count.
  CHECK_THROWS_AS(parse_scored_response(json::parse(R"({"choices": [{"logprobs":
      {"token_logprobs": [null, -1.0], "text_offset": [0, 1]}}]})"), "abcdef"),
      MalformedResponse);
}

TEST_CASE("parse_generation_response extracts the text") {
  CHECK(parse_generation_response(json::parse(R"({"choices": [{"text": "out"}]})")) == "out");
  CHECK_THROWS_AS(parse_generation_response(json::parse(R"({"choices": [{}]})")),
                  MalformedResponse);
  CHECK_THROWS_AS(parse_generation_response(json::parse(R"({})")), MalformedResponse);
}

TEST_CASE("remote scoring isolates the continuation via text offsets") {
  LoopbackServer server;
  RemoteBackend backend(server.options());
  // One token per byte at -0.5 each: the continuation's bytes are the score.
  CHECK(backend.score_continuation("ab", "xyz") == doctest::Approx(-1.5));
  CHECK(backend.score_continuation("a", "continuation") == doctest::Approx(-6.0));
  CHECK(backend.name() == "remote:test-model");
}

TEST_CASE("remote generation applies stop sequences") {
  LoopbackServer server;
  RemoteBackend backend(server.options());
  GenerationParams params;
  params.stop = {"STOP"};
  CHECK(backend.generate("p", params) == "hello ");
}

TEST_CASE("the bearer token rides the Authorization header") {
  LoopbackServer server;
  auto opts = server.options();
  opts.api_key = "sk-secret";
  RemoteBackend backend(opts);
  backend.score_continuation("ab", "c");
  CHECK(server.last_auth() == "Bearer sk-secret");

  RemoteBackend anonymous(server.options());
  anonymous.score_continuation("ab", "c");
  CHECK(server.last_auth() == "");
}

TEST_CASE("transient server errors are retried until success") {
  LoopbackServer server;
  server.fail_next(2);
  RemoteBackend backend(server.options());  // max_retries = 2
  CHECK(backend.score_continuation("ab", "xyz") == doctest::Approx(-1.5));
  CHECK(server.requests() == 3);  // two 503s, then the success
}

TEST_CASE("persistent server errors become BackendUnreachable") {
  LoopbackServer server;
  server.fail_next(1000);
  RemoteBackend backend(server.options());
  CHECK_THROWS_AS(backend.score_continuation("ab", "xyz"), BackendUnreachable);
  CHECK(server.requests() == 3);  // first attempt + max_retries
}

TEST_CASE("a missing route is malformed, not retryable") {
  LoopbackServer server;
  // Use the live server but a route it does not serve.
  auto opts = server.options();
  opts.endpoint = split_endpoint(opts.endpoint).first + "/wrong/path";
  const int before = server.requests();
  RemoteBackend backend(opts);
  CHECK_THROWS_AS(backend.score_continuation("ab", "c"), MalformedResponse);
  CHECK(server.requests() == before);  // 404 came from the router, no retry
}

TEST_CASE("a non-JSON 200 body is malformed") {
  LoopbackServer server;
  server.respond_raw("this is not json", "text/plain");
  RemoteBackend backend(server.options());
  CHECK_THROWS_AS(backend.score_continuation("ab", "c"), MalformedResponse);
}

TEST_CASE("an unreachable host is reported after retries") {
  RemoteBackendOptions opts;
  opts.endpoint = "http://127.0.0.1:9";  // discard port: nothing listens here
  opts.model = "m";
  opts.max_retries = 1;
  opts.retry_backoff_ms = 1;
  opts.connect_timeout_ms = 50;
  RemoteBackend backend(opts);
  CHECK_THROWS_AS(backend.score_continuation("ab", "c"), BackendUnreachable);
}
