#pragma once

/**
 * Remote backend speaking a completions-style HTTP API.
 *
 * Scoring echoes the prompt+continuation with per-token log-probabilities and
 * sums the tokens whose text offset lands inside the continuation. Request
 * building and response parsing are free functions so the wire contract is
 * testable without a network; the backend itself adds transport, retries with
 * exponential backoff on transient failures, and an in-flight request cap.
 */

#include <chrono>
#include <cstdlib>
#include <semaphore>
#include <string>
#include <thread>
#include <vector>

#include "httplib.h"
#include "json.hpp"

#include "thinksum/backend.hpp"

namespace thinksum {

struct RemoteBackendOptions {
  std::string endpoint = "http://127.0.0.1:8080";  // base URL, optional path
  std::string model;
  std::string api_key;          // sent as a bearer token when non-empty
  int connect_timeout_ms = 5000;
  int read_timeout_ms = 600000;
  int max_retries = 3;          // on top of the first attempt
  int retry_backoff_ms = 250;   // doubled after each failed attempt
  int max_in_flight = 8;
};

/// Split "http://host:port/some/path" into base URL and path; the path
/// defaults to the OpenAI-style completion route when the URL has none.
inline std::pair<std::string, std::string> split_endpoint(const std::string& url) {
  size_t scheme = url.find("://");
  size_t path_start = url.find('/', scheme == std::string::npos ? 0 : scheme + 3);
  if (path_start == std::string::npos || path_start + 1 == url.size()) {
    std::string base = url;
    if (!base.empty() && base.back() == '/') base.pop_back();
    return {base, "/v1/completions"};
  }
  return {url.substr(0, path_start), url.substr(path_start)};
}

/// JSON body for one completion request. Scoring queries set echo=true and
/// max_tokens=0 so the response carries the prompt's own token scores.
inline nlohmann::json build_completion_request(const std::string& model,
                                               const std::string& prompt, int max_tokens,
                                               double temperature, int logprobs, bool echo,
                                               const std::vector<std::string>& stop) {
  nlohmann::json body;
  body["model"] = model;
  body["prompt"] = prompt;
  body["max_tokens"] = max_tokens;
  body["temperature"] = temperature;
  body["logprobs"] = logprobs;
  body["echo"] = echo;
  if (!stop.empty()) body["stop"] = stop;
  return body;
}

/**
 * Sum the continuation's token log-probabilities from an echoed response:
 * tokens whose text_offset is at or past the prompt's byte length. Entries
 * with null log-probability (the sequence-initial token) are skipped.
 * Throws MalformedResponse when the shape does not permit isolation.
 */
inline double parse_scored_response(const nlohmann::json& response, const std::string& prompt) {
  if (!response.contains("choices") || !response["choices"].is_array() ||
      response["choices"].empty()) {
    throw MalformedResponse("completion response has no choices");
  }
  const auto& choice = response["choices"][0];
  if (!choice.contains("logprobs") || !choice["logprobs"].is_object()) {
    throw MalformedResponse("completion response has no logprobs");
  }
  const auto& lp = choice["logprobs"];
  if (!lp.contains("token_logprobs") || !lp.contains("text_offset") ||
      !lp["token_logprobs"].is_array() || !lp["text_offset"].is_array() ||
      lp["token_logprobs"].size() != lp["text_offset"].size()) {
    throw MalformedResponse("logprobs lack aligned token_logprobs/text_offset");
  }
  const auto& logprobs = lp["token_logprobs"];
  const auto& offsets = lp["text_offset"];
  double total = 0.0;
  size_t counted = 0;
  for (size_t i = 0; i < logprobs.size(); ++i) {
    if (!offsets[i].is_number_integer()) {
      throw MalformedResponse("text_offset entry is not an integer");
    }
    if (offsets[i].get<long long>() < static_cast<long long>(prompt.size())) continue;
    if (logprobs[i].is_null()) continue;
    if (!logprobs[i].is_number()) {
      throw MalformedResponse("token_logprobs entry is not a number");
    }
    total += logprobs[i].get<double>();
    ++counted;
  }
  if (counted == 0) {
    throw MalformedResponse("no scorable tokens at or past the prompt boundary");
  }
  return total;
}

inline std::string parse_generation_response(const nlohmann::json& response) {
  if (!response.contains("choices") || !response["choices"].is_array() ||
      response["choices"].empty()) {
    throw MalformedResponse("completion response has no choices");
  }
  const auto& choice = response["choices"][0];
  if (!choice.contains("text") || !choice["text"].is_string()) {
    throw MalformedResponse("completion choice has no text");
  }
  return choice["text"].get<std::string>();
}

class RemoteBackend : public LmBackend {
 public:
  explicit RemoteBackend(RemoteBackendOptions options)
      : options_(std::move(options)),
        in_flight_(options_.max_in_flight > 0 ? options_.max_in_flight : 1) {
    std::tie(base_url_, path_) = split_endpoint(options_.endpoint);
  }

  std::string name() const override { return "remote:" + options_.model; }

 protected:
  double do_score(const std::string& prompt, const std::string& continuation) override {
    nlohmann::json body = build_completion_request(options_.model, prompt + continuation,
                                                   /*max_tokens=*/0, /*temperature=*/0.0,
                                                   /*logprobs=*/1, /*echo=*/true, {});
    return parse_scored_response(post(body), prompt);
  }

  std::string do_generate(const std::string& prompt, const GenerationParams& params) override {
    nlohmann::json body =
        build_completion_request(options_.model, prompt, params.max_tokens, params.temperature,
                                 /*logprobs=*/0, /*echo=*/false, params.stop);
    // Servers honour stop themselves; truncate again in case one does not.
    return truncate_at_stop(parse_generation_response(post(body)), params.stop);
  }

 private:
  nlohmann::json post(const nlohmann::json& body) {
    in_flight_.acquire();
    struct Release {
      std::counting_semaphore<>& sem;
      ~Release() { sem.release(); }
    } release{in_flight_};

    const std::string payload = body.dump();
    int backoff_ms = options_.retry_backoff_ms;
    std::string last_error;
    for (int attempt = 0; attempt <= options_.max_retries; ++attempt) {
      if (attempt > 0) {
        std::this_thread::sleep_for(std::chrono::milliseconds(backoff_ms));
        backoff_ms *= 2;
      }
      httplib::Client client(base_url_);
      client.set_connection_timeout(options_.connect_timeout_ms / 1000,
                                    (options_.connect_timeout_ms % 1000) * 1000);
      client.set_read_timeout(options_.read_timeout_ms / 1000,
                              (options_.read_timeout_ms % 1000) * 1000);
      httplib::Headers headers;
      if (!options_.api_key.empty()) {
        headers.emplace("Authorization", "Bearer " + options_.api_key);
      }
      auto result = client.Post(path_, headers, payload, "application/json");
      if (!result) {
        last_error = "no response from " + base_url_ + path_;
        continue;
      }
      if (result->status >= 500 || result->status == 429) {
        last_error = "status " + std::to_string(result->status) + " from " + path_;
        continue;
      }
      if (result->status != 200) {
        throw MalformedResponse("status " + std::to_string(result->status) + " from " + path_);
      }
      nlohmann::json response = nlohmann::json::parse(result->body, nullptr, false);
      if (response.is_discarded()) {
        throw MalformedResponse("response body is not JSON");
      }
      return response;
    }
    throw BackendUnreachable(last_error.empty() ? "request failed" : last_error);
  }

  RemoteBackendOptions options_;
  std::string base_url_;
  std::string path_;
  std::counting_semaphore<> in_flight_;
};

}  // namespace thinksum
