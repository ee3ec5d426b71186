#pragma once

/**
 * Persistent query cache.
 *
 * CachedBackend wraps any LmBackend and answers repeated queries from a
 * JSONL store, so a re-run of the same evaluation touches the wrapped backend
 * zero times. Keys are 64-bit FNV-1a digests of a canonical encoding that
 * includes the wrapped backend's name, the query kind, and every parameter
 * that affects the answer. Records the loader cannot parse are skipped and
 * counted; the query they belonged to simply misses and is re-executed.
 */

#include <chrono>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <mutex>
#include <string>
#include <string_view>
#include <unordered_map>

#include "json.hpp"

#include "thinksum/backend.hpp"

namespace thinksum {

inline std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  static const char digits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[v & 0xf];
    v >>= 4;
  }
  return out;
}

namespace detail {

inline std::string utc_timestamp() {
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

}  // namespace detail

class CachedBackend : public LmBackend {
 public:
  /// Wraps `inner`; `path` is the JSONL store, loaded now and appended on
  /// each miss. An empty path keeps the cache in memory only.
  CachedBackend(LmBackend& inner, std::string path) : inner_(inner), path_(std::move(path)) {
    if (path_.empty()) return;
    std::ifstream in(path_);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      nlohmann::json row = nlohmann::json::parse(line, nullptr, false);
      if (row.is_discarded() || !row.contains("key") || !row["key"].is_string()) {
        ++skipped_records_;
        continue;
      }
      const std::string key = row["key"].get<std::string>();
      if (row.contains("logprob") && row["logprob"].is_number()) {
        scores_[key] = row["logprob"].get<double>();
      } else if (row.contains("generation") && row["generation"].is_string()) {
        generations_[key] = row["generation"].get<std::string>();
      } else {
        ++skipped_records_;
      }
    }
  }

  std::string name() const override { return inner_.name() + "+cache"; }

  std::uint64_t hits() const { return hits_; }
  std::uint64_t misses() const { return misses_; }
  std::uint64_t skipped_records() const { return skipped_records_; }

 protected:
  double do_score(const std::string& prompt, const std::string& continuation) override {
    const std::string key =
        digest(nlohmann::json::array({inner_.name(), "score", prompt, continuation}));
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto it = scores_.find(key);
      if (it != scores_.end()) {
        ++hits_;
        return it->second;
      }
    }
    double value = inner_.score_continuation(prompt, continuation);
    std::lock_guard<std::mutex> lock(mutex_);
    ++misses_;
    scores_[key] = value;
    nlohmann::json row;
    row["key"] = key;
    row["prompt"] = prompt;
    row["continuation"] = continuation;
    row["params_digest"] = "";
    row["logprob"] = value;
    row["timestamp"] = detail::utc_timestamp();
    append(row);
    return value;
  }

  std::string do_generate(const std::string& prompt, const GenerationParams& params) override {
    const nlohmann::json params_canonical =
        nlohmann::json::array({params.temperature, params.max_tokens, params.stop});
    const std::string params_digest = digest(params_canonical);
    const std::string key =
        digest(nlohmann::json::array({inner_.name(), "gen", prompt, params_canonical}));
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto it = generations_.find(key);
      if (it != generations_.end()) {
        ++hits_;
        return it->second;
      }
    }
    std::string value = inner_.generate(prompt, params);
    std::lock_guard<std::mutex> lock(mutex_);
    ++misses_;
    generations_[key] = value;
    nlohmann::json row;
    row["key"] = key;
    row["prompt"] = prompt;
    row["params_digest"] = params_digest;
    row["generation"] = value;
    row["timestamp"] = detail::utc_timestamp();
    append(row);
    return value;
  }

 private:
  static std::string digest(const nlohmann::json& canonical) {
    return hex64(fnv1a64(canonical.dump()));
  }

  // Callers hold mutex_; one line per record, flushed immediately.
  void append(const nlohmann::json& row) {
    if (path_.empty()) return;
    if (!out_.is_open()) {
      out_.open(path_, std::ios::app);
      if (!out_) throw std::runtime_error("cache not writable: " + path_);
    }
    out_ << row.dump() << '\n';
    out_.flush();
  }

  LmBackend& inner_;
  std::string path_;
  std::mutex mutex_;
  std::ofstream out_;
  std::unordered_map<std::string, double> scores_;
  std::unordered_map<std::string, std::string> generations_;
  std::uint64_t hits_ = 0;
  std::uint64_t misses_ = 0;
  std::uint64_t skipped_records_ = 0;
};

}  // namespace thinksum
