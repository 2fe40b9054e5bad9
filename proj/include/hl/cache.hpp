#pragma once

#include <cstdint>
#include <mutex>
#include <optional>
#include <string>

#include "json.hpp"

namespace hl {

using Json = nlohmann::json;

inline constexpr int kCacheVersion = 1;

/// Canonical form of a parameter object: keys sorted, numbers with an
/// integral value stored as integers, other numbers as doubles. Equal values
/// written differently ("1.50", "1.5", "15e-1") canonicalize identically.
Json canonical_params(const Json& params);

/// 16 lowercase hex digits of FNV-1a over the canonical serialization.
std::string params_hash(const Json& params);

/// Append-only JSON-lines result cache in <dir>/hl-cache.jsonl. Each line is
/// {"op", "paramsHash", "params", "value", "version"}; unreadable lines are
/// skipped and counted.
class ResultCache {
 public:
  explicit ResultCache(std::string dir);

  std::optional<Json> lookup(const std::string& op, const Json& params);
  void store(const std::string& op, const Json& params, const Json& value);

  const std::string& path() const { return path_; }
  /// Lines skipped as corrupt by the most recent lookup.
  int skipped() const { return skipped_; }

 private:
  std::string path_;
  int skipped_ = 0;
  std::mutex mutex_;
};

}  // namespace hl
