#include "hl/cache.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>

#include "hl/arith.hpp"

namespace hl {

namespace {

Json canonical_value(const Json& v) {
  if (v.is_object()) return canonical_params(v);
  if (v.is_array()) {
    Json out = Json::array();
    for (const Json& e : v) out.push_back(canonical_value(e));
    return out;
  }
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (std::isfinite(d) && d == std::trunc(d) && std::fabs(d) < 9.0e15)
      return static_cast<std::int64_t>(d);
    return d;
  }
  if (v.is_number_unsigned()) {
    const auto u = v.get<std::uint64_t>();
    if (u <= static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()))
      return static_cast<std::int64_t>(u);
  }
  return v;
}

}  // namespace

Json canonical_params(const Json& params) {
  if (!params.is_object()) throw DomainError("cache: params must be a JSON object");
  Json out = Json::object();
  for (auto it = params.begin(); it != params.end(); ++it) out[it.key()] = canonical_value(it.value());
  return out;
}

std::string params_hash(const Json& params) {
  const std::string text = canonical_params(params).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ResultCache::ResultCache(std::string dir) {
  std::filesystem::create_directories(dir);
  path_ = (std::filesystem::path(dir) / "hl-cache.jsonl").string();
}

std::optional<Json> ResultCache::lookup(const std::string& op, const Json& params) {
  std::lock_guard lock(mutex_);
  skipped_ = 0;
  const Json canon = canonical_params(params);
  const std::string hash = params_hash(canon);
  std::ifstream in(path_);
  std::optional<Json> found;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    Json e = Json::parse(line, nullptr, false);
    if (e.is_discarded() || !e.is_object() || !e.contains("op") || !e.contains("paramsHash") ||
        !e.contains("params") || !e.contains("value") || !e.contains("version")) {
      ++skipped_;
      continue;
    }
    if (e["op"] == op && e["version"] == kCacheVersion && e["paramsHash"] == hash && e["params"] == canon)
      found = e["value"];
  }
  if (skipped_ > 0) std::fprintf(stderr, "warning: skipped %d corrupt cache line(s) in %s\n", skipped_, path_.c_str());
  return found;
}

void ResultCache::store(const std::string& op, const Json& params, const Json& value) {
  std::lock_guard lock(mutex_);
  const Json canon = canonical_params(params);
  const Json entry = {{"op", op},
                      {"paramsHash", params_hash(canon)},
                      {"params", canon},
                      {"value", value},
                      {"version", kCacheVersion}};
  std::ofstream out(path_, std::ios::app);
  out << entry.dump() << '\n';
  if (!out) throw DomainError("cache: cannot write " + path_);
}

}  // namespace hl
