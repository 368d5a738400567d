// SPDX-License-Identifier: Apache-2.0
#include "cli/cache.hpp"

#include <atomic>
#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unistd.h>

namespace cubicpt::cli {

namespace fs = std::filesystem;

Cache::Cache(fs::path dir) : dir_(std::move(dir)) {
  if (enabled()) fs::create_directories(dir_);
}

std::string Cache::key(const std::string& op, const Json& params) {
  return content_hash(op + "\n" + dump_json(params, 0) + "\n" + kVersion);
}

std::optional<std::string> Cache::get(const std::string& key) const {
  if (!enabled()) return std::nullopt;
  std::ifstream in(entry_path(key), std::ios::binary);
  if (!in) return std::nullopt;
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    const auto j = Json::parse(ss.str());
    if (j.at("key").get<std::string>() != key || j.at("version").get<std::string>() != kVersion)
      return std::nullopt;
    return j.at("payload").get<std::string>();
  } catch (const std::exception&) {
    return std::nullopt;  // unreadable entries are recomputed
  }
}

void Cache::put(const std::string& key, const std::string& op, const std::string& payload) const {
  if (!enabled()) return;
  Json j;
  j["key"] = key;
  j["operation"] = op;
  j["version"] = kVersion;
  j["created"] = utc_timestamp();
  j["payload"] = payload;
  write_atomic(entry_path(key), dump_json(j));
}

void write_atomic(const fs::path& path, const std::string& data) {
  static std::atomic<unsigned> counter{0};
  const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  std::ostringstream name;
  name << ".tmp-" << path.filename().string() << "-" << ::getpid() << "-"
       << std::hash<std::thread::id>{}(std::this_thread::get_id()) << "-" << counter++;
  const fs::path tmp = dir / name.str();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace cubicpt::cli
