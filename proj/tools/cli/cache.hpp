// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "cli/output.hpp"

namespace cubicpt::cli {

inline constexpr const char* kVersion = "0.1.0";

// Content-addressed store of serialized records. An empty directory disables it.
class Cache {
 public:
  explicit Cache(std::filesystem::path dir = {});
  bool enabled() const { return !dir_.empty(); }
  // Key over operation, parameters (tolerances included) and artifact version.
  static std::string key(const std::string& op, const Json& params);
  std::optional<std::string> get(const std::string& key) const;
  // Write-temp-then-rename.
  void put(const std::string& key, const std::string& op, const std::string& payload) const;
  std::filesystem::path entry_path(const std::string& key) const { return dir_ / (key + ".json"); }

 private:
  std::filesystem::path dir_;
};

// Writes `data` to `path` through a temporary file in the same directory.
void write_atomic(const std::filesystem::path& path, const std::string& data);

std::string utc_timestamp();

}  // namespace cubicpt::cli
