// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace cubicpt::cli {

using Json = nlohmann::ordered_json;

// JSON text with doubles at 17 significant digits; non-finite numbers become null.
std::string dump_json(const Json& j, int indent = 2);

Json complex_json(std::complex<double> z);

// CSV with a mandatory header, ',' delimiter, LF line endings and doubles at 12 significant digits.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);
  CsvTable& row();
  CsvTable& add(double x);
  CsvTable& add(long long x);
  CsvTable& add(int x) { return add(static_cast<long long>(x)); }
  CsvTable& add(const std::string& s);
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

std::string format_double(double x, int digits);

// FNV-1a, 64 bit, as 16 lowercase hex digits.
std::string content_hash(const std::string& data);

}  // namespace cubicpt::cli
