// SPDX-License-Identifier: Apache-2.0
#include "cli/output.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace cubicpt::cli {

std::string format_double(double x, int digits) {
  if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

namespace {

std::string quote(const std::string& s) {
  // nlohmann escapes strings; reuse it on a bare string value.
  return Json(s).dump();
}

void emit(std::ostringstream& o, const Json& j, int indent, int depth) {
  const std::string pad = indent > 0 ? std::string(std::size_t(indent) * (depth + 1), ' ') : "";
  const std::string close_pad = indent > 0 ? std::string(std::size_t(indent) * depth, ' ') : "";
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        o << "{}";
        return;
      }
      o << "{" << nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) o << "," << nl;
        first = false;
        o << pad << quote(it.key()) << (indent > 0 ? ": " : ":");
        emit(o, it.value(), indent, depth + 1);
      }
      o << nl << close_pad << "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        o << "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      bool flat = true;
      for (const auto& v : j) flat = flat && !v.is_structured();
      if (flat) {
        o << "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) o << (indent > 0 ? ", " : ",");
          emit(o, j[i], indent, depth + 1);
        }
        o << "]";
        return;
      }
      o << "[" << nl;
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) o << "," << nl;
        o << pad;
        emit(o, j[i], indent, depth + 1);
      }
      o << nl << close_pad << "]";
      return;
    }
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      o << (std::isfinite(x) ? format_double(x, 17) : "null");
      return;
    }
    default:
      o << j.dump();
  }
}

}  // namespace

std::string dump_json(const Json& j, int indent) {
  std::ostringstream o;
  emit(o, j, indent, 0);
  o << "\n";
  return o.str();
}

Json complex_json(std::complex<double> z) { return Json::array({z.real(), z.imag()}); }

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {
  if (header_.empty()) throw std::invalid_argument("CsvTable: empty header");
}

CsvTable& CsvTable::row() {
  rows_.emplace_back();
  return *this;
}

CsvTable& CsvTable::add(double x) { return add(format_double(x, 12)); }

CsvTable& CsvTable::add(long long x) { return add(std::to_string(x)); }

CsvTable& CsvTable::add(const std::string& s) {
  if (rows_.empty()) throw std::logic_error("CsvTable: add before row");
  if (rows_.back().size() == header_.size()) throw std::logic_error("CsvTable: row is full");
  const bool needs_quotes = s.find_first_of(",\"\n") != std::string::npos;
  if (!needs_quotes) {
    rows_.back().push_back(s);
  } else {
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    rows_.back().push_back(q + "\"");
  }
  return *this;
}

std::string CsvTable::str() const {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + cells[i];
    out += "\n";
  };
  line(header_);
  for (const auto& r : rows_) {
    if (r.size() != header_.size()) throw std::logic_error("CsvTable: incomplete row");
    line(r);
  }
  return out;
}

std::string content_hash(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace cubicpt::cli
