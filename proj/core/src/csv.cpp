#include "decoh/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include "decoh/error.hpp"

namespace decoh {

std::string format_number(double x) {
  char buf[32];
  if (x == 0.0) x = 0.0;  // print -0 as 0
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

double round_12(double x) { return std::strtod(format_number(x).c_str(), nullptr); }

void write_csv_header(std::ostream& os, const std::vector<std::string>& columns) {
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
  os << '\n';
}

void write_csv_row(std::ostream& os, const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) os << (i ? "," : "") << format_number(values[i]);
  os << '\n';
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

CsvTable read_csv(std::istream& is) {
  CsvTable t;
  std::string line;
  bool first = true;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split(line);
    if (first) {
      t.header = std::move(fields);
      first = false;
      continue;
    }
    if (fields.size() != t.header.size()) {
      fail(ErrorCode::ConfigError, "csv row has " + std::to_string(fields.size()) +
                                       " fields, header has " + std::to_string(t.header.size()));
    }
    t.rows.push_back(std::move(fields));
  }
  if (first) fail(ErrorCode::ConfigError, "csv input is empty");
  return t;
}

std::size_t column_index(const CsvTable& table, const std::string& name) {
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (table.header[i] == name) return i;
  }
  fail(ErrorCode::ConfigError, "csv has no column '" + name + "'");
}

double parse_number(const std::string& field) {
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (field.empty() || end != field.c_str() + field.size()) {
    fail(ErrorCode::ConfigError, "not a number: '" + field + "'");
  }
  return v;
}

}  // namespace decoh
