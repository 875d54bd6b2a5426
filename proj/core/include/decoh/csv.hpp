#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace decoh {

/// Shortest-form decimal with 12 significant digits ("%.12g").
std::string format_number(double x);

/// Rounds x to 12 significant digits, i.e. the value format_number prints.
double round_12(double x);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

void write_csv_header(std::ostream& os, const std::vector<std::string>& columns);
void write_csv_row(std::ostream& os, const std::vector<double>& values);

/// Comma-separated, no quoting. Throws ConfigError on ragged rows.
CsvTable read_csv(std::istream& is);

/// Column index by name; throws ConfigError if absent.
std::size_t column_index(const CsvTable& table, const std::string& name);

double parse_number(const std::string& field);

}  // namespace decoh
