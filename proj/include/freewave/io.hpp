#pragma once

// CSV helpers for the command-line tool. Numbers are written in the shortest
// form that parses back to the identical double, so a CSV file round-trips
// bit-exactly.

#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace freewave::io {

std::string format_double(double v);
double parse_double(std::string_view text);

void write_csv_header(std::ostream& out, const std::vector<std::string>& columns);
void write_csv_row(std::ostream& out, const std::vector<double>& values);

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  // Index of a named column; throws std::invalid_argument when absent.
  std::size_t column(std::string_view name) const;
};

// Throws std::invalid_argument on malformed input (ragged rows, bad numbers).
CsvTable read_csv(std::istream& in);

}  // namespace freewave::io
