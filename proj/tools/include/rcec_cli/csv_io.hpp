#pragma once

// Minimal CSV dialect: comma separated, UTF-8, first row is a header, '.'
// decimal point, no thousands separators. Header cells may be double-quoted.

#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rcec/types.hpp"

namespace rcec::cli {

class CsvParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DataTable {
  std::vector<std::string> columns;    // taxon names
  std::vector<std::string> row_names;  // empty unless requested
  Matrix values;
};

// With has_row_names, the first column of every row is a label.
DataTable read_csv(std::istream& in, const std::string& source, bool has_row_names = false);
DataTable read_csv_file(const std::string& path, bool has_row_names = false);

// Shortest round-trip representation ("%.17g").
std::string format_full(double v);
// Six significant digits ("%.6g").
std::string format_report(double v);

// Header "taxon,<names...>", then one labelled row per taxon, full precision.
std::string labelled_matrix_csv(const std::vector<std::string>& names, const Matrix& m);

// Header of names, one row per sample, full precision.
std::string samples_csv(const std::vector<std::string>& names, const Matrix& m);

void write_text_file(const std::string& path, const std::string& contents);

}  // namespace rcec::cli
