#include "rcec_cli/csv_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string_view>

namespace rcec::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_fields(std::string_view line, const std::string& where) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    const char ch = line[k];
    if (quoted) {
      if (ch == '"' && k + 1 < line.size() && line[k + 1] == '"') {
        current += '"';
        ++k;
      } else if (ch == '"') {
        quoted = false;
      } else {
        current += ch;
      }
    } else if (ch == '"' && trim(current).empty()) {
      current.clear();
      quoted = true;
    } else if (ch == ',') {
      fields.emplace_back(trim(current));
      current.clear();
    } else {
      current += ch;
    }
  }
  if (quoted) throw CsvParseError(where + ": unterminated quoted field");
  fields.emplace_back(trim(current));
  return fields;
}

}  // namespace

DataTable read_csv(std::istream& in, const std::string& source, bool has_row_names) {
  DataTable table;
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (trim(line).empty()) continue;
    const std::string where = source + ": line " + std::to_string(line_no);
    auto fields = split_fields(line, where);

    if (!header_seen) {
      if (has_row_names) fields.erase(fields.begin());
      if (fields.empty()) throw CsvParseError(where + ": header has no taxon columns");
      table.columns = std::move(fields);
      header_seen = true;
      continue;
    }

    const std::size_t expected = table.columns.size() + (has_row_names ? 1 : 0);
    if (fields.size() != expected) {
      throw CsvParseError(where + ": expected " + std::to_string(expected) + " fields, found " +
                          std::to_string(fields.size()));
    }
    std::size_t first = 0;
    if (has_row_names) {
      table.row_names.push_back(fields[0]);
      first = 1;
    }
    std::vector<double> row;
    row.reserve(table.columns.size());
    for (std::size_t c = first; c < fields.size(); ++c) {
      const std::string& cell = fields[c];
      double value = 0.0;
      const char* end = cell.data() + cell.size();
      auto [ptr, ec] = std::from_chars(cell.data(), end, value);
      if (cell.empty() || ec != std::errc() || ptr != end) {
        throw CsvParseError(where + ", column " + std::to_string(c + 1) + ": cannot parse '" + cell +
                            "' as a number");
      }
      row.push_back(value);
    }
    rows.push_back(std::move(row));
  }
  if (!header_seen) throw CsvParseError(source + ": empty input");

  table.values.resize(static_cast<Index>(rows.size()), static_cast<Index>(table.columns.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      table.values(static_cast<Index>(r), static_cast<Index>(c)) = rows[r][c];
    }
  }
  return table;
}

DataTable read_csv_file(const std::string& path, bool has_row_names) {
  std::ifstream in(path);
  if (!in) throw CsvParseError("cannot open '" + path + "'");
  return read_csv(in, path, has_row_names);
}

std::string format_full(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_report(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string labelled_matrix_csv(const std::vector<std::string>& names, const Matrix& m) {
  std::ostringstream os;
  os << "taxon";
  for (const auto& name : names) os << ',' << name;
  os << '\n';
  for (Index i = 0; i < m.rows(); ++i) {
    os << names[static_cast<std::size_t>(i)];
    for (Index j = 0; j < m.cols(); ++j) os << ',' << format_full(m(i, j));
    os << '\n';
  }
  return os.str();
}

std::string samples_csv(const std::vector<std::string>& names, const Matrix& m) {
  std::ostringstream os;
  for (std::size_t c = 0; c < names.size(); ++c) os << (c ? "," : "") << names[c];
  os << '\n';
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) os << (j ? "," : "") << format_full(m(i, j));
    os << '\n';
  }
  return os.str();
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << contents;
  if (!out) throw std::runtime_error("error writing '" + path + "'");
}

}  // namespace rcec::cli
