#pragma once

// Flat tabular results with deterministic CSV emission: a leading '#'
// comment block carrying provenance, one header row, data rows with
// 17-significant-digit scientific floats (lossless double round trip),
// '\n' line endings, and a trailing comment section for flagged rows
// (failed sweep samples carried with their error label, never silently
// dropped).

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "fastlight/errors.hpp"

namespace fastlight {

// 17 significant digits, scientific; enough to reproduce any double exactly.
inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", x);
  return buf;
}

struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::pair<std::string, std::string>> provenance;

  struct FlaggedRow {
    double axis_value;
    std::string label;  // "<stage>: <error>"
    bool operator==(const FlaggedRow& o) const {
      return axis_value == o.axis_value && label == o.label;
    }
  };
  std::vector<FlaggedRow> flagged;

  void validate() const {
    for (const auto& row : rows) {
      if (row.size() != columns.size())
        throw ConfigError("ResultTable: ragged row");
      for (double v : row) {
        if (!std::isfinite(v))
          throw ConfigError("ResultTable: non-finite entry");
      }
    }
  }

  bool operator==(const ResultTable& o) const {
    return columns == o.columns && rows == o.rows &&
           provenance == o.provenance && flagged == o.flagged;
  }
};

inline void emit_csv(const ResultTable& table, std::ostream& out) {
  table.validate();
  for (const auto& [key, value] : table.provenance) {
    out << "# " << key << ": " << value << "\n";
  }
  for (size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << table.columns[i];
  }
  out << "\n";
  for (const auto& row : table.rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << format_double(row[i]);
    }
    out << "\n";
  }
  for (const auto& f : table.flagged) {
    out << "# flagged," << format_double(f.axis_value) << "," << f.label
        << "\n";
  }
}

inline std::string to_csv(const ResultTable& table) {
  std::ostringstream out;
  emit_csv(table, out);
  return out.str();
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace detail

// Inverse of emit_csv; parse(emit(t)) == t bit-exactly.
inline ResultTable parse_csv(std::istream& in) {
  ResultTable table;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line.rfind("# flagged,", 0) == 0) {
        const std::string rest = line.substr(10);
        const auto comma = rest.find(',');
        if (comma == std::string::npos)
          throw ConfigError("parse_csv: malformed flagged row");
        table.flagged.push_back(
            {std::strtod(rest.substr(0, comma).c_str(), nullptr),
             rest.substr(comma + 1)});
      } else {
        const auto colon = line.find(": ");
        if (colon == std::string::npos || colon < 2)
          throw ConfigError("parse_csv: malformed provenance comment");
        table.provenance.emplace_back(line.substr(2, colon - 2),
                                      line.substr(colon + 2));
      }
      continue;
    }
    if (!have_header) {
      table.columns = detail::split_csv_line(line);
      have_header = true;
      continue;
    }
    std::vector<double> row;
    for (const auto& cell : detail::split_csv_line(line)) {
      char* end = nullptr;
      row.push_back(std::strtod(cell.c_str(), &end));
      if (end == cell.c_str()) throw ConfigError("parse_csv: bad number: " + cell);
    }
    table.rows.push_back(std::move(row));
  }
  if (!have_header) throw ConfigError("parse_csv: missing header row");
  return table;
}

inline ResultTable parse_csv(const std::string& text) {
  std::istringstream in(text);
  return parse_csv(in);
}

}  // namespace fastlight
