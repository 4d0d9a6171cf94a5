#include "pcalib/csv.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace pcalib {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  std::stringstream ss(line);
  while (std::getline(ss, cur, ',')) out.push_back(trim(cur));
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

}  // namespace

bool CsvTable::has_column(const std::string& name) const {
  return std::find(columns.begin(), columns.end(), name) != columns.end();
}

std::vector<double> CsvTable::column(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw CsvError("unknown column: " + name);
  const std::size_t idx = it - columns.begin();
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r[idx]);
  return out;
}

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw CsvError("empty input: missing header");
  table.columns = split_fields(line);
  if (table.columns.empty() || table.columns[0].empty())
    throw CsvError("malformed header row");

  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != table.columns.size())
      throw CsvError("row " + std::to_string(lineno) + ": expected " +
                     std::to_string(table.columns.size()) + " fields, got " +
                     std::to_string(fields.size()));
    std::vector<double> row;
    row.reserve(fields.size());
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (fields[i].empty())
        throw CsvError("row " + std::to_string(lineno) + ": missing field '" +
                       table.columns[i] + "'");
      try {
        std::size_t used = 0;
        const double v = std::stod(fields[i], &used);
        if (used != fields[i].size())
          throw std::invalid_argument("trailing characters");
        row.push_back(v);
      } catch (const std::exception&) {
        throw CsvError("row " + std::to_string(lineno) +
                       ": non-numeric field '" + fields[i] + "' in column '" +
                       table.columns[i] + "'");
      }
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

CsvTable read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CsvError("cannot open: " + path);
  return read_csv(in);
}

void write_csv(std::ostream& out, const CsvTable& table, int sig_digits) {
  for (std::size_t i = 0; i < table.columns.size(); ++i)
    out << (i ? "," : "") << table.columns[i];
  out << "\n";
  char buf[64];
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.*g", sig_digits, row[i]);
      out << (i ? "," : "") << buf;
    }
    out << "\n";
  }
}

}  // namespace pcalib
