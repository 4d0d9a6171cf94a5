#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace pcalib {

// Comma-separated numeric tables: first row is a header of column names,
// every other row holds one decimal number per column. Rows with missing
// or non-numeric fields are rejected with the offending row number.

class CsvError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  bool has_column(const std::string& name) const;
  std::vector<double> column(const std::string& name) const;
};

CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::string& path);
void write_csv(std::ostream& out, const CsvTable& table, int sig_digits = 9);

}  // namespace pcalib
