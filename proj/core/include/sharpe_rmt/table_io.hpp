#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace sharpe_rmt {

// 17 significant digits (round-trips every double); "nan", "inf", "-inf" otherwise.
std::string format_double(double v);

std::string csv_field(std::string_view s);

// Accumulates a CSV table in memory with '\n' line endings.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);
  void add(std::vector<std::string> row);
  std::string str() const;
  std::size_t rows() const { return rows_.size(); }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

// Splits one CSV line; supports double-quoted fields.
std::vector<std::string> split_csv_line(std::string_view line);

}  // namespace sharpe_rmt
