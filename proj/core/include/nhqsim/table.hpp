#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace nhqsim {

// Numeric table with named columns. NaN cells render as empty fields,
// used for measures that do not apply (e.g. tau123 when n != 3).
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add_row(std::vector<double> row);
};

// Renders the table as CSV: one header row, then one line per row with
// values at `precision` significant digits. The default 17 makes doubles
// round-trip exactly, so reruns are byte-identical.
std::string to_csv(const Table& table, int precision = 17);

// Write-to-temp + rename, so no output file is ever partially written.
void write_text_atomic(const std::filesystem::path& path,
                       std::string_view content);

void write_csv(const Table& table, const std::filesystem::path& path,
               int precision = 17);

}  // namespace nhqsim
