#include "nhqsim/table.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace nhqsim {

void Table::add_row(std::vector<double> row) {
  if (row.size() != columns.size()) {
    throw std::invalid_argument("table row width " +
                                std::to_string(row.size()) +
                                " does not match column count " +
                                std::to_string(columns.size()));
  }
  rows.push_back(std::move(row));
}

std::string to_csv(const Table& table, int precision) {
  if (precision < 1 || precision > 17) {
    throw std::invalid_argument("csv precision must be in [1, 17]");
  }
  std::string out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out += ',';
    out += table.columns[c];
  }
  out += '\n';
  char buf[40];
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      if (std::isnan(row[c])) continue;  // blank cell
      std::snprintf(buf, sizeof(buf), "%.*g", precision, row[c]);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

void write_text_atomic(const std::filesystem::path& path,
                       std::string_view content) {
  const std::filesystem::path dir = path.parent_path();
  if (!dir.empty()) std::filesystem::create_directories(dir);
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) {
      throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    }
    os.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!os.flush()) {
      throw std::runtime_error("write failed for " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

void write_csv(const Table& table, const std::filesystem::path& path,
               int precision) {
  write_text_atomic(path, to_csv(table, precision));
}

}  // namespace nhqsim
