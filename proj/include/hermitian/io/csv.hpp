#pragma once

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "hermitian/error.hpp"

namespace hermitian {

/// Numeric table with a header row. Values print with 17 significant digits.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  void add_row(std::vector<double> row) {
    if (row.size() != header.size()) throw Error(ErrorKind::Format, "CSV row width does not match header");
    rows.push_back(std::move(row));
  }

  [[nodiscard]] std::string str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << "\n";
    char buf[40];
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", r[i]);
        os << (i ? "," : "") << buf;
      }
      os << "\n";
    }
    return os.str();
  }
};

}  // namespace hermitian
