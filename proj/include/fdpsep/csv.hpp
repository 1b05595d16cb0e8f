#ifndef FDPSEP_CSV_HPP_
#define FDPSEP_CSV_HPP_

// Minimal CSV helpers. All floating-point fields are written with %.17g so
// every emitted file round-trips to the exact same doubles.

#include <cstdio>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace fdpsep {

inline std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline void write_csv_row(std::ostream& os, const std::vector<double>& vals) {
  for (size_t i = 0; i < vals.size(); ++i) {
    if (i) os << ',';
    os << format_full(vals[i]);
  }
  os << '\n';
}

// Parses CSV text into rows of cells. No quoting support; none of the
// toolkit's schemas need it.
inline std::vector<std::vector<std::string>> parse_csv(std::istream& is) {
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

}  // namespace fdpsep

#endif  // FDPSEP_CSV_HPP_
