#pragma once

// Plot-data CSV: '#'-prefixed metadata lines, one header row, then numeric
// rows written with 17 significant digits so doubles round-trip exactly.

#include <iosfwd>
#include <string>
#include <vector>

namespace bandlimit::csv {

struct Table {
  std::vector<std::string> meta;    // without the leading '#'
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// Locale-independent, 17 significant digits.
std::string format_number(double v);

void write(std::ostream& out, const Table& table);

/// Inverse of write. Throws std::invalid_argument on a malformed stream.
Table read(std::istream& in);

}  // namespace bandlimit::csv
