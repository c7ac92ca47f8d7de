#include "bandlimit/csv.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace bandlimit::csv {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(',', start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_number(const std::string& s) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last) {
    throw std::invalid_argument("csv: not a number '" + s + "'");
  }
  return v;
}

}  // namespace

std::string format_number(double v) {
  char buf[40];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  if (ec != std::errc()) throw std::runtime_error("csv: number formatting failed");
  return std::string(buf, end);
}

void write(std::ostream& out, const Table& table) {
  for (const auto& m : table.meta) out << '#' << m << '\n';
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    out << (i ? "," : "") << table.header[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
    out << '\n';
  }
}

Table read(std::istream& in) {
  Table t;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty() && line.front() == '#') {
      if (have_header) throw std::invalid_argument("csv: metadata after header");
      t.meta.push_back(line.substr(1));
      continue;
    }
    if (!have_header) {
      t.header = split(line);
      have_header = true;
      continue;
    }
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != t.header.size()) {
      throw std::invalid_argument("csv: row width differs from header");
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) row.push_back(parse_number(c));
    t.rows.push_back(std::move(row));
  }
  if (!have_header) throw std::invalid_argument("csv: missing header row");
  return t;
}

}  // namespace bandlimit::csv
