#include "ccspec/report.hpp"

#include <cstdio>

namespace ccspec {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6e", v);
  return buf;
}

std::string format_cell(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) return format_double(*d);
  if (const long long* i = std::get_if<long long>(&c)) return std::to_string(*i);
  return std::get<std::string>(c);
}

void write_csv(std::ostream& os, const Table& t) {
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    if (i) os << ',';
    os << t.header[i];
  }
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      os << format_cell(row[i]);
    }
    os << '\n';
  }
}

void write_aligned(std::ostream& os, const Table& t) {
  std::vector<std::size_t> width(t.header.size(), 0);
  std::vector<std::vector<std::string>> cells;
  cells.reserve(t.rows.size());
  for (std::size_t i = 0; i < t.header.size(); ++i)
    width[i] = t.header[i].size();
  for (const auto& row : t.rows) {
    std::vector<std::string> r;
    r.reserve(row.size());
    for (std::size_t i = 0; i < row.size(); ++i) {
      r.push_back(format_cell(row[i]));
      if (i < width.size() && r.back().size() > width[i]) width[i] = r.back().size();
    }
    cells.push_back(std::move(r));
  }
  const auto emit = [&](const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) os << "  ";
      os << r[i];
      if (i + 1 < r.size())
        for (std::size_t p = r[i].size(); p < width[i]; ++p) os << ' ';
    }
    os << '\n';
  };
  emit(t.header);
  for (const auto& r : cells) emit(r);
}

}  // namespace ccspec
