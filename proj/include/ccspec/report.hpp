#pragma once

#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace ccspec {

// One CSV/table cell: numbers are rendered as %.6e, integers and strings
// verbatim. Formatting is locale-independent.
using Cell = std::variant<double, long long, std::string>;

std::string format_cell(const Cell& c);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

// header line + one line per row, comma-separated, '\n' line ends.
void write_csv(std::ostream& os, const Table& t);

// Space-aligned text rendering for terminal summaries.
void write_aligned(std::ostream& os, const Table& t);

// "%.6e" via snprintf; shared by all value formatting.
std::string format_double(double v);

}  // namespace ccspec
