#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace semmap {

// One data row of a TSV document plus the 1-based line number it came from,
// so parse errors can point at the offending line.
struct TsvRow {
  std::size_t line_no = 0;
  std::vector<std::string> cells;
};

// Splits a TSV document into rows. Tab is the sole delimiter, '#' starts a
// comment line, blank lines are skipped, trailing '\r' is stripped. No
// quoting or escaping.
std::vector<TsvRow> read_tsv(std::string_view text);

// Shortest representation that round-trips the exact double (std::to_chars).
std::string format_double(double v);

// Parses a full-cell double; throws ValidationError naming the cell content.
double parse_double(std::string_view cell, std::size_t line_no);

// Parses a non-negative integer the same way.
long parse_long(std::string_view cell, std::size_t line_no);

std::string read_file(const std::string& path);

// Writes via a temp file in the same directory followed by a rename, so a
// reader never observes a half-written file.
void atomic_write_file(const std::string& path, std::string_view content);

}  // namespace semmap
