#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "grasp/grid.hpp"

namespace grasp {

// Text layout, 24 lines terminated by '\n':
//
//       0   1   2   3   4   5   6   7   8   9   10
//     +---+---+---+---+---+---+---+---+---+---+---+
//    0|   |   | E |   |   |   |   | E |   |   |   |
//     +---+---+---+---+---+---+---+---+---+---+---+
//    ...
//
// The header keeps one trailing space after "10".

inline constexpr int kGridTextLines = 1 + 2 * kGridSide + 1;

class GridParseError : public std::runtime_error {
 public:
  GridParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  /// 1-based.
  int line() const noexcept { return line_; }

 private:
  int line_;
};

inline char cell_symbol(const Cell& c) {
  if (c.is_start) return 'A';
  if (c.obstacle) return 'O';
  if (c.energy >= 1) return 'E';
  return ' ';
}

inline std::string grid_header() {
  std::string s = "  ";
  for (int c = 0; c < kGridSide; ++c) {
    const std::string n = std::to_string(c);
    s += "  " + n + std::string(2 - n.size(), ' ');
  }
  return s + ' ';
}

inline std::string grid_separator() {
  std::string s = "  +";
  for (int c = 0; c < kGridSide; ++c) s += "---+";
  return s;
}

inline std::string grid_row_line(const Grid& grid, int row) {
  std::string s = row < 10 ? " " + std::to_string(row) : std::to_string(row);
  s += '|';
  for (int c = 0; c < kGridSide; ++c) {
    s += ' ';
    s += cell_symbol(grid.at(row, c));
    s += " |";
  }
  return s;
}

inline std::vector<std::string> render_lines(const Grid& grid) {
  std::vector<std::string> lines;
  lines.reserve(kGridTextLines);
  lines.push_back(grid_header());
  const std::string sep = grid_separator();
  for (int r = 0; r < kGridSide; ++r) {
    lines.push_back(sep);
    lines.push_back(grid_row_line(grid, r));
  }
  lines.push_back(sep);
  return lines;
}

/// Every line, including the last, ends with '\n'.
inline std::string render(const Grid& grid) {
  std::string out;
  for (const auto& line : render_lines(grid)) {
    out += line;
    out += '\n';
  }
  return out;
}

/// Parses the layout produced by render(). Accepts "\r\n" line endings.
/// Only geometry and cell symbols are recovered; spec metadata stays default.
inline Grid parse_grid(std::string_view text) {
  std::vector<std::string> lines;
  {
    std::size_t pos = 0;
    while (pos < text.size()) {
      auto nl = text.find('\n', pos);
      if (nl == std::string_view::npos) nl = text.size();
      std::string line(text.substr(pos, nl - pos));
      if (!line.empty() && line.back() == '\r') line.pop_back();
      lines.push_back(std::move(line));
      pos = nl + 1;
    }
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (static_cast<int>(lines.size()) != kGridTextLines)
    throw GridParseError(static_cast<int>(lines.size()),
                         "expected " + std::to_string(kGridTextLines) + " lines, got " + std::to_string(lines.size()));

  if (lines[0] != grid_header()) throw GridParseError(1, "malformed header");
  const std::string sep = grid_separator();

  Grid grid;
  int starts = 0;
  Position start{};
  for (int r = 0; r < kGridSide; ++r) {
    const int sep_line = 2 + 2 * r;
    if (lines[static_cast<std::size_t>(sep_line - 1)] != sep) throw GridParseError(sep_line, "malformed separator");
    const int row_line = sep_line + 1;
    const std::string& s = lines[static_cast<std::size_t>(row_line - 1)];
    const std::string label = r < 10 ? " " + std::to_string(r) : std::to_string(r);
    if (s.size() < 3 || s.compare(0, 2, label) != 0 || s[2] != '|')
      throw GridParseError(row_line, "malformed row label for row " + std::to_string(r));
    const std::size_t expected = 3 + 4 * static_cast<std::size_t>(kGridSide);
    if (s.size() != expected) {
      const auto cells = (s.size() - 3) / 4;
      throw GridParseError(row_line, "row " + std::to_string(r) + " has " + std::to_string(cells) + " cells, expected " +
                                         std::to_string(kGridSide));
    }
    for (int c = 0; c < kGridSide; ++c) {
      const std::size_t base = 3 + 4 * static_cast<std::size_t>(c);
      if (s[base] != ' ' || s[base + 2] != ' ' || s[base + 3] != '|')
        throw GridParseError(row_line, "malformed cell at column " + std::to_string(c));
      Cell& cell = grid.at(r, c);
      cell = Cell{};
      switch (s[base + 1]) {
        case ' ': break;
        case 'E': cell.energy = 1; break;
        case 'O': cell.obstacle = true; break;
        case 'A':
          ++starts;
          start = {r, c};
          break;
        default:
          throw GridParseError(row_line, std::string("unknown cell symbol '") + s[base + 1] + "' at column " +
                                             std::to_string(c));
      }
    }
  }
  if (lines.back() != sep) throw GridParseError(kGridTextLines, "malformed separator");
  if (starts != 1) throw GridParseError(kGridTextLines, "expected exactly one 'A', found " + std::to_string(starts));
  grid.set_start(start);
  return grid;
}

}  // namespace grasp
