#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace grasp;
using grasp::tests::fixture;
using grasp::tests::grid_from_rows;

namespace {

const std::array<std::string, kGridSide> kFigureRows = {
    "  E    E   ", " E   E     ", "       E EE", " E   OEE  E", "OEO O E  E ", "  E EEOE  E",
    " EE  E E  E", "  E A E   E", "E    E    O", "   E E     ", " O  EE  E  ",
};

const std::array<std::string, kGridSide> kRandomRows = {
    "O E    E OE", "  OEEE  EE ", "          O", "EEE  EEEEEE", " EEO EO E  ", "  O  E  E E",
    "OOE EEE  EE", "E   A EEEE ", "EE EEE  O  ", "E EOOEE   E", "E  E EOOEEE",
};

std::string replace_line(std::string text, int line, const std::string& replacement) {
  auto lines = std::vector<std::string>{};
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  lines.at(static_cast<std::size_t>(line - 1)) = replacement;
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

}  // namespace

TEST(Render, FixedLines) {
  EXPECT_EQ(grid_header(), "    0   1   2   3   4   5   6   7   8   9   10 ");
  EXPECT_EQ(grid_separator(), "  +---+---+---+---+---+---+---+---+---+---+---+");
}

TEST(Render, FigureGridGolden) {
  EXPECT_EQ(render(grid_from_rows(kFigureRows)), read_file(fixture("grids/figure.txt")));
}

TEST(Render, RandomGridGolden) {
  EXPECT_EQ(render(grid_from_rows(kRandomRows)), read_file(fixture("grids/random_p052.txt")));
}

TEST(Render, EmptyGrid) {
  const auto lines = render_lines(Grid{});
  ASSERT_EQ(lines.size(), 24u);
  EXPECT_EQ(lines[2], " 0| A |   |   |   |   |   |   |   |   |   |   |");
  EXPECT_EQ(lines[4], " 1|   |   |   |   |   |   |   |   |   |   |   |");
}

TEST(Render, AllLinesSameWidth) {
  for (const auto& line : render_lines(grid_from_rows(kFigureRows))) EXPECT_EQ(line.size(), 47u);
}

TEST(Render, MultiUnitCellStillE) {
  Grid g;
  g.at(3, 3).energy = 4;
  EXPECT_EQ(render_lines(g)[8], " 3|   |   |   | E |   |   |   |   |   |   |   |");
}

TEST(Parse, AllReferenceGridsRoundTrip) {
  for (const char* name : {"figure", "random_p052", "vertical_skew", "horizontal_skew", "cluster", "spiral"}) {
    const std::string text = read_file(fixture(std::string("grids/") + name + ".txt"));
    EXPECT_EQ(render(parse_grid(text)), text) << name;
  }
}

TEST(Parse, MatchesDirectConstruction) {
  const Grid parsed = parse_grid(read_file(fixture("grids/figure.txt")));
  EXPECT_TRUE(parsed.same_layout(grid_from_rows(kFigureRows)));
  EXPECT_EQ(parsed.start(), (Position{7, 4}));
}

TEST(Parse, AcceptsCrLfAndMissingFinalNewline) {
  std::string text = read_file(fixture("grids/figure.txt"));
  std::string crlf;
  for (char c : text) crlf += c == '\n' ? std::string("\r\n") : std::string(1, c);
  EXPECT_TRUE(parse_grid(crlf).same_layout(parse_grid(text)));
  text.pop_back();
  EXPECT_NO_THROW(parse_grid(text));
}

TEST(Parse, ShortRowNamesTheRow) {
  const std::string text =
      replace_line(read_file(fixture("grids/figure.txt")), 9, " 3|   | E |   |   |   | O | E | E |   |   |");
  try {
    parse_grid(text);
    FAIL() << "expected GridParseError";
  } catch (const GridParseError& e) {
    EXPECT_EQ(e.line(), 9);
    EXPECT_NE(std::string(e.what()).find("row 3 has 10 cells"), std::string::npos) << e.what();
  }
}

TEST(Parse, UnknownSymbol) {
  const std::string text =
      replace_line(read_file(fixture("grids/figure.txt")), 3, " 0|   |   | X |   |   |   |   | E |   |   |   |");
  try {
    parse_grid(text);
    FAIL() << "expected GridParseError";
  } catch (const GridParseError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_NE(std::string(e.what()).find("unknown cell symbol"), std::string::npos) << e.what();
  }
}

TEST(Parse, BadHeaderAndSeparator) {
  const std::string text = read_file(fixture("grids/figure.txt"));
  EXPECT_THROW(parse_grid(replace_line(text, 1, "    0   1   2   3   4   5   6   7   8   9   10")), GridParseError);
  EXPECT_THROW(parse_grid(replace_line(text, 2, "  +---+---+---+---+---+---+---+---+---+---+")), GridParseError);
}

TEST(Parse, StartCount) {
  const std::string text = read_file(fixture("grids/figure.txt"));
  EXPECT_THROW(parse_grid(replace_line(text, 17, " 7|   |   | E |   |   |   | E |   |   |   | E |")), GridParseError);
  EXPECT_THROW(parse_grid(replace_line(text, 3, " 0| A |   | E |   |   |   |   | E |   |   |   |")), GridParseError);
}

TEST(Parse, WrongLineCount) { EXPECT_THROW(parse_grid(grid_header() + "\n"), GridParseError); }

TEST(Parse, RoundTripsEveryGeneratedGrid) {
  for (const auto& g : build_benchmark(0)) {
    const std::string text = render(g);
    const Grid back = parse_grid(text);
    ASSERT_TRUE(back.same_layout(g)) << g.spec.id();
    ASSERT_EQ(render(back), text);
  }
}
