#include "pathword/path.hpp"

#include <map>
#include <set>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "fixtures.hpp"
#include "pathword/error.hpp"

namespace pathword {
namespace {

using ::testing::HasSubstr;
using pathword::testing::worked_grid;
using pathword::testing::worked_path;
using pathword::testing::worked_steps;

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected pathword::Error";
  return ErrorCode::kDomain;
}

TEST(MakePathTest, WorkedPathOrdinals) {
  const Path p = make_path({6, 6}, worked_steps());
  EXPECT_EQ(p.size(), 16u);
  EXPECT_EQ(p.dims(), (Dims{6, 6}));
  EXPECT_EQ(p.steps().front(), (Coordinate{1, 1}));
  EXPECT_EQ(p.steps().back(), (Coordinate{6, 5}));
}

TEST(MakePathTest, Rejections) {
  EXPECT_EQ(code_of([] { make_path({6, 6}, {{1, 1}, {1, 1}}); }), ErrorCode::kRepeatedCoordinate);
  EXPECT_EQ(code_of([] { make_path({6, 6}, {{7, 1}}); }), ErrorCode::kOutOfBounds);
  EXPECT_EQ(code_of([] { make_path({6, 6}, {{0, 1}}); }), ErrorCode::kOutOfBounds);
  EXPECT_EQ(code_of([] { make_path({6, 6}, {{1, 7}}); }), ErrorCode::kOutOfBounds);
  EXPECT_EQ(code_of([] { make_path({6, 6}, {}); }), ErrorCode::kEmptyPath);
  EXPECT_EQ(code_of([] { make_path({0, 6}, {{1, 1}}); }), ErrorCode::kMalformedGrid);
  // Repetition is caught even when not adjacent in the sequence.
  EXPECT_EQ(code_of([] { make_path({3, 3}, {{1, 1}, {2, 2}, {3, 3}, {2, 2}}); }),
            ErrorCode::kRepeatedCoordinate);
}

// Reading the annotated example cell by cell: 7 is on the '2' at (2,6) and 8
// on the '7' at (2,5).
TEST(DeriveTest, WorkedPathReadOff) {
  const Password p = derive(worked_path(), worked_grid());
  EXPECT_EQ(p.text, testing::kWorkedReadOff);
  ASSERT_EQ(p.letters.size(), 16u);
  EXPECT_EQ(p.letters[6], "2");
  EXPECT_EQ(p.letters[7], "7");
}

TEST(DeriveTest, SingleStep) {
  const Grid g = worked_grid();
  EXPECT_EQ(derive(make_path({6, 6}, {{1, 1}}), g).text, g.letter_at({1, 1}));
  const Diagram d = generate_diagram(Alphabet::digit_pairs(), 10, 10, 5);
  EXPECT_EQ(derive(make_path({10, 10}, {{1, 1}}), d).text, d.grid().letter_at({1, 1}));
}

TEST(DeriveTest, TwoByTwoBinary) {
  const Grid g(make_alphabet("0,1"), 2, 2, {0, 1, 1, 0});
  const Password p = derive(make_path({2, 2}, {{1, 1}, {2, 2}}), g);
  EXPECT_EQ(p.text, "00");
  EXPECT_EQ(p.letters, (std::vector<std::string>{"0", "0"}));
}

TEST(DeriveTest, MultiCharacterTokensConcatenate) {
  const Diagram d = generate_diagram(Alphabet::digit_pairs(), 10, 10, 9);
  const Path p = make_path({10, 10}, {{3, 4}, {1, 1}, {10, 10}});
  const Password pw = derive(p, d);
  EXPECT_EQ(pw.text, d.grid().letter_at({3, 4}) + d.grid().letter_at({1, 1}) +
                         d.grid().letter_at({10, 10}));
  EXPECT_EQ(pw.text.size(), 6u);
}

TEST(DeriveTest, DimensionMismatch) {
  EXPECT_EQ(code_of([] { derive(make_path({5, 6}, {{1, 1}}), worked_grid()); }),
            ErrorCode::kDimensionMismatch);
}

TEST(DeriveTest, LengthAndAlphabetProperty) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Diagram d = generate_diagram(Alphabet::hex(), 6, 6, seed);
    const int n = 1 + static_cast<int>(seed % 36);
    const Path p = random_path({6, 6}, n, seed + 1000);
    const Password pw = derive(p, d);
    ASSERT_EQ(pw.letters.size(), static_cast<std::size_t>(n));
    std::string joined;
    for (const auto& letter : pw.letters) {
      ASSERT_TRUE(Alphabet::hex().index_of(letter).has_value());
      joined += letter;
    }
    ASSERT_EQ(joined, pw.text);
    ASSERT_EQ(derive(p, d).text, pw.text);
  }
}

// On a grid whose cells are all distinct, different paths read different
// passwords. Checked over every path of length <= 3 on a 3x3 grid.
TEST(DeriveTest, InjectiveOnPermutationDiagrams) {
  const Alphabet nine = make_alphabet("a,b,c,d,e,f,g,h,i");
  const Diagram d = generate_diagram(nine, 3, 3, 11);
  std::set<std::string> seen;
  std::size_t paths = 0;
  std::vector<Coordinate> cells;
  for (int r = 1; r <= 3; ++r)
    for (int c = 1; c <= 3; ++c) cells.push_back({r, c});
  for (const auto& a : cells) {
    seen.insert(derive(make_path({3, 3}, {a}), d).text);
    ++paths;
    for (const auto& b : cells) {
      if (b == a) continue;
      seen.insert(derive(make_path({3, 3}, {a, b}), d).text);
      ++paths;
      for (const auto& c : cells) {
        if (c == a || c == b) continue;
        seen.insert(derive(make_path({3, 3}, {a, b, c}), d).text);
        ++paths;
      }
    }
  }
  EXPECT_EQ(paths, 9u + 72u + 504u);
  EXPECT_EQ(seen.size(), paths);
}

TEST(RandomPathTest, Examples) {
  const Path p = random_path({6, 6}, 10, 1);
  EXPECT_EQ(p.size(), 10u);
  EXPECT_EQ(make_path(p.dims(), p.steps()), p);

  EXPECT_EQ(random_path({1, 1}, 1).steps(), (std::vector<Coordinate>{{1, 1}}));
  EXPECT_EQ(code_of([] { random_path({2, 2}, 5); }), ErrorCode::kOutOfRange);
  EXPECT_EQ(code_of([] { random_path({2, 2}, 0); }), ErrorCode::kOutOfRange);
}

TEST(RandomPathTest, SeededIsDeterministic) {
  EXPECT_EQ(random_path({6, 6}, 10, 77), random_path({6, 6}, 10, 77));
  EXPECT_NE(random_path({6, 6}, 10, 77), random_path({6, 6}, 10, 78));
}

TEST(RandomPathTest, ValidForAllLengths) {
  for (int rows = 1; rows <= 5; ++rows) {
    for (int cols = 1; cols <= 5; ++cols) {
      for (int n = 1; n <= rows * cols; ++n) {
        const Path p = random_path({rows, cols}, n, static_cast<std::uint64_t>(rows * 100 + cols * 10 + n));
        ASSERT_EQ(p.size(), static_cast<std::size_t>(n));
        ASSERT_NO_THROW(make_path(p.dims(), p.steps()));
      }
    }
  }
}

// First steps over 36 cells: chi-square with 35 degrees of freedom. The
// 0.999 quantile is about 66.6.
TEST(RandomPathTest, FirstStepLooksUniform) {
  constexpr int kTrials = 36000;
  std::map<Coordinate, int> counts;
  for (int i = 0; i < kTrials; ++i) ++counts[random_path({6, 6}, 3, 5000 + i).steps().front()];
  ASSERT_EQ(counts.size(), 36u);
  const double expected = kTrials / 36.0;
  double chi2 = 0;
  for (const auto& [cell, count] : counts) chi2 += (count - expected) * (count - expected) / expected;
  EXPECT_LT(chi2, 66.6);
}

TEST(RenderOverlayTest, WorkedPathExponents) {
  const std::string text = render_path_overlay(worked_grid(), worked_path());
  EXPECT_EQ(text,
            "+------+------+------+------+------+------+\n"
            "| a^1  | c^2  | e    | 2    | 3^4  | 4^3  |\n"
            "+------+------+------+------+------+------+\n"
            "| a^5  | 1^6  | 6    | f    | 7^8  | 2^7  |\n"
            "+------+------+------+------+------+------+\n"
            "| d    | 2    | a    | 1    | 9    | 4    |\n"
            "+------+------+------+------+------+------+\n"
            "| f    | c    | f    | a    | 9    | 6    |\n"
            "+------+------+------+------+------+------+\n"
            "| e^9  | 1^10 | b    | 5    | b^12 | c^11 |\n"
            "+------+------+------+------+------+------+\n"
            "| 8^13 | 7^14 | 3    | 4    | d^16 | 9^15 |\n"
            "+------+------+------+------+------+------+\n");
}

TEST(RenderOverlayTest, PlainAndMismatch) {
  EXPECT_EQ(render_path_overlay(worked_grid(), std::nullopt), render_diagram(worked_grid()));
  EXPECT_EQ(code_of([] { render_path_overlay(worked_grid(), make_path({5, 5}, {{1, 1}})); }),
            ErrorCode::kDimensionMismatch);
  EXPECT_THAT(render_path_overlay(worked_grid(), make_path({6, 6}, {{3, 3}})), HasSubstr("| a^1 |"));
}

TEST(PathTextTest, FormatAndParse) {
  const std::string text = format_path(worked_path());
  EXPECT_EQ(text,
            "6x6 : (1,1) (1,2) (1,6) (1,5) (2,1) (2,2) (2,6) (2,5) (5,1) (5,2) (5,6) (5,5) "
            "(6,1) (6,2) (6,6) (6,5)");
  EXPECT_EQ(parse_path(text), worked_path());
  EXPECT_EQ(parse_path("  2 x 3:(1,1)(2, 3) "), make_path({2, 3}, {{1, 1}, {2, 3}}));
}

TEST(PathTextTest, ParseErrors) {
  EXPECT_EQ(code_of([] { parse_path(""); }), ErrorCode::kSchema);
  EXPECT_EQ(code_of([] { parse_path("6x6"); }), ErrorCode::kSchema);
  EXPECT_EQ(code_of([] { parse_path("6x6 : (1,1"); }), ErrorCode::kSchema);
  EXPECT_EQ(code_of([] { parse_path("6x6 : (a,1)"); }), ErrorCode::kSchema);
  EXPECT_EQ(code_of([] { parse_path("6x6 : (1,1) junk"); }), ErrorCode::kSchema);
  EXPECT_EQ(code_of([] { parse_path("6x6 :"); }), ErrorCode::kEmptyPath);
  EXPECT_EQ(code_of([] { parse_path("6x6 : (1,1) (1,1)"); }), ErrorCode::kRepeatedCoordinate);
  EXPECT_EQ(code_of([] { parse_path("6x6 : (9,1)"); }), ErrorCode::kOutOfBounds);
}

TEST(PathJsonTest, RoundTrip) {
  const nlohmann::json j = path_to_json(worked_path());
  EXPECT_EQ(j.at("rows"), 6);
  EXPECT_EQ(j.at("steps").size(), 16u);
  EXPECT_EQ(j.at("steps")[2], nlohmann::json::array({1, 6}));
  EXPECT_EQ(path_from_json(j), worked_path());
  EXPECT_EQ(code_of([] { path_from_json(nlohmann::json{{"rows", 2}}); }), ErrorCode::kSchema);
  EXPECT_EQ(code_of([] {
              path_from_json(nlohmann::json{{"rows", 2}, {"cols", 2}, {"steps", {{1, 1}, {1, 1}}}});
            }),
            ErrorCode::kRepeatedCoordinate);
}

}  // namespace
}  // namespace pathword
