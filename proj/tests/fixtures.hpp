#ifndef PATHWORD_TESTS_FIXTURES_HPP_
#define PATHWORD_TESTS_FIXTURES_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "pathword/diagram.hpp"
#include "pathword/path.hpp"

namespace pathword::testing {

// The worked 6x6 hexadecimal example.
inline Grid worked_grid() {
  return Grid::from_rows(Alphabet::hex(), {{"a", "c", "e", "2", "3", "4"},
                                           {"a", "1", "6", "f", "7", "2"},
                                           {"d", "2", "a", "1", "9", "4"},
                                           {"f", "c", "f", "a", "9", "6"},
                                           {"e", "1", "b", "5", "b", "c"},
                                           {"8", "7", "3", "4", "d", "9"}});
}

// Cells of the annotated example in ordinal order 1..16.
inline std::vector<Coordinate> worked_steps() {
  return {{1, 1}, {1, 2}, {1, 6}, {1, 5}, {2, 1}, {2, 2}, {2, 6}, {2, 5},
          {5, 1}, {5, 2}, {5, 6}, {5, 5}, {6, 1}, {6, 2}, {6, 6}, {6, 5}};
}

inline Path worked_path() { return Path({6, 6}, worked_steps()); }

// Hand read-off of the annotated example: ordinal 7 sits on the '2' at (2,6)
// and ordinal 8 on the '7' at (2,5).
inline constexpr const char* kWorkedReadOff = "ac43a127e1cb879d";

// The expected golden string, which swaps the 7th and 8th letters.
inline constexpr const char* kExpectedString = "ac43a172e1cb879d";

// BLAKE2b-256 of the canonical body, computed with Python's hashlib.
inline constexpr const char* kWorkedGridId =
    "c78c754650f2a2991f2fc65f4d988f925823368b624de70a87a464486577eee6";

inline std::string data_file(const std::string& name) {
  return std::string(PATHWORD_TEST_DATA_DIR) + "/" + name;
}

}  // namespace pathword::testing

#endif  // PATHWORD_TESTS_FIXTURES_HPP_
