#ifndef PATHWORD_DIAGRAM_HPP_
#define PATHWORD_DIAGRAM_HPP_

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pathword/alphabet.hpp"

namespace pathword {

using Timestamp = std::chrono::system_clock::time_point;

// 1-based cell position.
struct Coordinate {
  int row = 0;
  int col = 0;

  friend auto operator<=>(const Coordinate&, const Coordinate&) = default;
};

struct Dims {
  int rows = 0;
  int cols = 0;

  std::size_t cell_count() const noexcept {
    return static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
  }
  bool contains(Coordinate c) const noexcept {
    return c.row >= 1 && c.row <= rows && c.col >= 1 && c.col <= cols;
  }

  friend bool operator==(const Dims&, const Dims&) = default;
};

// Upper bound on rows*cols accepted anywhere; keeps hostile documents from
// requesting huge allocations.
inline constexpr std::size_t kMaxCells = 1u << 20;

// A structurally valid grid of letter indices. Coverage is not required;
// see Diagram for that.
class Grid {
 public:
  // Throws Error(kMalformedGrid) on non-positive dims, a cell count that
  // does not match rows*cols, or an index outside the alphabet.
  Grid(Alphabet alphabet, int rows, int cols, std::vector<std::uint32_t> cells);

  // Builds a grid from rows of letter tokens; ragged rows and unknown tokens
  // are malformed.
  static Grid from_rows(Alphabet alphabet,
                        const std::vector<std::vector<std::string>>& rows);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  int rows() const noexcept { return dims_.rows; }
  int cols() const noexcept { return dims_.cols; }
  Dims dims() const noexcept { return dims_; }
  const std::vector<std::uint32_t>& cells() const noexcept { return cells_; }

  // Throws Error(kOutOfBounds).
  std::uint32_t index_at(Coordinate c) const;
  const std::string& letter_at(Coordinate c) const {
    return alphabet_.letter(index_at(c));
  }

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.dims_ == b.dims_ && a.alphabet_ == b.alphabet_ &&
           a.cells_ == b.cells_;
  }

 private:
  Alphabet alphabet_;
  Dims dims_;
  std::vector<std::uint32_t> cells_;
};

struct CoverageReport {
  bool covered = false;
  std::vector<std::string> missing_letters;
  // Every alphabet letter, including those with a count of zero.
  std::map<std::string, std::size_t> letter_frequencies;
};

CoverageReport validate_diagram(const Grid& grid);

// A grid that contains every letter of its alphabet, identified by a digest
// of its canonical encoding. Immutable.
class Diagram {
 public:
  // Throws Error(kCoverage) when a letter is missing.
  explicit Diagram(Grid grid, Timestamp created_at = std::chrono::system_clock::now());

  const Grid& grid() const noexcept { return grid_; }
  const Alphabet& alphabet() const noexcept { return grid_.alphabet(); }
  int rows() const noexcept { return grid_.rows(); }
  int cols() const noexcept { return grid_.cols(); }
  Dims dims() const noexcept { return grid_.dims(); }

  // Lowercase hex BLAKE2b-256 of canonical_body(grid()).
  const std::string& id() const noexcept { return id_; }
  Timestamp created_at() const noexcept { return created_at_; }

  // Structural equality: creation time is not compared.
  friend bool operator==(const Diagram& a, const Diagram& b) {
    return a.id_ == b.id_ && a.grid_ == b.grid_;
  }

 private:
  Grid grid_;
  std::string id_;
  Timestamp created_at_;
};

inline CoverageReport validate_diagram(const Diagram& d) {
  return validate_diagram(d.grid());
}

// Places each letter once, fills the remaining cells uniformly over the
// alphabet, then shuffles every cell. Without a seed the OS CSPRNG is used;
// with one the result depends only on (alphabet, rows, cols, seed).
// Throws Error(kGridTooSmall) when rows*cols < alphabet size and
// Error(kMalformedGrid) for non-positive or oversized dims.
Diagram generate_diagram(const Alphabet& alphabet, int rows, int cols,
                         std::optional<std::uint64_t> seed = std::nullopt);

// Fixed-width bordered table. Annotated cells render as "<letter>^<ordinal>".
// Throws Error(kOutOfBounds) for annotations outside the grid.
std::string render_diagram(const Grid& grid,
                           const std::map<Coordinate, int>& annotations = {});

// Text document (see docs/formats.md):
//   pathword-diagram v1
//   alphabet hex            | letters <tok> <tok> ...
//   rows <R>
//   cols <C>
//   id <hex>
//   <R lines of C space-separated tokens>
std::string canonical_body(const Grid& grid);
// Lowercase hex BLAKE2b-256 of canonical_body(grid).
std::string grid_id(const Grid& grid);
std::string encode_grid(const Grid& grid);
std::string encode_diagram(const Diagram& d);
// Structure only; coverage is not checked. Throws Error(kSchema).
Grid decode_grid(std::string_view document);
// Throws Error(kSchema) for malformed documents and Error(kCoverage) for
// grids that miss a letter.
Diagram decode_diagram(std::string_view document);

// Structured form: {"alphabet", "rows", "cols", "cells", "id"}.
nlohmann::json alphabet_to_json(const Alphabet& alphabet);
Alphabet alphabet_from_json(const nlohmann::json& j);
nlohmann::json grid_to_json(const Grid& grid);
nlohmann::json diagram_to_json(const Diagram& d);
Grid grid_from_json(const nlohmann::json& j);
Diagram diagram_from_json(const nlohmann::json& j);

}  // namespace pathword

#endif  // PATHWORD_DIAGRAM_HPP_
