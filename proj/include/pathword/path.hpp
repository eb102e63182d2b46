#ifndef PATHWORD_PATH_HPP_
#define PATHWORD_PATH_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pathword/diagram.hpp"

namespace pathword {

// The secret: an ordered, injective sequence of cells on a grid of fixed
// dims. Cells need not be adjacent.
class Path {
 public:
  // Throws Error(kEmptyPath), Error(kOutOfBounds) or
  // Error(kRepeatedCoordinate). Dims must be positive (kMalformedGrid).
  Path(Dims dims, std::vector<Coordinate> steps);

  Dims dims() const noexcept { return dims_; }
  const std::vector<Coordinate>& steps() const noexcept { return steps_; }
  std::size_t size() const noexcept { return steps_.size(); }

  friend bool operator==(const Path&, const Path&) = default;

 private:
  Dims dims_;
  std::vector<Coordinate> steps_;
};

inline Path make_path(Dims dims, std::vector<Coordinate> steps) {
  return Path(dims, std::move(steps));
}

struct Password {
  std::vector<std::string> letters;
  std::string text;
};

// Reads the grid letter at each step, in order.
// Throws Error(kDimensionMismatch) when path and grid shapes differ.
Password derive(const Path& path, const Grid& grid);
inline Password derive(const Path& path, const Diagram& d) {
  return derive(path, d.grid());
}

// Uniform over injective sequences of n cells (partial Fisher-Yates).
// Throws Error(kOutOfRange) unless 1 <= n <= rows*cols.
Path random_path(Dims dims, int n, std::optional<std::uint64_t> seed = std::nullopt);

// Diagram table with each visited cell annotated by its 1-based ordinal;
// without a path, the plain table.
std::string render_path_overlay(const Grid& grid, const std::optional<Path>& path);

// "6x6 : (1,1) (1,2) (1,6)"; whitespace around tokens is optional on input.
std::string format_path(const Path& path);
// Throws Error(kSchema) on syntax errors plus the Path constructor errors.
Path parse_path(std::string_view text);

// {"rows": R, "cols": C, "steps": [[r, c], ...]}
nlohmann::json path_to_json(const Path& path);
Path path_from_json(const nlohmann::json& j);

}  // namespace pathword

#endif  // PATHWORD_PATH_HPP_
