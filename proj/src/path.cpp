#include "pathword/path.hpp"

#include <cctype>
#include <numeric>
#include <set>

#include "pathword/error.hpp"
#include "pathword/random.hpp"

namespace pathword {
namespace {

std::string coord_text(Coordinate c) {
  return "(" + std::to_string(c.row) + "," + std::to_string(c.col) + ")";
}

// Minimal cursor over the path text syntax.
class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool done() {
    skip_ws();
    return pos_ >= text_.size();
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  int integer() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    if (pos_ - start > 9) fail("number too large");
    return std::stoi(std::string(text_.substr(start, pos_ - start)));
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::kSchema,
                "path syntax: " + what + " at offset " + std::to_string(pos_));
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Path::Path(Dims dims, std::vector<Coordinate> steps) : dims_(dims), steps_(std::move(steps)) {
  if (dims_.rows <= 0 || dims_.cols <= 0) {
    throw Error(ErrorCode::kMalformedGrid, "path dims must be positive");
  }
  if (steps_.empty()) throw Error(ErrorCode::kEmptyPath, "path has no steps");
  std::set<Coordinate> seen;
  for (const Coordinate& c : steps_) {
    if (!dims_.contains(c)) {
      throw Error(ErrorCode::kOutOfBounds, coord_text(c) + " outside " +
                                               std::to_string(dims_.rows) + "x" +
                                               std::to_string(dims_.cols) + " grid");
    }
    if (!seen.insert(c).second) {
      throw Error(ErrorCode::kRepeatedCoordinate, coord_text(c) + " visited twice");
    }
  }
}

Password derive(const Path& path, const Grid& grid) {
  if (path.dims() != grid.dims()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "path is for a " + std::to_string(path.dims().rows) + "x" +
                    std::to_string(path.dims().cols) + " grid, diagram is " +
                    std::to_string(grid.rows()) + "x" + std::to_string(grid.cols()));
  }
  Password password;
  password.letters.reserve(path.size());
  for (const Coordinate& c : path.steps()) {
    const std::string& letter = grid.letter_at(c);
    password.letters.push_back(letter);
    password.text += letter;
  }
  return password;
}

Path random_path(Dims dims, int n, std::optional<std::uint64_t> seed) {
  if (dims.rows <= 0 || dims.cols <= 0 || dims.cell_count() > kMaxCells) {
    throw Error(ErrorCode::kMalformedGrid, "invalid path dims");
  }
  const std::size_t cells = dims.cell_count();
  if (n < 1 || static_cast<std::size_t>(n) > cells) {
    throw Error(ErrorCode::kOutOfRange, "path length " + std::to_string(n) +
                                            " outside 1.." + std::to_string(cells));
  }

  auto draw = [&](RandomSource& rng) {
    std::vector<std::uint32_t> order(cells);
    std::iota(order.begin(), order.end(), 0u);
    std::vector<Coordinate> steps;
    steps.reserve(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
      const std::size_t j = i + static_cast<std::size_t>(uniform_below(rng, cells - i));
      std::swap(order[i], order[j]);
      steps.push_back({static_cast<int>(order[i] / dims.cols) + 1,
                       static_cast<int>(order[i] % dims.cols) + 1});
    }
    return Path(dims, std::move(steps));
  };

  if (seed) {
    SeededRandom rng(*seed);
    return draw(rng);
  }
  SystemRandom rng;
  return draw(rng);
}

std::string render_path_overlay(const Grid& grid, const std::optional<Path>& path) {
  if (!path) return render_diagram(grid);
  if (path->dims() != grid.dims()) {
    throw Error(ErrorCode::kDimensionMismatch, "path and diagram dims differ");
  }
  std::map<Coordinate, int> ordinals;
  int ordinal = 1;
  for (const Coordinate& c : path->steps()) ordinals[c] = ordinal++;
  return render_diagram(grid, ordinals);
}

std::string format_path(const Path& path) {
  std::string out = std::to_string(path.dims().rows) + "x" + std::to_string(path.dims().cols) + " :";
  for (const Coordinate& c : path.steps()) out += " " + coord_text(c);
  return out;
}

Path parse_path(std::string_view text) {
  Scanner in(text);
  Dims dims;
  dims.rows = in.integer();
  if (!in.accept('x')) in.expect('X');
  dims.cols = in.integer();
  in.expect(':');
  std::vector<Coordinate> steps;
  while (!in.done()) {
    in.expect('(');
    Coordinate c;
    c.row = in.integer();
    in.expect(',');
    c.col = in.integer();
    in.expect(')');
    steps.push_back(c);
  }
  return Path(dims, std::move(steps));
}

nlohmann::json path_to_json(const Path& path) {
  nlohmann::json steps = nlohmann::json::array();
  for (const Coordinate& c : path.steps()) steps.push_back({c.row, c.col});
  return {{"rows", path.dims().rows}, {"cols", path.dims().cols}, {"steps", std::move(steps)}};
}

Path path_from_json(const nlohmann::json& j) {
  Dims dims;
  std::vector<Coordinate> steps;
  try {
    dims.rows = j.at("rows").get<int>();
    dims.cols = j.at("cols").get<int>();
    for (const auto& step : j.at("steps")) {
      const auto pair = step.get<std::vector<int>>();
      if (pair.size() != 2) throw Error(ErrorCode::kSchema, "each step must be [row, col]");
      steps.push_back({pair[0], pair[1]});
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kSchema, std::string("bad path: ") + e.what());
  }
  return Path(dims, std::move(steps));
}

}  // namespace pathword
