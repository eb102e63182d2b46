#include "pathword/diagram.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "pathword/error.hpp"
#include "pathword/random.hpp"
#include "pathword/secure.hpp"

namespace pathword {
namespace {

constexpr std::string_view kMagic = "pathword-diagram v1";

void check_dims(int rows, int cols) {
  if (rows <= 0 || cols <= 0) {
    throw Error(ErrorCode::kMalformedGrid, "grid dimensions must be positive, got " +
                                               std::to_string(rows) + "x" + std::to_string(cols));
  }
  if (Dims{rows, cols}.cell_count() > kMaxCells) {
    throw Error(ErrorCode::kMalformedGrid, "grid exceeds " + std::to_string(kMaxCells) + " cells");
  }
}

std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.emplace_back(line.substr(start, i - start));
  }
  return out;
}

std::string alphabet_line(const Alphabet& alphabet) {
  if (alphabet.is_builtin()) return "alphabet " + alphabet.name();
  std::string line = "letters";
  for (const auto& letter : alphabet.letters()) line += " " + letter;
  return line;
}

std::string grid_rows(const Grid& grid) {
  std::string out;
  for (int r = 1; r <= grid.rows(); ++r) {
    for (int c = 1; c <= grid.cols(); ++c) {
      if (c > 1) out += ' ';
      out += grid.letter_at({r, c});
    }
    out += '\n';
  }
  return out;
}

int parse_positive(const std::vector<std::string>& fields, std::string_view key) {
  if (fields.size() != 2 || fields[0] != key) {
    throw Error(ErrorCode::kSchema, "expected '" + std::string(key) + " <n>'");
  }
  int value = 0;
  try {
    std::size_t used = 0;
    value = std::stoi(fields[1], &used);
    if (used != fields[1].size()) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw Error(ErrorCode::kSchema, "'" + std::string(key) + "' is not an integer");
  }
  if (value <= 0) throw Error(ErrorCode::kSchema, "'" + std::string(key) + "' must be positive");
  return value;
}

}  // namespace

Grid::Grid(Alphabet alphabet, int rows, int cols, std::vector<std::uint32_t> cells)
    : alphabet_(std::move(alphabet)), dims_{rows, cols}, cells_(std::move(cells)) {
  check_dims(rows, cols);
  if (cells_.size() != dims_.cell_count()) {
    throw Error(ErrorCode::kMalformedGrid,
                "expected " + std::to_string(dims_.cell_count()) + " cells, got " +
                    std::to_string(cells_.size()));
  }
  for (std::uint32_t index : cells_) {
    if (index >= alphabet_.size()) {
      throw Error(ErrorCode::kMalformedGrid,
                  "cell index " + std::to_string(index) + " outside alphabet of size " +
                      std::to_string(alphabet_.size()));
    }
  }
}

Grid Grid::from_rows(Alphabet alphabet, const std::vector<std::vector<std::string>>& rows) {
  if (rows.empty() || rows.front().empty()) {
    throw Error(ErrorCode::kMalformedGrid, "grid has no cells");
  }
  const std::size_t width = rows.front().size();
  std::vector<std::uint32_t> cells;
  cells.reserve(rows.size() * width);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != width) {
      throw Error(ErrorCode::kMalformedGrid, "ragged grid: row " + std::to_string(r + 1) +
                                                 " has " + std::to_string(rows[r].size()) +
                                                 " cells, expected " + std::to_string(width));
    }
    for (const auto& token : rows[r]) {
      const auto index = alphabet.index_of(token);
      if (!index) {
        throw Error(ErrorCode::kMalformedGrid, "token '" + token + "' is not in the alphabet");
      }
      cells.push_back(static_cast<std::uint32_t>(*index));
    }
  }
  return Grid(std::move(alphabet), static_cast<int>(rows.size()), static_cast<int>(width),
              std::move(cells));
}

std::uint32_t Grid::index_at(Coordinate c) const {
  if (!dims_.contains(c)) {
    throw Error(ErrorCode::kOutOfBounds, "(" + std::to_string(c.row) + "," +
                                             std::to_string(c.col) + ") outside " +
                                             std::to_string(dims_.rows) + "x" +
                                             std::to_string(dims_.cols) + " grid");
  }
  return cells_[static_cast<std::size_t>(c.row - 1) * dims_.cols + (c.col - 1)];
}

CoverageReport validate_diagram(const Grid& grid) {
  std::vector<std::size_t> counts(grid.alphabet().size(), 0);
  for (std::uint32_t index : grid.cells()) ++counts[index];

  CoverageReport report;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const std::string& letter = grid.alphabet().letter(i);
    report.letter_frequencies[letter] = counts[i];
    if (counts[i] == 0) report.missing_letters.push_back(letter);
  }
  report.covered = report.missing_letters.empty();
  return report;
}

Diagram::Diagram(Grid grid, Timestamp created_at)
    : grid_(std::move(grid)), created_at_(created_at) {
  const CoverageReport coverage = validate_diagram(grid_);
  if (!coverage.covered) {
    std::string missing;
    for (const auto& letter : coverage.missing_letters) missing += " " + letter;
    throw Error(ErrorCode::kCoverage, "grid is missing letters:" + missing);
  }
  id_ = digest_hex(canonical_body(grid_));
}

Diagram generate_diagram(const Alphabet& alphabet, int rows, int cols,
                         std::optional<std::uint64_t> seed) {
  check_dims(rows, cols);
  const std::size_t cell_count = Dims{rows, cols}.cell_count();
  if (cell_count < alphabet.size()) {
    throw Error(ErrorCode::kGridTooSmall,
                "a " + std::to_string(rows) + "x" + std::to_string(cols) + " grid has " +
                    std::to_string(cell_count) + " cells, fewer than the " +
                    std::to_string(alphabet.size()) + " letters it must cover");
  }

  auto generate = [&](RandomSource& rng) {
    std::vector<std::uint32_t> cells(cell_count);
    std::iota(cells.begin(), cells.begin() + static_cast<std::ptrdiff_t>(alphabet.size()), 0u);
    for (std::size_t i = alphabet.size(); i < cell_count; ++i) {
      cells[i] = static_cast<std::uint32_t>(uniform_below(rng, alphabet.size()));
    }
    shuffle(std::span<std::uint32_t>(cells), rng);
    return Diagram(Grid(alphabet, rows, cols, std::move(cells)));
  };

  if (seed) {
    SeededRandom rng(*seed);
    return generate(rng);
  }
  SystemRandom rng;
  return generate(rng);
}

std::string render_diagram(const Grid& grid, const std::map<Coordinate, int>& annotations) {
  for (const auto& [coord, ordinal] : annotations) {
    if (!grid.dims().contains(coord)) {
      throw Error(ErrorCode::kOutOfBounds, "annotation at (" + std::to_string(coord.row) + "," +
                                               std::to_string(coord.col) + ") outside the grid");
    }
  }

  std::vector<std::string> text;
  text.reserve(grid.cells().size());
  std::size_t width = 0;
  for (int r = 1; r <= grid.rows(); ++r) {
    for (int c = 1; c <= grid.cols(); ++c) {
      std::string cell = grid.letter_at({r, c});
      if (const auto it = annotations.find({r, c}); it != annotations.end()) {
        cell += "^" + std::to_string(it->second);
      }
      width = std::max(width, cell.size());
      text.push_back(std::move(cell));
    }
  }

  std::string border = "+";
  for (int c = 0; c < grid.cols(); ++c) border += std::string(width + 2, '-') + "+";
  border += '\n';

  std::string out = border;
  for (int r = 0; r < grid.rows(); ++r) {
    out += '|';
    for (int c = 0; c < grid.cols(); ++c) {
      const std::string& cell = text[static_cast<std::size_t>(r) * grid.cols() + c];
      out += ' ' + cell + std::string(width - cell.size(), ' ') + " |";
    }
    out += '\n';
    out += border;
  }
  return out;
}

std::string canonical_body(const Grid& grid) {
  std::ostringstream out;
  out << kMagic << '\n'
      << alphabet_line(grid.alphabet()) << '\n'
      << "rows " << grid.rows() << '\n'
      << "cols " << grid.cols() << '\n'
      << grid_rows(grid);
  return out.str();
}

std::string grid_id(const Grid& grid) { return digest_hex(canonical_body(grid)); }

std::string encode_grid(const Grid& grid) {
  std::ostringstream out;
  out << kMagic << '\n'
      << alphabet_line(grid.alphabet()) << '\n'
      << "rows " << grid.rows() << '\n'
      << "cols " << grid.cols() << '\n'
      << "id " << grid_id(grid) << '\n'
      << grid_rows(grid);
  return out.str();
}

std::string encode_diagram(const Diagram& d) { return encode_grid(d.grid()); }

Grid decode_grid(std::string_view document) {
  std::vector<std::vector<std::string>> lines;
  std::size_t start = 0;
  while (start <= document.size()) {
    std::size_t end = document.find('\n', start);
    if (end == std::string_view::npos) end = document.size();
    auto fields = split_ws(document.substr(start, end - start));
    if (!fields.empty()) lines.push_back(std::move(fields));
    start = end + 1;
  }

  std::size_t next = 0;
  auto take = [&](std::string_view what) -> const std::vector<std::string>& {
    if (next >= lines.size()) {
      throw Error(ErrorCode::kSchema, "document ends before " + std::string(what));
    }
    return lines[next++];
  };

  const auto& magic = take("header");
  if (magic.size() != 2 || magic[0] + " " + magic[1] != kMagic) {
    throw Error(ErrorCode::kSchema, "missing '" + std::string(kMagic) + "' header");
  }

  const auto& alpha = take("alphabet");
  std::optional<Alphabet> alphabet;
  try {
    if (alpha[0] == "alphabet" && alpha.size() == 2 &&
        (alpha[1] == Alphabet::kHexName || alpha[1] == Alphabet::kDigitPairsName)) {
      alphabet = Alphabet::parse(alpha[1]);
    } else if (alpha[0] == "letters") {
      alphabet = Alphabet::from_letters({alpha.begin() + 1, alpha.end()});
    } else {
      throw Error(ErrorCode::kSchema, "expected 'alphabet <hex|digit-pairs>' or 'letters ...'");
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kSchema) throw;
    throw Error(ErrorCode::kSchema, std::string("bad alphabet: ") + e.what());
  }

  const int rows = parse_positive(take("rows"), "rows");
  const int cols = parse_positive(take("cols"), "cols");
  if (Dims{rows, cols}.cell_count() > kMaxCells) {
    throw Error(ErrorCode::kSchema, "grid exceeds " + std::to_string(kMaxCells) + " cells");
  }

  std::optional<std::string> declared_id;
  if (next < lines.size() && lines[next][0] == "id") {
    if (lines[next].size() != 2) throw Error(ErrorCode::kSchema, "expected 'id <hex>'");
    declared_id = lines[next][1];
    ++next;
  }

  std::vector<std::vector<std::string>> cells;
  for (int r = 0; r < rows; ++r) {
    const auto& row = take("row " + std::to_string(r + 1));
    if (row.size() != static_cast<std::size_t>(cols)) {
      throw Error(ErrorCode::kSchema, "row " + std::to_string(r + 1) + " has " +
                                          std::to_string(row.size()) + " cells, expected " +
                                          std::to_string(cols));
    }
    cells.push_back(row);
  }
  if (next != lines.size()) throw Error(ErrorCode::kSchema, "unexpected content after the grid");

  std::optional<Grid> grid;
  try {
    grid = Grid::from_rows(*alphabet, cells);
  } catch (const Error& e) {
    throw Error(ErrorCode::kSchema, e.what());
  }
  if (declared_id && *declared_id != grid_id(*grid)) {
    throw Error(ErrorCode::kSchema, "id does not match the grid contents");
  }
  return std::move(*grid);
}

Diagram decode_diagram(std::string_view document) { return Diagram(decode_grid(document)); }

nlohmann::json alphabet_to_json(const Alphabet& alphabet) {
  if (alphabet.is_builtin()) return alphabet.name();
  return nlohmann::json{{"letters", alphabet.letters()}};
}

Alphabet alphabet_from_json(const nlohmann::json& j) {
  try {
    if (j.is_string()) {
      const auto name = j.get<std::string>();
      if (name != Alphabet::kHexName && name != Alphabet::kDigitPairsName) {
        throw Error(ErrorCode::kSchema, "unknown alphabet '" + name + "'");
      }
      return Alphabet::parse(name);
    }
    if (j.is_object() && j.contains("letters")) {
      return Alphabet::from_letters(j.at("letters").get<std::vector<std::string>>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kSchema, std::string("bad alphabet: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kSchema) throw;
    throw Error(ErrorCode::kSchema, std::string("bad alphabet: ") + e.what());
  }
  throw Error(ErrorCode::kSchema, "alphabet must be a built-in name or {\"letters\": [...]}");
}

nlohmann::json grid_to_json(const Grid& grid) {
  nlohmann::json cells = nlohmann::json::array();
  for (int r = 1; r <= grid.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (int c = 1; c <= grid.cols(); ++c) row.push_back(grid.letter_at({r, c}));
    cells.push_back(std::move(row));
  }
  return {{"alphabet", alphabet_to_json(grid.alphabet())},
          {"rows", grid.rows()},
          {"cols", grid.cols()},
          {"cells", std::move(cells)},
          {"id", grid_id(grid)}};
}

nlohmann::json diagram_to_json(const Diagram& d) { return grid_to_json(d.grid()); }

Grid grid_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kSchema, "diagram must be an object");
  Alphabet alphabet = alphabet_from_json(j.value("alphabet", nlohmann::json()));
  int rows = 0;
  int cols = 0;
  std::vector<std::vector<std::string>> cells;
  try {
    rows = j.at("rows").get<int>();
    cols = j.at("cols").get<int>();
    cells = j.at("cells").get<std::vector<std::vector<std::string>>>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kSchema, std::string("bad diagram: ") + e.what());
  }
  if (rows <= 0 || cols <= 0 || cells.size() != static_cast<std::size_t>(rows)) {
    throw Error(ErrorCode::kSchema, "cells do not match rows/cols");
  }
  for (const auto& row : cells) {
    if (row.size() != static_cast<std::size_t>(cols)) {
      throw Error(ErrorCode::kSchema, "cells do not match rows/cols");
    }
  }
  std::optional<Grid> grid;
  try {
    grid = Grid::from_rows(std::move(alphabet), cells);
  } catch (const Error& e) {
    throw Error(ErrorCode::kSchema, e.what());
  }
  if (j.contains("id") && j.at("id") != grid_id(*grid)) {
    throw Error(ErrorCode::kSchema, "id does not match the grid contents");
  }
  return std::move(*grid);
}

Diagram diagram_from_json(const nlohmann::json& j) { return Diagram(grid_from_json(j)); }

}  // namespace pathword
