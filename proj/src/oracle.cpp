#include <algorithm>
#include <iomanip>
#include <limits>
#include <sstream>

#include "pathword/error.hpp"
#include "pathword/strength.hpp"

namespace pathword {
namespace {

// Depth-first walk over all injective cell sequences of a fixed length,
// handing each completed sequence's letter indices to `emit`.
template <typename Emit>
void walk(const std::vector<std::uint32_t>& cells, std::size_t length,
          std::vector<bool>& used, std::vector<std::uint32_t>& letters, Emit& emit) {
  if (letters.size() == length) {
    emit(letters);
    return;
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    letters.push_back(cells[i]);
    walk(cells, length, used, letters, emit);
    letters.pop_back();
    used[i] = false;
  }
}

}  // namespace

OracleReport enumerate_oracle(const Grid& grid, std::int64_t n, std::uint64_t budget) {
  if (n < 0) throw Error(ErrorCode::kDomain, "length must be non-negative");
  const auto cell_count = static_cast<std::int64_t>(grid.cells().size());

  OracleReport report;
  report.n = n;
  const BigInt planned = injective_sequence_count(cell_count, n);
  if (planned > budget) {
    throw Error(ErrorCode::kBudgetExceeded,
                "enumerating " + planned.str() + " sequences exceeds the budget of " +
                    std::to_string(budget));
  }

  std::vector<bool> present(grid.alphabet().size(), false);
  for (std::uint32_t index : grid.cells()) present[index] = true;
  report.letters_present = static_cast<std::size_t>(std::count(present.begin(), present.end(), true));
  report.lower_bound = injective_sequence_count(static_cast<std::int64_t>(report.letters_present), n);

  if (n > cell_count) {
    report.sequence_count = 0;
    report.distinct_passwords = 0;
    return report;
  }

  // Passwords are identified by their letter-index sequence; base-|A| packing
  // into 64 bits when it fits, byte strings otherwise.
  const BigInt space = total_strings(static_cast<std::int64_t>(grid.alphabet().size()), n);
  std::vector<bool> used(grid.cells().size(), false);
  std::vector<std::uint32_t> letters;
  letters.reserve(static_cast<std::size_t>(n));
  const auto length = static_cast<std::size_t>(n);
  // Counted as walked, not taken from the closed form.
  std::uint64_t walked = 0;

  if (space <= BigInt(1u << 26)) {
    std::vector<bool> seen(space.convert_to<std::size_t>(), false);
    const std::uint64_t base = grid.alphabet().size();
    std::uint64_t distinct = 0;
    auto emit = [&](const std::vector<std::uint32_t>& seq) {
      ++walked;
      std::uint64_t key = 0;
      for (std::uint32_t l : seq) key = key * base + l;
      if (!seen[key]) {
        seen[key] = true;
        ++distinct;
      }
    };
    walk(grid.cells(), length, used, letters, emit);
    report.distinct_passwords = distinct;
  } else if (space <= BigInt(std::numeric_limits<std::uint64_t>::max())) {
    std::vector<std::uint64_t> keys;
    const std::uint64_t base = grid.alphabet().size();
    auto emit = [&](const std::vector<std::uint32_t>& seq) {
      ++walked;
      std::uint64_t key = 0;
      for (std::uint32_t l : seq) key = key * base + l;
      keys.push_back(key);
    };
    walk(grid.cells(), length, used, letters, emit);
    std::sort(keys.begin(), keys.end());
    report.distinct_passwords = std::unique(keys.begin(), keys.end()) - keys.begin();
  } else {
    std::vector<std::string> keys;
    auto emit = [&](const std::vector<std::uint32_t>& seq) {
      ++walked;
      std::string key;
      for (std::uint32_t l : seq) key.append(reinterpret_cast<const char*>(&l), sizeof l);
      keys.push_back(std::move(key));
    };
    walk(grid.cells(), length, used, letters, emit);
    std::sort(keys.begin(), keys.end());
    report.distinct_passwords = std::unique(keys.begin(), keys.end()) - keys.begin();
  }
  report.sequence_count = walked;
  return report;
}

nlohmann::json to_json(const OracleReport& report) {
  return {{"n", report.n},
          {"sequence_count", report.sequence_count.str()},
          {"distinct_passwords", report.distinct_passwords.str()},
          {"lower_bound", report.lower_bound.str()},
          {"letters_present", report.letters_present}};
}

std::string to_table(const OracleReport& report) {
  std::ostringstream out;
  out << std::left << std::setw(20) << "n" << report.n << '\n'
      << std::setw(20) << "sequence_count" << report.sequence_count << '\n'
      << std::setw(20) << "distinct_passwords" << report.distinct_passwords << '\n'
      << std::setw(20) << "lower_bound" << report.lower_bound << '\n'
      << std::setw(20) << "letters_present" << report.letters_present << '\n';
  return out.str();
}

}  // namespace pathword
