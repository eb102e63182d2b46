#include "pathword/alphabet.hpp"

#include <cstdio>

#include "pathword/error.hpp"

namespace pathword {
namespace {

bool is_token_char(char c) { return c >= 0x21 && c <= 0x7e; }

}  // namespace

Alphabet::Alphabet(std::string name, std::vector<std::string> letters)
    : name_(std::move(name)), letters_(std::move(letters)) {
  if (letters_.size() < 2) {
    throw Error(ErrorCode::kInvalidAlphabet, "alphabet needs at least 2 letters, got " +
                                                 std::to_string(letters_.size()));
  }
  const std::size_t width = letters_.front().size();
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    const std::string& letter = letters_[i];
    if (letter.empty()) {
      throw Error(ErrorCode::kInvalidAlphabet, "empty letter at position " + std::to_string(i));
    }
    for (char c : letter) {
      if (!is_token_char(c)) {
        throw Error(ErrorCode::kInvalidAlphabet,
                    "letter '" + letter + "' contains a non-printable or whitespace character");
      }
    }
    if (letter.size() != width) {
      throw Error(ErrorCode::kInvalidAlphabet,
                  "mixed token lengths: '" + letters_.front() + "' and '" + letter + "'");
    }
    if (!index_.emplace(letter, i).second) {
      throw Error(ErrorCode::kInvalidAlphabet, "duplicate letter '" + letter + "'");
    }
  }
}

Alphabet Alphabet::from_letters(std::vector<std::string> letters) {
  return Alphabet("", std::move(letters));
}

Alphabet Alphabet::hex() {
  std::vector<std::string> letters;
  for (char c : std::string_view("0123456789abcdef")) letters.emplace_back(1, c);
  return Alphabet(std::string(kHexName), std::move(letters));
}

Alphabet Alphabet::digit_pairs() {
  std::vector<std::string> letters;
  letters.reserve(100);
  for (int i = 0; i < 100; ++i) {
    char buf[3];
    std::snprintf(buf, sizeof buf, "%02d", i);
    letters.emplace_back(buf);
  }
  return Alphabet(std::string(kDigitPairsName), std::move(letters));
}

Alphabet Alphabet::parse(std::string_view spec) {
  if (spec == kHexName) return hex();
  if (spec == kDigitPairsName) return digit_pairs();
  if (spec.find(',') == std::string_view::npos) {
    throw Error(ErrorCode::kInvalidAlphabet,
                "unknown alphabet '" + std::string(spec) +
                    "' (expected hex, digit-pairs or a comma-separated letter list)");
  }
  std::vector<std::string> letters;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = spec.find(',', start);
    letters.emplace_back(spec.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return from_letters(std::move(letters));
}

std::optional<std::size_t> Alphabet::index_of(std::string_view token) const {
  const auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Alphabet make_alphabet(std::string_view spec) { return Alphabet::parse(spec); }

Alphabet make_alphabet(std::vector<std::string> letters) {
  return Alphabet::from_letters(std::move(letters));
}

}  // namespace pathword
