#ifndef PATHWORD_ALPHABET_HPP_
#define PATHWORD_ALPHABET_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace pathword {

// An ordered set of distinct, equal-length letter tokens. Tokens are
// printable non-whitespace ASCII so that passwords read off a grid segment
// unambiguously and documents can separate tokens with whitespace.
class Alphabet {
 public:
  static constexpr std::string_view kHexName = "hex";
  static constexpr std::string_view kDigitPairsName = "digit-pairs";

  // Throws Error(kInvalidAlphabet) on duplicates, mixed token lengths,
  // fewer than two letters or characters outside 0x21..0x7e.
  static Alphabet from_letters(std::vector<std::string> letters);

  static Alphabet hex();
  static Alphabet digit_pairs();

  // Accepts a built-in name ("hex", "digit-pairs") or a comma-separated
  // explicit letter list such as "0,1".
  static Alphabet parse(std::string_view spec);

  // Empty for explicit alphabets.
  const std::string& name() const noexcept { return name_; }
  bool is_builtin() const noexcept { return !name_.empty(); }

  std::size_t size() const noexcept { return letters_.size(); }
  std::size_t token_length() const noexcept { return letters_.front().size(); }
  const std::vector<std::string>& letters() const noexcept { return letters_; }
  const std::string& letter(std::size_t index) const { return letters_.at(index); }
  std::optional<std::size_t> index_of(std::string_view token) const;

  // Letters and order; the built-in name is presentation only.
  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.letters_ == b.letters_;
  }

 private:
  Alphabet(std::string name, std::vector<std::string> letters);

  std::string name_;
  std::vector<std::string> letters_;
  std::unordered_map<std::string, std::size_t> index_;
};

Alphabet make_alphabet(std::string_view spec);
Alphabet make_alphabet(std::vector<std::string> letters);

}  // namespace pathword

#endif  // PATHWORD_ALPHABET_HPP_
