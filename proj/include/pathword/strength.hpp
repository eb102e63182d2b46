#ifndef PATHWORD_STRENGTH_HPP_
#define PATHWORD_STRENGTH_HPP_

#include <cstdint>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include "pathword/diagram.hpp"

namespace pathword {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// |A|^n. Requires alphabet_size >= 2 and n >= 0 (Error(kDomain)).
BigInt total_strings(std::int64_t alphabet_size, std::int64_t n);

// Falling factorial pool * (pool-1) * ... * (pool-n+1); zero when n > pool.
// Negative inputs are Error(kDomain).
BigInt injective_sequence_count(std::int64_t pool_size, std::int64_t n);

// Fraction of A^n reachable by injective reads of a covering grid.
struct Ratio {
  Rational exact;        // injective_sequence_count / total_strings
  double power_bound;    // (1 - (n-1)/|A|)^n, never above exact
  double exp_approx;     // e^{-(n-1)^2/|A|}, an approximation only
};

// Requires 1 <= n <= alphabet_size; n > |A| is Error(kDomain) rather than a
// silent zero.
Ratio ratio(std::int64_t alphabet_size, std::int64_t n);

// The same power bound written with k = |A|/(n-1): (1 - 1/k)^(1 + |A|/k).
// n = 1 gives k = infinity and the value 1.
double k_form_bound(std::int64_t alphabet_size, std::int64_t n);

// Region in which |exact - exp_approx| <= 0.02 holds: |A| >= 50 n^2.
bool exp_approx_valid(std::int64_t alphabet_size, std::int64_t n);

struct AttackerModel {
  double guesses_per_second = 1e6;
  double time_frame_seconds = 365.0 * 24 * 3600;
};

// Throws Error(kDomain) unless both fields are finite and > 0.
void check_model(const AttackerModel& model);

struct Adequacy {
  bool adequate = false;
  // (|A|^n / 2) / guesses_per_second; presentation only, may be +inf.
  double expected_time_seconds = 0;
  // Smallest m >= 1 whose expected guessing time exceeds the time frame.
  std::int64_t min_adequate_length = 0;
};

// adequate <=> |A|^n / 2 / rate > T, decided in exact rational arithmetic.
Adequacy adequacy(std::int64_t alphabet_size, std::int64_t n,
                  const AttackerModel& model);

// log2 of total_strings, or of injective_sequence_count when injective.
double bits_of_strength(std::int64_t alphabet_size, std::int64_t n, bool injective);

// Smallest m <= |A| with injective_sequence_count(|A|, m) >=
// total_strings(|A|, n); nullopt when even m = |A| falls short.
std::optional<std::int64_t> compensation_length(std::int64_t alphabet_size,
                                                std::int64_t n);

// Literature per-character estimates: English text 1.3, user-chosen
// passwords 4, raw ASCII 8 bits.
struct EntropyComparison {
  double english_bits = 0;
  double typical_password_bits = 0;
  double ascii_bits = 0;
};
EntropyComparison entropy_comparison(std::int64_t n);

struct StrengthReport {
  std::int64_t alphabet_size = 0;
  std::int64_t length = 0;
  AttackerModel model;
  BigInt total_strings;
  BigInt expected_guesses;  // ceil(|A|^n / 2)
  // Injective (pathword) figures; present only when n <= |A|.
  std::optional<BigInt> injective_sequences;
  std::optional<Rational> ratio_exact;
  std::optional<double> bound_power;
  std::optional<double> bound_exp_approx;
  bool adequate = false;
  std::int64_t min_adequate_length = 0;
  double expected_time_seconds = 0;
};

StrengthReport analyze(std::int64_t alphabet_size, std::int64_t n,
                       const AttackerModel& model);

nlohmann::json to_json(const StrengthReport& report);
std::string to_table(const StrengthReport& report);

// Exhaustive check of the injective-sequence counting on one grid.
struct OracleReport {
  std::int64_t n = 0;
  BigInt sequence_count;      // injective cell sequences of length n
  BigInt distinct_passwords;  // distinct strings those sequences read
  BigInt lower_bound;         // injective_sequence_count(|A'|, n)
  std::size_t letters_present = 0;  // |A'|
};

inline constexpr std::uint64_t kDefaultOracleBudget = 10'000'000;

// Throws Error(kBudgetExceeded) when the number of sequences to enumerate
// exceeds budget, Error(kDomain) for n < 0.
OracleReport enumerate_oracle(const Grid& grid, std::int64_t n,
                              std::uint64_t budget = kDefaultOracleBudget);

nlohmann::json to_json(const OracleReport& report);
std::string to_table(const OracleReport& report);

// Decimal expansion of a non-negative rational, truncated to `digits`
// fractional digits.
std::string to_decimal(const Rational& value, int digits);

}  // namespace pathword

#endif  // PATHWORD_STRENGTH_HPP_
