#include "pathword/strength.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "pathword/error.hpp"

namespace pathword {
namespace {

// Doubles are dyadic rationals; convert without rounding.
Rational exact_rational(double x) {
  int exponent = 0;
  const double mantissa = std::frexp(x, &exponent);
  const auto scaled = static_cast<std::int64_t>(std::ldexp(mantissa, 53));
  Rational value{BigInt(scaled)};
  const int shift = exponent - 53;
  if (shift >= 0) {
    value *= Rational(BigInt(1) << shift);
  } else {
    value /= Rational(BigInt(1) << -shift);
  }
  return value;
}

double to_double(const BigInt& v) { return v.convert_to<double>(); }

std::string format_double(double v, int precision = 6) {
  std::ostringstream out;
  out << std::setprecision(precision) << v;
  return out.str();
}

void require(bool ok, const std::string& message) {
  if (!ok) throw Error(ErrorCode::kDomain, message);
}

}  // namespace

BigInt total_strings(std::int64_t alphabet_size, std::int64_t n) {
  require(alphabet_size >= 2, "alphabet size must be at least 2");
  require(n >= 0, "length must be non-negative");
  BigInt result = 1;
  const BigInt base = alphabet_size;
  for (std::int64_t i = 0; i < n; ++i) result *= base;
  return result;
}

BigInt injective_sequence_count(std::int64_t pool_size, std::int64_t n) {
  require(pool_size >= 0 && n >= 0, "pool size and length must be non-negative");
  if (n > pool_size) return 0;
  BigInt result = 1;
  for (std::int64_t j = 0; j < n; ++j) result *= BigInt(pool_size - j);
  return result;
}

Ratio ratio(std::int64_t alphabet_size, std::int64_t n) {
  require(alphabet_size >= 2, "alphabet size must be at least 2");
  require(n >= 1, "length must be at least 1");
  require(n <= alphabet_size, "length " + std::to_string(n) + " exceeds alphabet size " +
                                  std::to_string(alphabet_size) +
                                  ": no injective path reads that many distinct letters");
  Ratio r;
  r.exact = Rational(injective_sequence_count(alphabet_size, n),
                     total_strings(alphabet_size, n));
  const double a = static_cast<double>(alphabet_size);
  const double m = static_cast<double>(n - 1);
  // (a - m) is exact, so the base carries a single rounding.
  r.power_bound = std::pow((a - m) / a, static_cast<double>(n));
  r.exp_approx = std::exp(-(m * m) / a);
  return r;
}

double k_form_bound(std::int64_t alphabet_size, std::int64_t n) {
  require(alphabet_size >= 2 && n >= 1 && n <= alphabet_size, "need 1 <= n <= |A|");
  if (n == 1) return 1.0;
  // Extended precision: 1 - 1/k cancels badly when k is close to 1.
  const long double a = static_cast<long double>(alphabet_size);
  const long double k = a / static_cast<long double>(n - 1);
  return static_cast<double>(std::pow(1.0L - 1.0L / k, 1.0L + a / k));
}

bool exp_approx_valid(std::int64_t alphabet_size, std::int64_t n) {
  return n >= 1 && alphabet_size >= 50 * n * n;
}

void check_model(const AttackerModel& model) {
  require(std::isfinite(model.guesses_per_second) && model.guesses_per_second > 0,
          "guesses per second must be finite and positive");
  require(std::isfinite(model.time_frame_seconds) && model.time_frame_seconds > 0,
          "time frame must be finite and positive");
}

Adequacy adequacy(std::int64_t alphabet_size, std::int64_t n, const AttackerModel& model) {
  check_model(model);
  require(n >= 1, "length must be at least 1");
  const BigInt strings = total_strings(alphabet_size, n);
  // |A|^m / 2 / rate > T  <=>  |A|^m > 2 * rate * T
  const Rational threshold =
      Rational(2) * exact_rational(model.guesses_per_second) * exact_rational(model.time_frame_seconds);

  Adequacy result;
  result.adequate = Rational(strings) > threshold;
  result.expected_time_seconds = to_double(strings) / 2.0 / model.guesses_per_second;

  BigInt power = alphabet_size;
  std::int64_t m = 1;
  while (!(Rational(power) > threshold)) {
    power *= alphabet_size;
    ++m;
  }
  result.min_adequate_length = m;
  return result;
}

double bits_of_strength(std::int64_t alphabet_size, std::int64_t n, bool injective) {
  require(alphabet_size >= 2, "alphabet size must be at least 2");
  require(n >= 0, "length must be non-negative");
  if (!injective) return static_cast<double>(n) * std::log2(static_cast<double>(alphabet_size));
  require(n <= alphabet_size, "injective length exceeds alphabet size");
  double bits = 0;
  for (std::int64_t j = 0; j < n; ++j) bits += std::log2(static_cast<double>(alphabet_size - j));
  return bits;
}

std::optional<std::int64_t> compensation_length(std::int64_t alphabet_size, std::int64_t n) {
  const BigInt target = total_strings(alphabet_size, n);
  BigInt count = 1;
  for (std::int64_t m = 0; m <= alphabet_size; ++m) {
    if (m > 0) count *= BigInt(alphabet_size - (m - 1));
    if (count >= target) return m;
  }
  return std::nullopt;
}

EntropyComparison entropy_comparison(std::int64_t n) {
  require(n >= 0, "length must be non-negative");
  const double len = static_cast<double>(n);
  return {1.3 * len, 4.0 * len, 8.0 * len};
}

StrengthReport analyze(std::int64_t alphabet_size, std::int64_t n, const AttackerModel& model) {
  StrengthReport report;
  report.alphabet_size = alphabet_size;
  report.length = n;
  report.model = model;
  report.total_strings = total_strings(alphabet_size, n);
  report.expected_guesses = (report.total_strings + 1) / 2;
  if (n >= 1 && n <= alphabet_size) {
    const Ratio r = ratio(alphabet_size, n);
    report.injective_sequences = injective_sequence_count(alphabet_size, n);
    report.ratio_exact = r.exact;
    report.bound_power = r.power_bound;
    report.bound_exp_approx = r.exp_approx;
  }
  const Adequacy a = adequacy(alphabet_size, n, model);
  report.adequate = a.adequate;
  report.min_adequate_length = a.min_adequate_length;
  report.expected_time_seconds = a.expected_time_seconds;
  return report;
}

std::string to_decimal(const Rational& value, int digits) {
  BigInt num = boost::multiprecision::numerator(value);
  const BigInt den = boost::multiprecision::denominator(value);
  require(num >= 0, "to_decimal expects a non-negative value");
  std::string out = BigInt(num / den).str();
  num %= den;
  if (digits > 0) out += '.';
  for (int i = 0; i < digits; ++i) {
    num *= 10;
    out += static_cast<char>('0' + static_cast<int>(num / den));
    num %= den;
  }
  return out;
}

nlohmann::json to_json(const StrengthReport& report) {
  nlohmann::json j = {
      {"alphabet_size", report.alphabet_size},
      {"length", report.length},
      {"guesses_per_second", report.model.guesses_per_second},
      {"time_frame_seconds", report.model.time_frame_seconds},
      {"total_strings", report.total_strings.str()},
      {"expected_guesses", report.expected_guesses.str()},
      {"adequate", report.adequate},
      {"min_adequate_length", report.min_adequate_length},
      {"expected_time_seconds", report.expected_time_seconds},
  };
  if (report.ratio_exact) {
    j["injective_sequences"] = report.injective_sequences->str();
    j["ratio_exact"] = {{"numerator", boost::multiprecision::numerator(*report.ratio_exact).str()},
                        {"denominator", boost::multiprecision::denominator(*report.ratio_exact).str()},
                        {"decimal", to_decimal(*report.ratio_exact, 20)}};
    j["bound_power"] = *report.bound_power;
    j["bound_exp_approx"] = *report.bound_exp_approx;
  } else {
    j["injective_sequences"] = nullptr;
    j["ratio_exact"] = nullptr;
    j["bound_power"] = nullptr;
    j["bound_exp_approx"] = nullptr;
  }
  return j;
}

std::string to_table(const StrengthReport& report) {
  std::ostringstream out;
  auto row = [&](std::string_view key, const std::string& value) {
    out << std::left << std::setw(24) << key << value << '\n';
  };
  row("alphabet_size", std::to_string(report.alphabet_size));
  row("length", std::to_string(report.length));
  row("guesses_per_second", format_double(report.model.guesses_per_second));
  row("time_frame_seconds", format_double(report.model.time_frame_seconds, 12));
  row("total_strings", report.total_strings.str());
  row("expected_guesses", report.expected_guesses.str());
  row("expected_time_seconds", format_double(report.expected_time_seconds));
  row("adequate", report.adequate ? "true" : "false");
  row("min_adequate_length", std::to_string(report.min_adequate_length));
  if (report.ratio_exact) {
    row("injective_sequences", report.injective_sequences->str());
    row("ratio_exact", boost::multiprecision::numerator(*report.ratio_exact).str() + "/" +
                           boost::multiprecision::denominator(*report.ratio_exact).str());
    row("ratio_decimal", to_decimal(*report.ratio_exact, 10));
    row("bound_power", format_double(*report.bound_power, 10));
    row("bound_exp_approx", format_double(*report.bound_exp_approx, 10));
    row("bound_chain", to_decimal(*report.ratio_exact, 6) +
                           " >= " + format_double(*report.bound_power, 6) + " (power bound)");
  } else {
    row("ratio_exact", "n/a (length exceeds alphabet size)");
  }
  return out.str();
}

}  // namespace pathword
