#include "pathword/strength.hpp"

#include <cmath>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "oracle_math.hpp"
#include "pathword/error.hpp"

namespace pathword {
namespace {

using ::testing::HasSubstr;
using pathword::testing::decimal_falling_factorial;
using pathword::testing::decimal_pow;

constexpr double kYear = 31536000.0;

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected pathword::Error";
  return ErrorCode::kDomain;
}

TEST(TotalStringsTest, Examples) {
  EXPECT_EQ(total_strings(2, 46).str(), "70368744177664");
  EXPECT_EQ(total_strings(2, 46).str(), decimal_pow(2, 46));
  EXPECT_EQ(total_strings(100, 10).str(), "1" + std::string(20, '0'));
  for (int k = 2; k < 300; k += 17) EXPECT_EQ(total_strings(k, 0), 1);
  EXPECT_EQ(code_of([] { total_strings(1, 3); }), ErrorCode::kDomain);
  EXPECT_EQ(code_of([] { total_strings(2, -1); }), ErrorCode::kDomain);
}

TEST(TotalStringsTest, AgreesWithDecimalOracle) {
  for (std::uint64_t a : {2u, 3u, 16u, 100u, 128u, 997u}) {
    for (std::uint64_t n = 0; n <= 60; n += 7) {
      ASSERT_EQ(total_strings(a, n).str(), decimal_pow(a, n)) << a << "^" << n;
    }
  }
}

TEST(InjectiveCountTest, Examples) {
  EXPECT_EQ(injective_sequence_count(4, 2), 12);
  EXPECT_EQ(injective_sequence_count(100, 10).str(), "62815650955529472000");
  EXPECT_EQ(injective_sequence_count(100, 10).str(), decimal_falling_factorial(100, 10));
  EXPECT_EQ(injective_sequence_count(16, 16).str(), "20922789888000");
  EXPECT_EQ(injective_sequence_count(16, 16).str(), decimal_falling_factorial(16, 16));
  EXPECT_EQ(injective_sequence_count(3, 4), 0);
  EXPECT_EQ(injective_sequence_count(0, 0), 1);
  EXPECT_EQ(code_of([] { injective_sequence_count(-1, 0); }), ErrorCode::kDomain);
  EXPECT_EQ(code_of([] { injective_sequence_count(3, -1); }), ErrorCode::kDomain);
}

TEST(InjectiveCountTest, AgreesWithDecimalOracle) {
  for (std::uint64_t m = 0; m <= 120; m += 11) {
    for (std::uint64_t n = 0; n <= m + 2; ++n) {
      ASSERT_EQ(injective_sequence_count(m, n).str(), decimal_falling_factorial(m, n));
    }
  }
}

TEST(RatioTest, HundredTen) {
  const Ratio r = ratio(100, 10);
  EXPECT_EQ(r.exact, Rational(BigInt("62815650955529472000"), BigInt("100000000000000000000")));
  EXPECT_EQ(to_decimal(r.exact, 17), "0.62815650955529472");
  EXPECT_NEAR(r.exact.convert_to<double>(), 0.63, 0.005);
  EXPECT_DOUBLE_EQ(r.power_bound, std::pow(0.91, 10));
  EXPECT_DOUBLE_EQ(r.exp_approx, std::exp(-0.81));
}

TEST(RatioTest, SingleDrawIsOne) {
  for (int k : {2, 3, 16, 100, 1000}) EXPECT_EQ(ratio(k, 1).exact, 1);
}

TEST(RatioTest, SixteenOfSixteen) {
  const Ratio r = ratio(16, 16);
  EXPECT_EQ(r.exact, Rational(BigInt("20922789888000"), BigInt("18446744073709551616")));
  EXPECT_EQ(r.exact, Rational(BigInt(638512875), BigInt("562949953421312")));
  EXPECT_NEAR(r.exact.convert_to<double>(), 1.134e-6, 0.001e-6);
}

TEST(RatioTest, Errors) {
  EXPECT_EQ(code_of([] { ratio(16, 17); }), ErrorCode::kDomain);
  EXPECT_EQ(code_of([] { ratio(16, 0); }), ErrorCode::kDomain);
  EXPECT_EQ(code_of([] { ratio(1, 1); }), ErrorCode::kDomain);
}

// Power bound never exceeds the exact ratio, and the k-parameterized form
// agrees with it, over the full 2 <= |A| <= 1000 sweep.
TEST(RatioTest, BoundChainSweep) {
  for (int a = 2; a <= 1000; ++a) {
    for (int n = 1; n <= a; n += (a > 200 ? 7 : 1)) {
      const Ratio r = ratio(a, n);
      ASSERT_GT(r.exact, 0);
      ASSERT_LE(r.exact, 1);
      // Compare the rounded-down double against the exact rational with a
      // tiny absolute slack for pow() rounding.
      ASSERT_GE(r.exact.convert_to<double>() + 1e-15, r.power_bound) << a << "," << n;
      const double k_form = k_form_bound(a, n);
      ASSERT_NEAR(k_form, r.power_bound, 1e-12 * std::max(r.power_bound, 1e-300)) << a << "," << n;
    }
  }
}

TEST(RatioTest, ApproximationInsideDeclaredRegion) {
  double worst = 0;
  for (int n = 1; n <= 20; ++n) {
    for (int a = 50 * n * n; a <= 50 * n * n + 2000; a += 37) {
      ASSERT_TRUE(exp_approx_valid(a, n));
      const Ratio r = ratio(a, n);
      worst = std::max(worst, std::abs(r.exact.convert_to<double>() - r.exp_approx));
    }
  }
  EXPECT_LE(worst, 0.02);
  EXPECT_FALSE(exp_approx_valid(250, 5));
}

TEST(RatioTest, FloorInSquareRootRegime) {
  for (int a = 2; a <= 1000; ++a) {
    for (int n = 1; (n - 1) * (n - 1) <= a && n <= a; ++n) {
      ASSERT_GE(ratio(a, n).exact.convert_to<double>(), std::exp(-1.0) - 0.01) << a << "," << n;
    }
  }
}

TEST(AdequacyTest, FortySixBits) {
  const Adequacy a = adequacy(2, 46, {1e6, kYear});
  EXPECT_TRUE(a.adequate);
  EXPECT_EQ(a.min_adequate_length, 46);
  // 2^45 > 10^6 * 31536000
  EXPECT_GT(total_strings(2, 45), BigInt("31536000000000"));
  EXPECT_FALSE(adequacy(2, 45, {1e6, kYear}).adequate);
  EXPECT_DOUBLE_EQ(a.expected_time_seconds, std::ldexp(1.0, 45) / 1e6);
}

TEST(AdequacyTest, LiteratureExamples) {
  EXPECT_TRUE(adequacy(128, 7, {1e6, kYear}).adequate);
  EXPECT_TRUE(adequacy(16, 12, {1e6, kYear}).adequate);
  const Adequacy one = adequacy(2, 1, {1e6, kYear});
  EXPECT_FALSE(one.adequate);
  EXPECT_DOUBLE_EQ(one.expected_time_seconds, 1e-6);
}

TEST(AdequacyTest, ExactBoundary) {
  // 2^4 / 2 / 1 = 8: strictly greater than T=7.5, not than T=8.
  EXPECT_TRUE(adequacy(2, 4, {1.0, 7.5}).adequate);
  EXPECT_FALSE(adequacy(2, 4, {1.0, 8.0}).adequate);
  EXPECT_EQ(adequacy(2, 4, {1.0, 8.0}).min_adequate_length, 5);
  // Tiny threshold: m starts at 1.
  EXPECT_EQ(adequacy(2, 1, {1.0, 0.25}).min_adequate_length, 1);
}

TEST(AdequacyTest, InvalidModels) {
  EXPECT_EQ(code_of([] { adequacy(2, 1, {0.0, 1.0}); }), ErrorCode::kDomain);
  EXPECT_EQ(code_of([] { adequacy(2, 1, {1.0, -1.0}); }), ErrorCode::kDomain);
  EXPECT_EQ(code_of([] { adequacy(2, 1, {INFINITY, 1.0}); }), ErrorCode::kDomain);
  EXPECT_EQ(code_of([] { adequacy(2, 1, {1.0, NAN}); }), ErrorCode::kDomain);
  EXPECT_EQ(code_of([] { adequacy(2, 0, {1.0, 1.0}); }), ErrorCode::kDomain);
}

TEST(AdequacyTest, Monotonicity) {
  for (double rate : {1.0, 1e3, 1e6, 1e9}) {
    for (double t : {1.0, 3600.0, kYear, 100 * kYear}) {
      std::int64_t previous = INT64_MAX;
      for (int a = 2; a <= 300; ++a) {
        const std::int64_t m = adequacy(a, 1, {rate, t}).min_adequate_length;
        ASSERT_LE(m, previous);
        previous = m;
        ASSERT_GE(adequacy(a, 1, {rate * 10, t}).min_adequate_length, m);
        ASSERT_GE(adequacy(a, 1, {rate, t * 10}).min_adequate_length, m);
      }
    }
  }
}

TEST(BitsTest, Examples) {
  EXPECT_NEAR(bits_of_strength(100, 10, false), 66.4386, 1e-4);
  EXPECT_NEAR(bits_of_strength(100, 9, false), 59.7947, 1e-4);
  EXPECT_GE(bits_of_strength(100, 10, false), 64);
  EXPECT_LT(bits_of_strength(100, 9, false), 64);
  for (int n = 0; n <= 64; ++n) EXPECT_DOUBLE_EQ(bits_of_strength(2, n, false), n);
  EXPECT_NEAR(bits_of_strength(100, 10, true), 65.7678, 1e-4);
  EXPECT_EQ(code_of([] { bits_of_strength(16, 17, true); }), ErrorCode::kDomain);
}

TEST(CompensationTest, Examples) {
  EXPECT_EQ(compensation_length(100, 10), 11);
  EXPECT_EQ(compensation_length(7, 0), 0);
  EXPECT_EQ(compensation_length(16, 12), std::nullopt);
  EXPECT_LT(injective_sequence_count(100, 10), total_strings(100, 10));
  EXPECT_GE(injective_sequence_count(100, 11), total_strings(100, 10));
}

TEST(CompensationTest, AtMostOneExtraLetterForLargeAlphabets) {
  for (int a = 50; a <= 500; a += 50) {
    for (int n = 1; n <= 10; ++n) {
      const auto m = compensation_length(a, n);
      ASSERT_TRUE(m.has_value()) << a << "," << n;
      ASSERT_LE(*m, n + 1) << a << "," << n;
      ASSERT_GE(*m, n);
    }
  }
}

TEST(EntropyTest, Examples) {
  const EntropyComparison ten = entropy_comparison(10);
  EXPECT_DOUBLE_EQ(ten.english_bits, 13);
  EXPECT_DOUBLE_EQ(ten.typical_password_bits, 40);
  EXPECT_DOUBLE_EQ(ten.ascii_bits, 80);
  const EntropyComparison zero = entropy_comparison(0);
  EXPECT_EQ(zero.english_bits + zero.typical_password_bits + zero.ascii_bits, 0);
  EXPECT_DOUBLE_EQ(entropy_comparison(7).ascii_bits, 56);
}

TEST(AnalyzeTest, ReportFields) {
  const StrengthReport r = analyze(100, 10, {});
  EXPECT_EQ(r.total_strings.str(), "100000000000000000000");
  EXPECT_EQ(r.expected_guesses.str(), "50000000000000000000");
  EXPECT_EQ(r.injective_sequences->str(), "62815650955529472000");
  EXPECT_TRUE(r.adequate);
  const nlohmann::json j = to_json(r);
  EXPECT_EQ(j.at("ratio_exact").at("decimal"), "0.62815650955529472000");
  EXPECT_THAT(to_table(r), HasSubstr("ratio_decimal           0.6281565095"));

  // Odd count rounds the expected guesses up.
  EXPECT_EQ(analyze(3, 1, {}).expected_guesses, 2);

  const StrengthReport over = analyze(16, 17, {});
  EXPECT_FALSE(over.ratio_exact.has_value());
  EXPECT_TRUE(to_json(over).at("ratio_exact").is_null());
}

TEST(ToDecimalTest, Truncates) {
  EXPECT_EQ(to_decimal(Rational(2, 3), 4), "0.6666");
  EXPECT_EQ(to_decimal(Rational(7, 2), 0), "3");
  EXPECT_EQ(to_decimal(Rational(1), 3), "1.000");
}

}  // namespace
}  // namespace pathword
