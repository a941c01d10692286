#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "golden.hpp"
#include "lfam/correlation.hpp"
#include "lfam/verify.hpp"
#include "oracles.hpp"

using namespace lfam;

namespace {

ArrayFamily family(std::uint64_t p, unsigned n, const char* poly = nullptr) {
  std::optional<Poly> f;
  if (poly) f = parse_poly(poly, PrimeModulus(p));
  return build_family(LegendreParams::make(p, n, 0, f));
}

}  // namespace

TEST(Correlation, PublishedTables) {
  const TernaryArray s1(golden::kS1_dims, golden::kS1);
  const TernaryArray s2(golden::kS2_dims, golden::kS2);
  const IntArray t1(golden::kThetaS1_dims, golden::kThetaS1);
  const IntArray t2(golden::kThetaS2_dims, golden::kThetaS2);
  const IntArray t12(golden::kThetaS1S2_dims, golden::kThetaS1S2);
  for (auto method : {CorrelationMethod::naive, CorrelationMethod::fast}) {
    EXPECT_EQ(correlate(s1, s1, method), t1);
    EXPECT_EQ(correlate(s2, s2, method), t2);
    EXPECT_EQ(correlate(s1, s2, method), t12);
  }
  EXPECT_EQ(t1.at({0, 0, 0, 0}), 64);
  EXPECT_EQ(t12.at({1, 0, 0, 0}), 10);
  EXPECT_EQ(cross_correlation_at(s1, s2, {1, 0, 0, 0}), 10);
  EXPECT_EQ(cross_correlation_at(s1, s1, {0, 0, 0, 0}), 64);
}

TEST(Correlation, MatchesDefinitionOracle) {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 40; ++t) {
    const auto dims = oracle::random_dims(rng, 4, 5);
    const auto a = oracle::random_ternary(rng, dims);
    const auto b = oracle::random_ternary(rng, dims);
    const auto expect = oracle::correlation(a, b);
    ASSERT_EQ(full_correlation(a, b), expect);
    ASSERT_EQ(full_correlation_fast(a, b), expect);
  }
}

TEST(Correlation, FastEqualsNaiveOnRandomPairs) {
  std::mt19937_64 rng(20240611);
  for (int t = 0; t < 100; ++t) {
    const auto dims = oracle::random_dims(rng, 4, 9);
    const auto a = oracle::random_ternary(rng, dims);
    const auto b = oracle::random_ternary(rng, dims);
    ASSERT_EQ(full_correlation_fast(a, b), full_correlation(a, b)) << "trial " << t;
  }
}

TEST(Correlation, ZeroArrayGivesZeroTable) {
  const TernaryArray z({3, 4, 2});
  std::mt19937_64 rng(1);
  const auto b = oracle::random_ternary(rng, {3, 4, 2});
  for (auto method : {CorrelationMethod::naive, CorrelationMethod::fast}) {
    const auto t = correlate(z, b, method);
    EXPECT_TRUE(std::all_of(t.data().begin(), t.data().end(), [](auto v) { return v == 0; }));
  }
}

TEST(Correlation, SymmetryAndShiftSum) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 30; ++t) {
    const auto dims = oracle::random_dims(rng, 4, 6);
    const auto a = oracle::random_ternary(rng, dims);
    const auto b = oracle::random_ternary(rng, dims);
    const auto ab = full_correlation(a, b);
    const auto ba = full_correlation(b, a);
    for (std::size_t s = 0; s < ab.size(); ++s) {
      const Index idx = ab.multi_index(s);
      Shift neg(idx.size());
      for (std::size_t k = 0; k < idx.size(); ++k) neg[k] = -static_cast<std::int64_t>(idx[k]);
      ASSERT_EQ(ab[s], ba.cyclic_get(neg));
    }
    const auto total = std::accumulate(ab.data().begin(), ab.data().end(), std::int64_t{0});
    const auto sa = std::accumulate(a.data().begin(), a.data().end(), std::int64_t{0});
    const auto sb = std::accumulate(b.data().begin(), b.data().end(), std::int64_t{0});
    ASSERT_EQ(total, sa * sb);
  }
}

TEST(Correlation, ShapeMismatchRejected) {
  EXPECT_THROW(full_correlation(TernaryArray({3, 3}), TernaryArray({9})), std::invalid_argument);
  EXPECT_THROW(full_correlation_fast(TernaryArray({3, 3}), TernaryArray({3, 4})), std::invalid_argument);
}

TEST(Correlation, PrecisionGuard) {
  std::mt19937_64 rng(5);
  IntArray big({8, 8}), moderate({8, 8});
  std::uniform_int_distribution<std::int64_t> d(-100'000'000LL, 100'000'000LL), e(-1000, 1000);
  for (auto& v : big.data()) v = d(rng);
  for (auto& v : moderate.data()) v = e(rng);
  big[0] = 100'000'000LL;
  EXPECT_THROW(full_correlation_fast(big, big), PrecisionError);
  EXPECT_NO_THROW(full_correlation(big, big));
  EXPECT_EQ(full_correlation_fast(moderate, moderate), full_correlation(moderate, moderate));
  const TernaryArray huge({4097, 4097});
  EXPECT_THROW(full_correlation_fast(huge, huge), PrecisionError);
}

TEST(Theorems, PublishedFamilyReports) {
  const auto fam = family(3, 2, "2,2,1");
  for (const auto& member : fam.members) {
    const auto r = verify_theorem1(member);
    EXPECT_TRUE(r.passed);
    EXPECT_EQ(r.bound, 8);
    EXPECT_EQ(r.peak_value, 64);
    EXPECT_EQ(r.values(), (std::set<std::int64_t>{1, -8}));
    EXPECT_TRUE(r.bound_attained);
    EXPECT_TRUE(r.matches_expected_values);
  }
  const auto r12 = verify_theorem2(fam[1], fam[2]);
  EXPECT_TRUE(r12.passed);
  EXPECT_EQ(r12.bound, 10);
  EXPECT_EQ(r12.off_peak_max_abs, 10);
  EXPECT_TRUE(r12.bound_attained);
  EXPECT_EQ(r12.values(), (std::set<std::int64_t>{-8, 1, 10}));
  EXPECT_THROW(verify_theorem2(fam[1], fam[1]), std::invalid_argument);
}

TEST(Theorems, FamilyVerificationSmallCases) {
  for (auto [p, n] : std::vector<std::pair<std::uint64_t, unsigned>>{{3, 1}, {5, 1}, {7, 1}, {3, 2}, {5, 2}}) {
    for (auto method : {CorrelationMethod::naive, CorrelationMethod::fast}) {
      const auto v = verify_family(family(p, n), method);
      EXPECT_TRUE(v.passed) << p << "^" << n;
      EXPECT_EQ(v.theorem1.size(), p);
      EXPECT_EQ(v.theorem2.size(), p * (p - 1) / 2);
      for (const auto& r : v.theorem1) EXPECT_TRUE(r.matches_expected_values);
      const auto q = static_cast<std::int64_t>(std::pow(p, n));
      for (const auto& r : v.theorem2) {
        EXPECT_LE(r.off_peak_max_abs, q + 1);
        if (p != 3 || n != 1) {
          EXPECT_TRUE(r.bound_attained) << p << "^" << n << " " << r.m1 << "," << r.m2;
        }
      }
    }
  }
  const auto skipped = verify_family(family(5, 1), CorrelationMethod::naive, true);
  EXPECT_EQ(skipped.theorem1.size(), 4u);
  EXPECT_EQ(skipped.theorem2.size(), 6u);
}

TEST(Theorems, ThreeByOneCrossValues) {
  const auto fam = family(3, 1);
  const auto r = verify_theorem2(fam[1], fam[2]);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.off_peak_max_abs, 2);
  EXPECT_EQ(r.values(), (std::set<std::int64_t>{-2, 1}));
}

TEST(Welch, PublishedFigures) {
  const auto w = welch_metrics(3, 2);
  EXPECT_EQ(w.bound_to_peak_unreduced(), "10/64");
  EXPECT_EQ(to_fraction(w.bound_to_peak_ratio), "5/32");
  EXPECT_EQ(w.welch_unreduced(), "9/81");
  EXPECT_EQ(to_fraction(w.welch_ratio), "1/9");
  EXPECT_EQ(to_fraction(w.relative_difference), "13/32");
  EXPECT_NEAR(to_double(w.relative_difference) * 100.0, 40.625, 1e-12);
}

TEST(Welch, ClosedFormAndAsymptotics) {
  for (std::uint64_t p : {3, 5, 7, 11, 13, 67}) {
    for (unsigned n = 1; n <= 4; ++n) {
      const auto w = welch_metrics(p, n);
      const Rational q = w.field_size();
      EXPECT_EQ(w.relative_difference, Rational(3 * q - 1) / ((q - 1) * (q - 1)));
    }
  }
  const auto w = welch_metrics(67, 4);
  EXPECT_NEAR(to_double(w.relative_difference), 1.4888e-7, 1e-10);
  EXPECT_NEAR(to_double(w.relative_difference) * to_double(w.field_size()), 3.0, 1e-6);
  EXPECT_THROW(welch_metrics(9, 1), std::invalid_argument);
  EXPECT_THROW(welch_metrics(3, 0), std::invalid_argument);
}
