#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "lfam/finite_field.hpp"
#include "oracles.hpp"

using namespace lfam;

TEST(IsPrime, SmallValues) {
  EXPECT_TRUE(is_prime(17));
  EXPECT_FALSE(is_prime(1));
  EXPECT_TRUE(is_prime(67));
  EXPECT_FALSE(is_prime(0));
  EXPECT_TRUE(is_prime(2));
  EXPECT_FALSE(is_prime(91));
  EXPECT_TRUE(is_prime(4294967291ull));  // largest prime below 2^32
}

TEST(IsPrime, AgreesWithSieve) {
  std::vector<bool> sieve(5000, true);
  sieve[0] = sieve[1] = false;
  for (std::size_t i = 2; i * i < sieve.size(); ++i)
    if (sieve[i])
      for (std::size_t j = i * i; j < sieve.size(); j += i) sieve[j] = false;
  for (std::size_t u = 0; u < sieve.size(); ++u) EXPECT_EQ(is_prime(u), sieve[u]) << u;
}

TEST(PrimeModulus, RejectsNonOddPrimes) {
  EXPECT_THROW(PrimeModulus(2), std::invalid_argument);
  EXPECT_THROW(PrimeModulus(9), std::invalid_argument);
  EXPECT_THROW(PrimeModulus(1), std::invalid_argument);
  EXPECT_EQ(PrimeModulus(7).value(), 7u);
}

TEST(QuadraticResidues, Examples) {
  EXPECT_EQ(quadratic_residues(PrimeModulus(17)), (std::set<u32>{1, 2, 4, 8, 9, 13, 15, 16}));
  EXPECT_EQ(quadratic_residues(PrimeModulus(3)), (std::set<u32>{1}));
  EXPECT_EQ(quadratic_residues(PrimeModulus(7)), (std::set<u32>{1, 2, 4}));
}

TEST(QuadraticResidues, CardinalityAndClosure) {
  for (u64 p = 3; p < 200; ++p) {
    if (!is_prime(p)) continue;
    const auto qr = quadratic_residues(PrimeModulus(p));
    ASSERT_EQ(qr.size(), (p - 1) / 2) << p;
    EXPECT_FALSE(qr.contains(0));
    for (u32 a : qr)
      for (u32 b : qr) ASSERT_TRUE(qr.contains(static_cast<u32>(u64{a} * b % p))) << p;
    const auto ref = oracle::squares(p);
    EXPECT_TRUE(std::equal(qr.begin(), qr.end(), ref.begin(), ref.end()));
  }
}

TEST(Factorize, Examples) {
  EXPECT_EQ(factorize(24), (std::vector<u64>{2, 2, 2, 3}));
  EXPECT_EQ(factorize(80), (std::vector<u64>{2, 2, 2, 2, 5}));
  EXPECT_EQ(factorize(97), (std::vector<u64>{97}));
  EXPECT_THROW(factorize(1), std::invalid_argument);
  EXPECT_THROW(factorize(0), std::invalid_argument);
}

TEST(Factorize, ProductRestoresInput) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<u64> d(2, u64{1} << 40);
  for (int t = 0; t < 200; ++t) {
    const u64 u = d(rng);
    const auto f = factorize(u);
    EXPECT_EQ(std::accumulate(f.begin(), f.end(), u64{1}, std::multiplies<>{}), u);
    for (u64 q : f) EXPECT_TRUE(is_prime(q));
    EXPECT_TRUE(std::is_sorted(f.begin(), f.end()));
  }
  // 67^4 - 1 = 66 * 68 * 4490
  EXPECT_EQ(factorize(67ull * 67 * 67 * 67 - 1), (std::vector<u64>{2, 2, 2, 2, 3, 5, 11, 17, 449}));
}

TEST(Poly, ParseAndPrint) {
  const PrimeModulus p(5);
  const Poly f = parse_poly("2,4,1", p);
  EXPECT_EQ(f.degree(), 2);
  EXPECT_TRUE(f.is_monic());
  EXPECT_EQ(f.pretty(), "x^2+4x+2");
  EXPECT_EQ(f.to_string(), "2,4,1");
  EXPECT_EQ(parse_poly("-1, 1", p).to_string(), "4,1");
  EXPECT_THROW(parse_poly("2,,1", p), std::invalid_argument);
  EXPECT_THROW(parse_poly("2,x", p), std::invalid_argument);
}

TEST(Poly, Reciprocal) {
  const PrimeModulus p5(5), p3(3);
  EXPECT_EQ(parse_poly("2,4,1", p5).reciprocal(), parse_poly("3,2,1", p5));
  EXPECT_EQ(parse_poly("2,0,0,2,1", p3).reciprocal(), parse_poly("2,1,0,0,1", p3));
  EXPECT_THROW(parse_poly("0,1", p3).reciprocal(), std::invalid_argument);
}

TEST(PolyMulMod, Examples) {
  const PrimeModulus p(5);
  const ExtFieldCtx ctx(p, 2, parse_poly("2,4,1", p));
  const Poly alpha = parse_poly("0,1", p);
  EXPECT_EQ(poly_mul_mod(alpha, alpha, ctx).coeffs, (std::vector<u32>{3, 1}));
  const Poly one = parse_poly("1", p);
  const Poly beta = parse_poly("4,3", p);
  EXPECT_EQ(poly_mul_mod(one, beta, ctx).coeffs, (std::vector<u32>{4, 3}));
  EXPECT_EQ(poly_mul_mod(Poly(std::vector<u64>{}, p), beta, ctx).coeffs, (std::vector<u32>{0, 0}));
  EXPECT_THROW(poly_mul_mod(parse_poly("0,0,1", p), beta, ctx), std::invalid_argument);
}

namespace {

std::vector<Poly> all_elements(PrimeModulus p, unsigned n) {
  std::vector<Poly> out;
  std::vector<u64> c(n, 0);
  for (;;) {
    out.emplace_back(c, p);
    std::size_t k = 0;
    while (k < n && ++c[k] == p.value()) c[k++] = 0;
    if (k == n) break;
  }
  return out;
}

Poly to_poly(const FieldElement& e, PrimeModulus p) { return Poly(std::vector<u64>(e.coeffs.begin(), e.coeffs.end()), p); }

}  // namespace

TEST(PolyMulMod, CommutativeAndAssociativeExhaustive) {
  for (auto [pv, n] : std::vector<std::pair<u64, unsigned>>{{3, 2}, {3, 3}, {5, 2}, {3, 4}}) {
    const PrimeModulus p(pv);
    const ExtFieldCtx ctx(p, n, find_primitive_poly(p, n));
    const auto elems = all_elements(p, n);
    for (const auto& a : elems)
      for (const auto& b : elems) ASSERT_EQ(poly_mul_mod(a, b, ctx), poly_mul_mod(b, a, ctx));
    if (elems.size() <= 27) {
      for (const auto& a : elems)
        for (const auto& b : elems)
          for (const auto& c : elems) {
            const auto ab_c = poly_mul_mod(to_poly(poly_mul_mod(a, b, ctx), p), c, ctx);
            const auto a_bc = poly_mul_mod(a, to_poly(poly_mul_mod(b, c, ctx), p), ctx);
            ASSERT_EQ(ab_c, a_bc);
          }
    }
  }
}

TEST(IsPrimitive, PublishedPolynomials) {
  EXPECT_TRUE(is_primitive(parse_poly("2,4,1", PrimeModulus(5)), PrimeModulus(5), 2));
  EXPECT_TRUE(is_primitive(parse_poly("2,0,0,2,1", PrimeModulus(3)), PrimeModulus(3), 4));
  EXPECT_TRUE(is_primitive(parse_poly("2,2,1", PrimeModulus(3)), PrimeModulus(3), 2));
}

TEST(IsPrimitive, RejectsMalformed) {
  const PrimeModulus p(3);
  EXPECT_THROW(is_primitive(parse_poly("2,2,2", p), p, 2), std::invalid_argument);  // not monic
  EXPECT_THROW(is_primitive(parse_poly("2,1", p), p, 2), std::invalid_argument);  // wrong degree
  EXPECT_FALSE(is_primitive(parse_poly("1,0,1", p), p, 2));  // x^2+1: irreducible, order 4
  EXPECT_FALSE(is_primitive(parse_poly("0,1,1", p), p, 2));  // divisible by x
}

TEST(IsPrimitive, AgreesWithBruteForceOrder) {
  for (auto [pv, n] : std::vector<std::pair<u64, unsigned>>{{3, 1}, {5, 1}, {7, 1}, {3, 2}, {5, 2}, {7, 2}, {3, 3}}) {
    const PrimeModulus p(pv);
    const u64 q = checked_pow(pv, n);
    std::vector<u64> c(n + 1, 0);
    c[n] = 1;
    for (;;) {
      const bool expected = oracle::order_of_x(c, pv) == q - 1;
      ASSERT_EQ(is_primitive(Poly(c, p), p, n), expected) << Poly(c, p).pretty();
      std::size_t k = 0;
      while (k < n && ++c[k] == pv) c[k++] = 0;
      if (k == n) break;
    }
  }
}

TEST(FindPrimitivePoly, FrozenBruteForceResults) {
  // first primitive candidate in lexicographic (c_0, ..., c_{n-1}) order, by repeated multiplication
  EXPECT_EQ(find_primitive_poly(PrimeModulus(3), 2).to_string(), "2,1,1");
  EXPECT_EQ(find_primitive_poly(PrimeModulus(5), 1).to_string(), "2,1");  // -2 = 3 is a primitive root mod 5
  EXPECT_EQ(find_primitive_poly(PrimeModulus(3), 1).to_string(), "1,1");
  EXPECT_EQ(find_primitive_poly(PrimeModulus(7), 2).to_string(), "3,1,1");
  EXPECT_EQ(find_primitive_poly(PrimeModulus(3), 3).to_string(), "1,0,2,1");
  EXPECT_EQ(find_primitive_poly(PrimeModulus(3), 4).to_string(), "2,0,0,1,1");
  EXPECT_EQ(find_primitive_poly(PrimeModulus(11), 1).to_string(), "3,1");
}

TEST(FindPrimitivePoly, OrderIsMaximalForSmallFields) {
  for (u64 p = 3; p <= 50; ++p) {
    if (!is_prime(p)) continue;
    for (unsigned n = 1; n <= 4; ++n) {
      const u64 q = checked_pow(p, n);
      if (q > 100000) break;
      const Poly f = find_primitive_poly(PrimeModulus(p), n);
      ASSERT_TRUE(is_primitive(f, PrimeModulus(p), n));
      std::vector<u64> c(f.coeffs().begin(), f.coeffs().end());
      ASSERT_EQ(oracle::order_of_x(c, p), q - 1) << f.pretty() << " over GF(" << p << ")";
    }
  }
}

TEST(AlphaPower, Basics) {
  const PrimeModulus p(5);
  const ExtFieldCtx ctx(p, 2, parse_poly("2,4,1", p));
  EXPECT_EQ(alpha_power_coeffs(ctx, 0).coeffs, (std::vector<u32>{1, 0}));
  EXPECT_EQ(alpha_power_coeffs(ctx, 1).coeffs, (std::vector<u32>{0, 1}));
  EXPECT_EQ(alpha_power_coeffs(ctx, 2).coeffs, (std::vector<u32>{3, 1}));
  EXPECT_THROW(alpha_power_coeffs(ctx, 24), std::out_of_range);
}

TEST(AlphaPower, BijectionOntoNonzeroElements) {
  for (auto [pv, n] : std::vector<std::pair<u64, unsigned>>{{3, 2}, {5, 2}, {3, 4}, {7, 3}, {5, 1}}) {
    const PrimeModulus p(pv);
    const ExtFieldCtx ctx(p, n, find_primitive_poly(p, n));
    std::set<FieldElement> seen;
    for (u64 i = 0; i < ctx.order(); ++i) {
      auto e = alpha_power_coeffs(ctx, i);
      ASSERT_EQ(e.coeffs.size(), n);
      ASSERT_FALSE(e.is_zero());
      seen.insert(std::move(e));
    }
    EXPECT_EQ(seen.size(), ctx.order());
  }
}

TEST(AlphaPower, CachedAndOnDemandAgree) {
  const PrimeModulus p(3);
  const ExtFieldCtx ctx(p, 3, find_primitive_poly(p, 3));
  ASSERT_TRUE(ctx.cached());
  ctx.for_each_power([&](u64 i, const std::vector<u32>& c) {
    ASSERT_EQ(alpha_power_coeffs(ctx, i).coeffs, c);
    ASSERT_EQ(FieldElement{detail::pow_x_mod(i, ctx.modulus().coeffs(), 3)}.coeffs, c);
  });
}

TEST(ExtFieldCtx, RejectsNonPrimitiveModulus) {
  const PrimeModulus p(3);
  EXPECT_THROW(ExtFieldCtx(p, 2, parse_poly("1,0,1", p)), std::invalid_argument);
}
