#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lfam {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

// Deterministic trial division; fine for everything below 2^40 or so.
constexpr bool is_prime(u64 u) noexcept {
  if (u < 2) return false;
  if (u < 4) return true;
  if (u % 2 == 0 || u % 3 == 0) return false;
  for (u64 d = 5; d <= u / d; d += 6) {
    if (u % d == 0 || u % (d + 2) == 0) return false;
  }
  return true;
}

/// Prime factors of u with multiplicity, ascending.
inline std::vector<u64> factorize(u64 u) {
  if (u < 2) throw std::invalid_argument("factorize: argument must be >= 2, got " + std::to_string(u));
  std::vector<u64> out;
  for (u64 d = 2; d <= u / d; d += (d == 2 ? 1 : 2)) {
    while (u % d == 0) {
      out.push_back(d);
      u /= d;
    }
  }
  if (u > 1) out.push_back(u);
  return out;
}

/// Exact integer power; throws if the result leaves the u64 range.
inline u64 checked_pow(u64 base, unsigned exp) {
  u64 r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && r > std::numeric_limits<u64>::max() / base)
      throw std::overflow_error("checked_pow: " + std::to_string(base) + "^" + std::to_string(exp) +
                                " overflows 64 bits");
    r *= base;
  }
  return r;
}

/// An odd prime modulus.
class PrimeModulus {
 public:
  explicit PrimeModulus(u64 p) : p_(static_cast<u32>(p)) {
    if (p < 3 || p > std::numeric_limits<u32>::max() || !is_prime(p))
      throw std::invalid_argument("modulus must be an odd prime below 2^32, got " + std::to_string(p));
  }
  constexpr u32 value() const noexcept { return p_; }
  constexpr operator u32() const noexcept { return p_; }
  friend constexpr bool operator==(PrimeModulus, PrimeModulus) = default;

 private:
  u32 p_;
};

/// { k^2 mod p : 1 <= k < p }.
inline std::set<u32> quadratic_residues(PrimeModulus p) {
  std::set<u32> out;
  for (u64 k = 1; k < p.value(); ++k) out.insert(static_cast<u32>(k * k % p.value()));
  return out;
}

/// Polynomial over GF(p); coeffs[j] is the coefficient of x^j. Always trimmed so the
/// leading coefficient is nonzero (the zero polynomial has no coefficients).
class Poly {
 public:
  Poly(std::vector<u64> coeffs, PrimeModulus p) : p_(p) {
    coeffs_.reserve(coeffs.size());
    for (u64 c : coeffs) coeffs_.push_back(static_cast<u32>(c % p.value()));
    trim();
  }
  Poly(std::vector<std::int64_t> coeffs, PrimeModulus p) : p_(p) {
    coeffs_.reserve(coeffs.size());
    const auto P = static_cast<std::int64_t>(p.value());
    for (auto c : coeffs) coeffs_.push_back(static_cast<u32>(((c % P) + P) % P));
    trim();
  }

  static Poly monomial(unsigned degree, PrimeModulus p) {
    std::vector<u64> c(degree + 1, 0);
    c.back() = 1;
    return Poly(std::move(c), p);
  }

  PrimeModulus modulus() const noexcept { return p_; }
  const std::vector<u32>& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_monic() const noexcept { return !coeffs_.empty() && coeffs_.back() == 1; }
  u32 coeff(std::size_t j) const noexcept { return j < coeffs_.size() ? coeffs_[j] : 0u; }

  /// x^deg * f(1/x), scaled to be monic. Requires a nonzero constant term.
  Poly reciprocal() const {
    if (coeffs_.empty() || coeffs_.front() == 0)
      throw std::invalid_argument("reciprocal: polynomial needs a nonzero constant term");
    std::vector<u64> rev(coeffs_.rbegin(), coeffs_.rend());
    const u64 inv = inverse_mod(rev.back(), p_.value());
    for (auto& c : rev) c = c * inv % p_.value();
    return Poly(std::move(rev), p_);
  }

  /// "c0,c1,...,cn", constant term first.
  std::string to_string() const {
    std::ostringstream os;
    for (std::size_t j = 0; j < coeffs_.size(); ++j) os << (j ? "," : "") << coeffs_[j];
    return coeffs_.empty() ? "0" : os.str();
  }

  /// Human form, e.g. "x^2+4x+2".
  std::string pretty() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t j = coeffs_.size(); j-- > 0;) {
      const u32 c = coeffs_[j];
      if (c == 0) continue;
      if (!first) os << '+';
      first = false;
      if (c != 1 || j == 0) os << c;
      if (j >= 1) os << 'x';
      if (j >= 2) os << '^' << j;
    }
    return os.str();
  }

  friend bool operator==(const Poly&, const Poly&) = default;

  static u64 inverse_mod(u64 a, u64 p) {
    // p prime: a^(p-2)
    u64 r = 1, b = a % p, e = p - 2;
    while (e) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return r;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<u32> coeffs_;
  PrimeModulus p_;
};

/// Parses "2,4,1" (constant term first) into x^2+4x+2.
inline Poly parse_poly(std::string_view text, PrimeModulus p) {
  std::vector<std::int64_t> coeffs;
  std::string item;
  std::istringstream is{std::string(text)};
  while (std::getline(is, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw std::invalid_argument("parse_poly: empty coefficient in '" + std::string(text) + "'");
    const std::string tok = item.substr(b, e - b + 1);
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) throw std::invalid_argument("parse_poly: bad coefficient '" + tok + "'");
    coeffs.push_back(v);
  }
  if (coeffs.empty()) throw std::invalid_argument("parse_poly: no coefficients");
  return Poly(std::move(coeffs), p);
}

/// Element of GF(p^n): coeffs[j] is the coefficient of alpha^j, length exactly n.
struct FieldElement {
  std::vector<u32> coeffs;

  bool is_zero() const noexcept {
    return std::all_of(coeffs.begin(), coeffs.end(), [](u32 c) { return c == 0; });
  }
  friend bool operator==(const FieldElement&, const FieldElement&) = default;
  friend auto operator<=>(const FieldElement&, const FieldElement&) = default;
};

namespace detail {

// a*b mod (modulus, p); a and b have fewer than deg(modulus) coefficients, modulus monic.
inline std::vector<u32> mul_mod(const std::vector<u32>& a, const std::vector<u32>& b,
                                const std::vector<u32>& modulus, u64 p) {
  const std::size_t n = modulus.size() - 1;
  std::vector<u64> prod(2 * n, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] = (prod[i + j] + u64{a[i]} * b[j]) % p;
  }
  for (std::size_t d = prod.size(); d-- > n;) {
    const u64 c = prod[d];
    if (c == 0) continue;
    // x^d = x^(d-n) * x^n and x^n = -(m_0 + ... + m_{n-1} x^{n-1})
    for (std::size_t k = 0; k <= n; ++k) prod[d - n + k] = (prod[d - n + k] + (p - c) * modulus[k]) % p;
  }
  std::vector<u32> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = static_cast<u32>(prod[k]);
  return out;
}

inline std::vector<u32> pow_x_mod(u64 e, const std::vector<u32>& modulus, u64 p) {
  const std::size_t n = modulus.size() - 1;
  std::vector<u32> result(n, 0), base(n, 0);
  result[0] = 1;
  if (n == 1) {
    base[0] = static_cast<u32>((p - modulus[0]) % p);  // x = -m_0 mod (x + m_0)
  } else {
    base[1] = 1;
  }
  while (e) {
    if (e & 1) result = mul_mod(result, base, modulus, p);
    base = mul_mod(base, base, modulus, p);
    e >>= 1;
  }
  return result;
}

inline bool is_one(const std::vector<u32>& v) {
  if (v.empty() || v[0] != 1) return false;
  return std::all_of(v.begin() + 1, v.end(), [](u32 c) { return c == 0; });
}

}  // namespace detail

/// True iff x has multiplicative order exactly p^n - 1 modulo poly.
inline bool is_primitive(const Poly& poly, PrimeModulus p, unsigned n) {
  if (n == 0) throw std::invalid_argument("is_primitive: degree must be >= 1");
  if (!(poly.modulus() == p)) throw std::invalid_argument("is_primitive: polynomial is over a different prime");
  if (poly.degree() != static_cast<int>(n))
    throw std::invalid_argument("is_primitive: expected degree " + std::to_string(n) + ", got " +
                                std::to_string(poly.degree()));
  if (!poly.is_monic()) throw std::invalid_argument("is_primitive: polynomial must be monic");
  if (poly.coeff(0) == 0) return false;
  const u64 order = checked_pow(p.value(), n) - 1;
  if (order == 1) return true;  // unreachable for odd p, kept for completeness of the test
  const auto& m = poly.coeffs();
  if (!detail::is_one(detail::pow_x_mod(order, m, p.value()))) return false;
  std::vector<u64> primes = factorize(order);
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  for (u64 q : primes) {
    if (detail::is_one(detail::pow_x_mod(order / q, m, p.value()))) return false;
  }
  return true;
}

/// Smallest monic primitive polynomial of degree n, ordering candidates lexicographically
/// on (c_0, ..., c_{n-1}).
inline Poly find_primitive_poly(PrimeModulus p, unsigned n) {
  if (n == 0) throw std::invalid_argument("find_primitive_poly: degree must be >= 1");
  (void)checked_pow(p.value(), n);
  std::vector<u64> c(n + 1, 0);
  c[n] = 1;
  c[0] = 1;  // c_0 = 0 is never primitive
  for (;;) {
    Poly cand(c, p);
    if (is_primitive(cand, p, n)) return cand;
    std::size_t k = n;
    while (k-- > 0) {
      if (++c[k] < p.value()) break;
      c[k] = 0;
    }
    if (k == static_cast<std::size_t>(-1) || c[0] == 0)
      throw std::logic_error("find_primitive_poly: exhausted candidates");  // cannot happen for prime p
  }
}

/// GF(p^n) with alpha a root of a primitive modulus.
class ExtFieldCtx {
 public:
  static constexpr u64 kCacheLimit = u64{1} << 22;

  ExtFieldCtx(PrimeModulus p, unsigned n, Poly modulus) : p_(p), n_(n), modulus_(std::move(modulus)) {
    if (!is_primitive(modulus_, p_, n_))
      throw std::invalid_argument("ExtFieldCtx: " + modulus_.pretty() + " is not primitive over GF(" +
                                  std::to_string(p_.value()) + ")");
    const u64 size = checked_pow(p_.value(), n_);
    if (size > (u64{1} << 62)) throw std::overflow_error("ExtFieldCtx: field too large");
    order_ = size - 1;
    if (size <= kCacheLimit) build_table();
  }

  PrimeModulus p() const noexcept { return p_; }
  unsigned n() const noexcept { return n_; }
  const Poly& modulus() const noexcept { return modulus_; }
  /// p^n - 1
  u64 order() const noexcept { return order_; }
  bool cached() const noexcept { return !table_.empty(); }

  FieldElement alpha_power(u64 i) const {
    if (i >= order_)
      throw std::out_of_range("alpha_power: exponent " + std::to_string(i) + " outside [0, " +
                              std::to_string(order_) + ")");
    if (cached()) {
      auto first = table_.begin() + static_cast<std::ptrdiff_t>(i * n_);
      return FieldElement{std::vector<u32>(first, first + n_)};
    }
    return FieldElement{detail::pow_x_mod(i, modulus_.coeffs(), p_.value())};
  }

  /// Calls f(i, coeffs) for every i in [0, p^n - 1) in order, with coeffs the
  /// little-endian coefficient vector of alpha^i.
  template <class F>
  void for_each_power(F&& f) const {
    std::vector<u32> x(n_, 0), alpha(n_, 0);
    x[0] = 1;
    if (n_ == 1) {
      alpha[0] = static_cast<u32>((p_.value() - modulus_.coeff(0)) % p_.value());
    } else {
      alpha[1] = 1;
    }
    for (u64 i = 0; i < order_; ++i) {
      f(i, static_cast<const std::vector<u32>&>(x));
      x = detail::mul_mod(x, alpha, modulus_.coeffs(), p_.value());
    }
  }

 private:
  void build_table() {
    table_.resize(order_ * n_);
    for_each_power([this](u64 i, const std::vector<u32>& x) {
      std::copy(x.begin(), x.end(), table_.begin() + static_cast<std::ptrdiff_t>(i * n_));
    });
  }

  PrimeModulus p_;
  unsigned n_;
  Poly modulus_;
  u64 order_ = 0;
  std::vector<u32> table_;
};

/// Product of two field elements given as polynomials of degree < n.
inline FieldElement poly_mul_mod(const Poly& a, const Poly& b, const ExtFieldCtx& ctx) {
  const int n = static_cast<int>(ctx.n());
  if (a.degree() >= n || b.degree() >= n)
    throw std::invalid_argument("poly_mul_mod: operands must have degree < " + std::to_string(n));
  if (!(a.modulus() == ctx.p()) || !(b.modulus() == ctx.p()))
    throw std::invalid_argument("poly_mul_mod: operands are over a different prime");
  if (a.is_zero() || b.is_zero()) return FieldElement{std::vector<u32>(ctx.n(), 0)};
  return FieldElement{detail::mul_mod(a.coeffs(), b.coeffs(), ctx.modulus().coeffs(), ctx.p().value())};
}

inline FieldElement alpha_power_coeffs(const ExtFieldCtx& ctx, u64 i) { return ctx.alpha_power(i); }

}  // namespace lfam
