#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "lfam/finite_field.hpp"
#include "lfam/ndarray.hpp"

namespace lfam {

/// How the primitive polynomial f picks the basis used to index cells.
///
/// `reciprocal`: the generator is a root of the reciprocal polynomial of f (equivalently
/// alpha^-1 for alpha a root of f). This reproduces the published 2-D and 4-D arrays for
/// the polynomials quoted alongside them. `direct`: the generator is a root of f itself.
enum class BasisConvention { reciprocal, direct };

inline std::string_view to_string(BasisConvention c) {
  return c == BasisConvention::reciprocal ? "reciprocal" : "direct";
}

inline BasisConvention parse_basis_convention(std::string_view s) {
  if (s == "reciprocal") return BasisConvention::reciprocal;
  if (s == "direct") return BasisConvention::direct;
  throw std::invalid_argument("unknown basis convention '" + std::string(s) + "'");
}

struct LegendreParams {
  PrimeModulus p;
  unsigned n = 1;
  int a = 0;
  Poly poly;
  BasisConvention convention = BasisConvention::reciprocal;

  /// Validates everything; a missing poly is filled in with find_primitive_poly.
  static LegendreParams make(std::uint64_t p, unsigned n, int a = 0, std::optional<Poly> poly = std::nullopt,
                             BasisConvention convention = BasisConvention::reciprocal) {
    const PrimeModulus pm(p);
    if (n < 1) throw std::invalid_argument("Legendre array dimension must be >= 1");
    if (2 * n > kMaxRank)
      throw std::invalid_argument("dimension n=" + std::to_string(n) + " exceeds the supported maximum of " +
                                  std::to_string(kMaxRank / 2));
    if (a < -1 || a > 1) throw std::invalid_argument("origin value a must be -1, 0 or 1");
    Poly f = poly ? *poly : find_primitive_poly(pm, n);
    if (!(f.modulus() == pm)) throw std::invalid_argument("polynomial is over a different prime");
    if (!is_primitive(f, pm, n))
      throw std::invalid_argument(f.pretty() + " is not primitive over GF(" + std::to_string(p) + "^" +
                                  std::to_string(n) + ")");
    return LegendreParams{pm, n, a, std::move(f), convention};
  }

  std::uint64_t field_size() const { return checked_pow(p.value(), n); }
};

/// s_0 = a, s_k = +1 for quadratic residues k, -1 otherwise.
inline TernaryArray legendre_sequence(std::uint64_t p, int a = 0) {
  const PrimeModulus pm(p);
  if (a < -1 || a > 1) throw std::invalid_argument("origin value a must be -1, 0 or 1");
  const auto qr = quadratic_residues(pm);
  TernaryArray s({pm.value()});
  s[0] = static_cast<std::int8_t>(a);
  for (std::size_t k = 1; k < pm.value(); ++k) s[k] = qr.contains(static_cast<u32>(k)) ? 1 : -1;
  return s;
}

/// p x ... x p array: the cell addressed by the coefficients of g^i (highest power of g
/// first) holds +1 for even i and -1 for odd i; the origin holds a.
inline TernaryArray legendre_array(const LegendreParams& params) {
  if (params.n == 1) return legendre_sequence(params.p.value(), params.a);

  const Poly modulus = params.convention == BasisConvention::reciprocal ? params.poly.reciprocal() : params.poly;
  const ExtFieldCtx ctx(params.p, params.n, modulus);
  TernaryArray out(std::vector<std::size_t>(params.n, params.p.value()));
  const auto& strides = out.strides();
  ctx.for_each_power([&](u64 i, const std::vector<u32>& c) {
    std::size_t linear = 0;
    for (std::size_t k = 0; k < c.size(); ++k) linear += c[c.size() - 1 - k] * strides[k];
    out[linear] = (i % 2 == 0) ? 1 : -1;
  });
  out[0] = static_cast<std::int8_t>(params.a);
  return out;
}

}  // namespace lfam
