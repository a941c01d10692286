#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lfam/correlation.hpp"
#include "lfam/legendre.hpp"
#include "lfam/ndarray.hpp"

namespace lfam {

/// One 2n-dimensional member of the family generated by an n-dimensional Legendre array A.
///
/// Member m has entries A[i_0..i_{n-1}] * A[(i_n - m i_0) mod p, ..., (i_{2n-1} - m i_{n-1}) mod p].
/// `multiplier` is the shear coefficient actually applied, (p - m) mod p; with this labelling
/// the printed p = 3, n = 2 members S_1 and S_2 are reproduced cell for cell.
struct FamilyMember {
  std::uint32_t m = 0;
  std::uint32_t multiplier = 0;
  TernaryArray arr;
  std::optional<LegendreParams> params;
};

struct ArrayFamily {
  std::vector<FamilyMember> members;
  std::optional<LegendreParams> params;

  std::size_t size() const noexcept { return members.size(); }
  const FamilyMember& operator[](std::size_t m) const { return members.at(m); }
};

namespace detail {

inline std::size_t cube_extent(const TernaryArray& a) {
  const std::size_t p = a.dims().front();
  for (auto d : a.dims())
    if (d != p) throw std::invalid_argument("family: generating array must have equal extents");
  if (2 * a.rank() > kMaxRank) throw std::invalid_argument("family: generating array rank too large");
  return p;
}

}  // namespace detail

/// Sheared product with an explicit multiplier: A[f] * A[(multiplier f + s) mod p].
inline TernaryArray sheared_product(const TernaryArray& a, std::uint64_t multiplier) {
  const std::size_t p = detail::cube_extent(a);
  const std::size_t n = a.rank();
  TernaryArray out(std::vector<std::size_t>(2 * n, p));
  const std::size_t half = a.size();
  Index f(n, 0);
  std::size_t fl = 0;
  do {
    const std::int8_t af = a[fl];
    std::size_t base = fl * half;
    if (af == 0) {
      ++fl;
      continue;  // whole block stays zero
    }
    // shifted origin of the second factor
    Index g(n);
    for (std::size_t k = 0; k < n; ++k) g[k] = static_cast<std::size_t>(multiplier % p * f[k] % p);
    Index s(n, 0);
    std::size_t sl = 0;
    do {
      std::size_t j = 0;
      for (std::size_t k = 0; k < n; ++k) {
        std::size_t v = g[k] + s[k];
        if (v >= p) v -= p;
        j = j * p + v;
      }
      out[base + sl] = static_cast<std::int8_t>(af * a[j]);
      ++sl;
    } while (next_index(s, a.dims()));
    ++fl;
  } while (next_index(f, a.dims()));
  return out;
}

inline FamilyMember build_member(const TernaryArray& a, std::uint32_t m) {
  const std::size_t p = detail::cube_extent(a);
  if (m >= p) throw std::invalid_argument("build_member: m=" + std::to_string(m) + " outside [0, " +
                                          std::to_string(p) + ")");
  const auto multiplier = static_cast<std::uint32_t>((p - m) % p);
  return FamilyMember{m, multiplier, sheared_product(a, multiplier), std::nullopt};
}

inline FamilyMember build_member(const LegendreParams& params, std::uint32_t m) {
  auto member = build_member(legendre_array(params), m);
  member.params = params;
  return member;
}

inline ArrayFamily build_family(const TernaryArray& a) {
  const std::size_t p = detail::cube_extent(a);
  ArrayFamily fam;
  fam.members.resize(p);
  detail::parallel_chunks(p, [&](std::size_t b, std::size_t e) {
    for (std::size_t m = b; m < e; ++m) fam.members[m] = build_member(a, static_cast<std::uint32_t>(m));
  });
  return fam;
}

inline ArrayFamily build_family(const LegendreParams& params) {
  ArrayFamily fam = build_family(legendre_array(params));
  fam.params = params;
  for (auto& member : fam.members) member.params = params;
  return fam;
}

/// True iff every off-peak periodic autocorrelation is exactly zero.
template <class T>
bool is_perfect(const NdArray<T>& arr) {
  const IntArray theta = full_correlation(arr, arr);
  return std::all_of(theta.data().begin() + 1, theta.data().end(), [](std::int64_t v) { return v == 0; });
}

/// First off-peak shift with nonzero autocorrelation, if any.
template <class T>
std::optional<std::size_t> first_imperfect_shift(const NdArray<T>& arr) {
  const IntArray theta = full_correlation(arr, arr);
  for (std::size_t s = 1; s < theta.size(); ++s)
    if (theta[s] != 0) return s;
  return std::nullopt;
}

/// S[i][j] = a[j] * c[(i + j) mod n] for perfect sequences a and c of equal length.
inline IntArray circulant_from_perfect(std::span<const std::int64_t> a_seq, std::span<const std::int64_t> c_seq) {
  if (a_seq.empty() || a_seq.size() != c_seq.size())
    throw std::invalid_argument("circulant_from_perfect: sequences must be non-empty and of equal length");
  const std::size_t n = a_seq.size();
  auto check = [n](std::span<const std::int64_t> seq, const char* name) {
    const IntArray s({n}, std::vector<std::int64_t>(seq.begin(), seq.end()));
    if (auto bad = first_imperfect_shift(s)) {
      throw std::invalid_argument(std::string("circulant_from_perfect: sequence ") + name +
                                  " is not perfect: autocorrelation at shift " + std::to_string(*bad) + " is " +
                                  std::to_string(cross_correlation_at(s, s, {static_cast<std::int64_t>(*bad)})));
    }
  };
  check(a_seq, "a");
  check(c_seq, "c");
  IntArray out({n, n});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i * n + j] = a_seq[j] * c_seq[(i + j) % n];
  return out;
}

inline IntArray circulant_from_perfect(std::initializer_list<std::int64_t> a, std::initializer_list<std::int64_t> c) {
  return circulant_from_perfect(std::span<const std::int64_t>(a.begin(), a.size()),
                                std::span<const std::int64_t>(c.begin(), c.size()));
}

}  // namespace lfam
