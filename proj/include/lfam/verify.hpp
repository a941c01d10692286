#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "lfam/correlation.hpp"
#include "lfam/family.hpp"

namespace lfam {

using Rational = boost::multiprecision::cpp_rational;

enum class ReportKind { autocorrelation, crosscorrelation };

struct CorrelationReport {
  ReportKind kind = ReportKind::autocorrelation;
  std::uint32_t m1 = 0;
  std::uint32_t m2 = 0;
  std::int64_t peak_value = 0;  // theta at the zero shift
  std::vector<Index> peak_shifts;  // off-peak shifts attaining off_peak_max_abs
  std::int64_t off_peak_max_abs = 0;  // cross reports: max |theta| over all shifts
  std::map<std::int64_t, std::size_t> value_histogram;  // off-peak values (auto) or all values (cross)
  std::int64_t bound = 0;
  bool passed = false;
  bool bound_attained = false;
  /// Whether the observed value set equals the set the bound proofs derive:
  /// {1, 1 - p^n} for autocorrelation, {1 - p^n, 1, p^n + 1} for cross-correlation.
  bool matches_expected_values = false;
  bool involves_m0 = false;  // m = 0 is the separable member A (x) A

  std::set<std::int64_t> values() const {
    std::set<std::int64_t> out;
    for (const auto& [v, c] : value_histogram) out.insert(v);
    return out;
  }
};

namespace detail {

inline std::int64_t member_field_size(const FamilyMember& member) {
  const std::size_t rank = member.arr.rank();
  if (rank % 2 != 0) throw std::invalid_argument("verify: member rank must be even");
  std::int64_t q = 1;
  for (std::size_t k = 0; k < rank / 2; ++k) q *= static_cast<std::int64_t>(member.arr.dims()[k]);
  return q;
}

inline void summarize(const IntArray& theta, bool skip_origin, CorrelationReport& r) {
  for (std::size_t s = skip_origin ? 1 : 0; s < theta.size(); ++s) {
    const auto v = theta[s];
    ++r.value_histogram[v];
    const auto a = v < 0 ? -v : v;
    if (a > r.off_peak_max_abs) {
      r.off_peak_max_abs = a;
      r.peak_shifts.clear();
    }
    if (a == r.off_peak_max_abs) r.peak_shifts.push_back(theta.multi_index(s));
  }
}

}  // namespace detail

/// Off-peak |theta_{S_m}| <= p^n - 1 for a member generated from an a = 0 Legendre array.
inline CorrelationReport verify_theorem1(const FamilyMember& member, CorrelationMethod method = CorrelationMethod::naive) {
  const std::int64_t q = detail::member_field_size(member);
  const IntArray theta = correlate(member.arr, member.arr, method);
  CorrelationReport r;
  r.kind = ReportKind::autocorrelation;
  r.m1 = r.m2 = member.m;
  r.involves_m0 = member.m == 0;
  r.peak_value = theta[0];
  r.bound = q - 1;
  detail::summarize(theta, true, r);
  r.passed = r.off_peak_max_abs <= r.bound;
  r.bound_attained = r.off_peak_max_abs == r.bound;
  r.matches_expected_values = r.values() == std::set<std::int64_t>{1, 1 - q};
  return r;
}

/// |theta_{S_m1,S_m2}| <= p^n + 1 over every shift, for distinct members.
inline CorrelationReport verify_theorem2(const FamilyMember& a, const FamilyMember& b,
                                         CorrelationMethod method = CorrelationMethod::naive) {
  if (a.m == b.m) throw std::invalid_argument("verify_theorem2: members must be distinct (both m=" +
                                              std::to_string(a.m) + ")");
  if (a.arr.dims() != b.arr.dims()) throw std::invalid_argument("verify_theorem2: members from different families");
  const std::int64_t q = detail::member_field_size(a);
  const IntArray theta = correlate(a.arr, b.arr, method);
  CorrelationReport r;
  r.kind = ReportKind::crosscorrelation;
  r.m1 = a.m;
  r.m2 = b.m;
  r.involves_m0 = a.m == 0 || b.m == 0;
  r.peak_value = theta[0];
  r.bound = q + 1;
  detail::summarize(theta, false, r);
  r.passed = r.off_peak_max_abs <= r.bound;
  r.bound_attained = r.off_peak_max_abs == r.bound;
  r.matches_expected_values = r.values() == std::set<std::int64_t>{1 - q, 1, q + 1};
  return r;
}

/// Family bound-to-peak ratio against the Welch figure p^n / p^2n, exactly.
struct WelchMetrics {
  std::uint64_t p = 0;
  unsigned n = 0;
  Rational nonzero_count;  // p^2n - 2p^n + 1
  Rational cross_bound;  // p^n + 1
  Rational bound_to_peak_ratio;  // (p^n + 1) / nonzero_count
  Rational welch_ratio;  // p^n / p^2n
  Rational relative_difference;  // bound_to_peak_ratio / welch_ratio - 1

  /// "10/64"-style unreduced (p^n+1)/(p^n-1)^2
  std::string bound_to_peak_unreduced() const {
    return cross_bound.str() + "/" + nonzero_count.str();
  }
  std::string welch_unreduced() const {
    const Rational q = field_size();
    return q.str() + "/" + Rational(q * q).str();
  }
  Rational field_size() const {
    Rational q = 1;
    for (unsigned k = 0; k < n; ++k) q *= p;
    return q;
  }
};

inline std::string to_fraction(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline WelchMetrics welch_metrics(std::uint64_t p, unsigned n) {
  const PrimeModulus pm(p);
  if (n < 1) throw std::invalid_argument("welch_metrics: n must be >= 1");
  WelchMetrics w;
  w.p = pm.value();
  w.n = n;
  const Rational q = w.field_size();
  w.nonzero_count = q * q - 2 * q + 1;
  w.cross_bound = q + 1;
  w.bound_to_peak_ratio = w.cross_bound / w.nonzero_count;
  w.welch_ratio = q / (q * q);
  w.relative_difference = w.bound_to_peak_ratio / w.welch_ratio - 1;
  return w;
}

struct FamilyVerification {
  std::vector<CorrelationReport> theorem1;
  std::vector<CorrelationReport> theorem2;
  WelchMetrics welch;
  bool passed = false;
};

/// Auto bound for every member, cross bound for every unordered pair m1 < m2.
inline FamilyVerification verify_family(const ArrayFamily& fam, CorrelationMethod method = CorrelationMethod::naive,
                                        bool skip_m0 = false) {
  if (fam.members.empty()) throw std::invalid_argument("verify_family: empty family");
  FamilyVerification out;
  std::vector<const FamilyMember*> members;
  for (const auto& m : fam.members)
    if (!(skip_m0 && m.m == 0)) members.push_back(&m);
  out.theorem1.resize(members.size());
  detail::parallel_chunks(members.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) out.theorem1[i] = verify_theorem1(*members[i], method);
  });
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j) pairs.emplace_back(i, j);
  out.theorem2.resize(pairs.size());
  detail::parallel_chunks(pairs.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t k = b; k < e; ++k)
      out.theorem2[k] = verify_theorem2(*members[pairs[k].first], *members[pairs[k].second], method);
  });
  const auto& dims = fam.members.front().arr.dims();
  out.welch = welch_metrics(dims.front(), static_cast<unsigned>(dims.size() / 2));
  out.passed = std::all_of(out.theorem1.begin(), out.theorem1.end(), [](const auto& r) { return r.passed; }) &&
               std::all_of(out.theorem2.begin(), out.theorem2.end(), [](const auto& r) { return r.passed; });
  return out;
}

}  // namespace lfam
