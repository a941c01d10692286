#pragma once

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "lfam/ndarray.hpp"

namespace lfam {

enum class CorrelationMethod { naive, fast };

/// Raised when the transform path cannot reproduce the integer table within tolerance.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

template <class A, class B>
void require_same_dims(const NdArray<A>& a, const NdArray<B>& b, const char* who) {
  if (a.dims() != b.dims()) throw std::invalid_argument(std::string(who) + ": arrays have different dimensions");
}

// Runs body(begin, end) over [0, count) on up to hardware_concurrency threads.
template <class F>
void parallel_chunks(std::size_t count, F&& body) {
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min<std::size_t>(hw, std::max<std::size_t>(1, count / 64));
  if (workers <= 1) {
    body(std::size_t{0}, count);
    return;
  }
  std::vector<std::jthread> pool;
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t b = w * chunk, e = std::min(count, b + chunk);
    if (b < e) pool.emplace_back([&body, b, e] { body(b, e); });
  }
}

}  // namespace detail

/// theta_{A,B}(s) = sum_i A[i] * B[(i + s) mod dims]
template <class TA, class TB>
std::int64_t cross_correlation_at(const NdArray<TA>& a, const NdArray<TB>& b, std::span<const std::int64_t> shift) {
  detail::require_same_dims(a, b, "cross_correlation_at");
  if (shift.size() != a.rank()) throw std::invalid_argument("cross_correlation_at: shift rank mismatch");
  const auto& dims = a.dims();
  const std::size_t rank = dims.size();
  std::vector<std::vector<std::size_t>> off(rank);
  for (std::size_t k = 0; k < rank; ++k) {
    off[k].resize(dims[k]);
    for (std::size_t i = 0; i < dims[k]; ++i)
      off[k][i] = NdArray<TB>::wrap(static_cast<std::int64_t>(i) + shift[k], dims[k]) * b.strides()[k];
  }
  std::int64_t sum = 0;
  Index idx(rank, 0);
  std::size_t linear = 0;
  do {
    const auto av = static_cast<std::int64_t>(a[linear++]);
    if (av == 0) continue;
    std::size_t j = 0;
    for (std::size_t k = 0; k < rank; ++k) j += off[k][idx[k]];
    sum += av * static_cast<std::int64_t>(b[j]);
  } while (next_index(idx, dims));
  return sum;
}

template <class TA, class TB>
std::int64_t cross_correlation_at(const NdArray<TA>& a, const NdArray<TB>& b, std::initializer_list<std::int64_t> s) {
  return cross_correlation_at(a, b, std::span<const std::int64_t>(s.begin(), s.size()));
}

/// Exact table of theta_{A,B} over every cyclic shift, by direct summation.
template <class TA, class TB>
IntArray full_correlation(const NdArray<TA>& a, const NdArray<TB>& b) {
  detail::require_same_dims(a, b, "full_correlation");
  IntArray out(a.dims());
  detail::parallel_chunks(out.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t s = begin; s < end; ++s) {
      const Index si = out.multi_index(s);
      const Shift shift(si.begin(), si.end());
      out[s] = cross_correlation_at(a, b, shift);
    }
  });
  return out;
}

namespace detail {

inline std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const noexcept { fftw_free(p); }
};
struct FftwPlanFree {
  void operator()(fftw_plan p) const noexcept {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(p);
  }
};
using FftwBuffer = std::unique_ptr<fftw_complex[], FftwFree>;
using FftwPlan = std::unique_ptr<std::remove_pointer_t<fftw_plan>, FftwPlanFree>;

inline FftwBuffer fftw_buffer(std::size_t n) {
  auto* p = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
  if (!p) throw std::bad_alloc();
  return FftwBuffer(p);
}

inline FftwPlan make_plan(const std::vector<int>& dims, fftw_complex* in, fftw_complex* out, int sign) {
  std::lock_guard lock(fftw_planner_mutex());
  fftw_plan plan = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), in, out, sign, FFTW_ESTIMATE);
  if (!plan) throw std::runtime_error("fftw: plan creation failed");
  return FftwPlan(plan);
}

}  // namespace detail

inline constexpr std::size_t kFastCorrelationMaxCells = std::size_t{1} << 24;
inline constexpr double kRoundingTolerance = 1e-3;
inline constexpr double kExactDoubleLimit = 4503599627370496.0;  // 2^52

/// Same table as full_correlation, computed as IDFT(conj(DFT A) * DFT B) / N and rounded.
/// Throws PrecisionError if any entry sits further than 1e-3 from an integer.
template <class TA, class TB>
IntArray full_correlation_fast(const NdArray<TA>& a, const NdArray<TB>& b) {
  detail::require_same_dims(a, b, "full_correlation_fast");
  const std::size_t n = a.size();
  if (n > kFastCorrelationMaxCells)
    throw PrecisionError("full_correlation_fast: " + std::to_string(n) + " cells exceeds the 2^24 limit");
  // Past 2^52 doubles stop resolving integers, so the rounding check below cannot see the loss.
  auto max_abs = [](const auto& arr) {
    double m = 0.0;
    for (auto v : arr.data()) m = std::max(m, std::abs(static_cast<double>(v)));
    return m;
  };
  if (max_abs(a) * max_abs(b) * static_cast<double>(n) > kExactDoubleLimit)
    throw PrecisionError("full_correlation_fast: correlation magnitude may exceed 2^52");
  std::vector<int> dims;
  for (auto d : a.dims()) dims.push_back(static_cast<int>(d));

  auto fa = detail::fftw_buffer(n), fb = detail::fftw_buffer(n);
  for (std::size_t i = 0; i < n; ++i) {
    fa[i][0] = static_cast<double>(a[i]);
    fa[i][1] = 0.0;
    fb[i][0] = static_cast<double>(b[i]);
    fb[i][1] = 0.0;
  }
  {
    auto pa = detail::make_plan(dims, fa.get(), fa.get(), FFTW_FORWARD);
    auto pb = detail::make_plan(dims, fb.get(), fb.get(), FFTW_FORWARD);
    fftw_execute(pa.get());
    fftw_execute(pb.get());
  }
  for (std::size_t i = 0; i < n; ++i) {
    // conj(fa) * fb
    const double re = fa[i][0] * fb[i][0] + fa[i][1] * fb[i][1];
    const double im = fa[i][0] * fb[i][1] - fa[i][1] * fb[i][0];
    fa[i][0] = re;
    fa[i][1] = im;
  }
  auto inv = detail::make_plan(dims, fa.get(), fa.get(), FFTW_BACKWARD);
  fftw_execute(inv.get());

  IntArray out(a.dims());
  const double scale = 1.0 / static_cast<double>(n);
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = fa[i][0] * scale;
    const double r = std::nearbyint(v);
    worst = std::max({worst, std::abs(v - r), std::abs(fa[i][1] * scale)});
    out[i] = static_cast<std::int64_t>(r);
  }
  if (!(worst < kRoundingTolerance))
    throw PrecisionError("full_correlation_fast: rounding residual " + std::to_string(worst) + " exceeds 1e-3");
  return out;
}

template <class TA, class TB>
IntArray correlate(const NdArray<TA>& a, const NdArray<TB>& b, CorrelationMethod method) {
  return method == CorrelationMethod::fast ? full_correlation_fast(a, b) : full_correlation(a, b);
}

template <class T>
IntArray autocorrelation(const NdArray<T>& a, CorrelationMethod method = CorrelationMethod::naive) {
  return correlate(a, a, method);
}

/// Flat autocorrelation check for Legendre arrays with a = 0.
struct FlatnessReport {
  std::int64_t peak = 0;
  std::int64_t off_peak_min = 0;
  std::int64_t off_peak_max = 0;
  bool passed = false;  // every off-peak value is exactly -1
};

template <class T>
FlatnessReport verify_flat_autocorrelation(const NdArray<T>& arr, CorrelationMethod method = CorrelationMethod::naive) {
  const IntArray theta = autocorrelation(arr, method);
  FlatnessReport r;
  r.peak = theta[0];
  if (theta.size() == 1) {
    r.passed = true;
    return r;
  }
  const auto [mn, mx] = std::minmax_element(theta.data().begin() + 1, theta.data().end());
  r.off_peak_min = *mn;
  r.off_peak_max = *mx;
  r.passed = *mn == -1 && *mx == -1;
  return r;
}

}  // namespace lfam
