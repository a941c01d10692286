#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "lfam/correlation.hpp"
#include "lfam/family.hpp"
#include "lfam/image.hpp"
#include "lfam/ndarray.hpp"

namespace lfam {

// ---------------------------------------------------------------------------
// Partial flattening.
//
// One step pairs axis k with axis r-h+k (h = floor(r/2)) into a single axis of extent
// d_k * d_{r-h+k}, index q * d_{r-h+k} + rem, where q runs along axis k and rem along its
// partner. For odd r the middle axis h is carried through unchanged after the paired ones.
// Steps repeat until the rank is 2.

namespace detail {

inline std::vector<std::size_t> flatten_step_dims(const std::vector<std::size_t>& d) {
  const std::size_t r = d.size(), h = r / 2;
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < h; ++k) out.push_back(d[k] * d[r - h + k]);
  if (r % 2) out.push_back(d[h]);
  return out;
}

inline Index flatten_step_index(const std::vector<std::size_t>& d, const Index& idx) {
  const std::size_t r = d.size(), h = r / 2;
  Index out;
  for (std::size_t k = 0; k < h; ++k) out.push_back(idx[k] * d[r - h + k] + idx[r - h + k]);
  if (r % 2) out.push_back(idx[h]);
  return out;
}

inline void require_flattenable(const std::vector<std::size_t>& dims) {
  if (dims.size() < 2) throw std::invalid_argument("flatten: rank must be >= 2, got " + std::to_string(dims.size()));
}

// For every source linear index, the linear index it lands on in the rank-2 result.
inline std::vector<std::size_t> flatten_permutation(const std::vector<std::size_t>& dims) {
  require_flattenable(dims);
  std::vector<std::vector<std::size_t>> chain{dims};
  while (chain.back().size() > 2) chain.push_back(flatten_step_dims(chain.back()));
  const std::size_t total = NdArray<int>::product(dims);
  std::vector<std::size_t> perm(total);
  Index idx(dims.size(), 0);
  std::size_t linear = 0;
  do {
    Index cur = idx;
    for (std::size_t s = 0; s + 1 < chain.size(); ++s) cur = flatten_step_index(chain[s], cur);
    perm[linear++] = cur[0] * chain.back()[1] + cur[1];
  } while (next_index(idx, dims));
  return perm;
}

}  // namespace detail

/// Rank-2 extents that `flatten` produces for an array with these extents.
inline std::vector<std::size_t> flattened_dims(std::vector<std::size_t> dims) {
  detail::require_flattenable(dims);
  while (dims.size() > 2) dims = detail::flatten_step_dims(dims);
  return dims;
}

/// A single pairing step (rank r -> ceil(r/2)).
template <class T>
NdArray<T> flatten_step(const NdArray<T>& s) {
  detail::require_flattenable(s.dims());
  NdArray<T> out(detail::flatten_step_dims(s.dims()));
  Index idx(s.rank(), 0);
  std::size_t linear = 0;
  do {
    out.set(detail::flatten_step_index(s.dims(), idx), s[linear++]);
  } while (next_index(idx, s.dims()));
  return out;
}

template <class T>
NdArray<T> flatten(const NdArray<T>& s) {
  const auto perm = detail::flatten_permutation(s.dims());
  NdArray<T> out(flattened_dims(s.dims()));
  for (std::size_t i = 0; i < perm.size(); ++i) out[perm[i]] = s[i];
  return out;
}

/// Inverse of flatten for a source of extents `dims`.
template <class T>
NdArray<T> unflatten(const NdArray<T>& f, const std::vector<std::size_t>& dims) {
  if (f.rank() != 2) throw std::invalid_argument("unflatten: input must be rank 2");
  if (flattened_dims(dims) != f.dims())
    throw std::invalid_argument("unflatten: target extents do not flatten to " + std::to_string(f.dims()[0]) + "x" +
                                std::to_string(f.dims()[1]));
  const auto perm = detail::flatten_permutation(dims);
  NdArray<T> out(dims);
  for (std::size_t i = 0; i < perm.size(); ++i) out[i] = f[perm[i]];
  return out;
}

// ---------------------------------------------------------------------------

/// Recoverable message: member index plus one cyclic shift per axis.
struct Payload {
  std::uint32_t m = 0;
  Shift shifts;

  friend bool operator==(const Payload&, const Payload&) = default;
};

struct EmbedConfig {
  int strength = 3;
};

struct ExtractConfig {
  double snr_threshold = 4.0;
  CorrelationMethod method = CorrelationMethod::fast;
  bool skip_m0 = false;
};

struct ExtractResult {
  Payload payload;
  double score = 0.0;  // correlation peak per folded tile
  double snr = 0.0;  // peak over RMS of every other table entry
  bool confident = false;
};

/// Flattened, cyclically shifted member: the tile that gets added to the image.
inline TernaryArray watermark_tile(const FamilyMember& member, const Payload& payload) {
  if (payload.m != member.m)
    throw std::invalid_argument("embed: payload member " + std::to_string(payload.m) + " != member " +
                                std::to_string(member.m));
  if (payload.shifts.size() != member.arr.rank())
    throw std::invalid_argument("embed: expected " + std::to_string(member.arr.rank()) + " shifts, got " +
                                std::to_string(payload.shifts.size()));
  for (std::size_t k = 0; k < payload.shifts.size(); ++k) {
    const auto s = payload.shifts[k];
    if (s < 0 || s >= static_cast<std::int64_t>(member.arr.dims()[k]))
      throw std::invalid_argument("embed: shift " + std::to_string(s) + " outside [0, " +
                                  std::to_string(member.arr.dims()[k]) + ")");
  }
  return flatten(cyclic_shift(member.arr, payload.shifts));
}

/// Adds strength * tile, repeated periodically over the whole image, clamping to [0, 255].
inline GrayImage embed(const GrayImage& img, const FamilyMember& member, const Payload& payload,
                       const EmbedConfig& cfg = {}) {
  if (cfg.strength < 0) throw std::invalid_argument("embed: strength must be non-negative");
  const TernaryArray w = watermark_tile(member, payload);
  const std::size_t rows = w.dims()[0], cols = w.dims()[1];
  if (img.height() < rows || img.width() < cols)
    throw std::invalid_argument("embed: image " + std::to_string(img.width()) + "x" + std::to_string(img.height()) +
                                " is smaller than one " + std::to_string(cols) + "x" + std::to_string(rows) + " tile");
  GrayImage out = img;
  for (std::size_t y = 0; y < img.height(); ++y) {
    for (std::size_t x = 0; x < img.width(); ++x) {
      const int v = img(x, y) + cfg.strength * w[(y % rows) * cols + (x % cols)];
      out(x, y) = static_cast<std::uint8_t>(std::clamp(v, 0, 255));
    }
  }
  return out;
}

/// Sum of all whole tiles, pixel by pixel.
inline IntArray fold_tiles(const GrayImage& img, std::size_t rows, std::size_t cols, std::size_t* tile_count = nullptr) {
  const std::size_t ty = img.height() / rows, tx = img.width() / cols;
  if (ty == 0 || tx == 0)
    throw std::invalid_argument("extract: image " + std::to_string(img.width()) + "x" + std::to_string(img.height()) +
                                " is smaller than one " + std::to_string(cols) + "x" + std::to_string(rows) + " tile");
  IntArray folded({rows, cols}, 0);
  for (std::size_t y = 0; y < ty * rows; ++y)
    for (std::size_t x = 0; x < tx * cols; ++x) folded[(y % rows) * cols + (x % cols)] += img(x, y);
  if (tile_count) *tile_count = tx * ty;
  return folded;
}

/// Blind payload recovery: fold tiles, remove the mean, partition back into 2n axes and
/// take the largest correlation value over every member and shift.
inline ExtractResult extract(const GrayImage& img, const ArrayFamily& family, const ExtractConfig& cfg = {}) {
  if (family.members.empty()) throw std::invalid_argument("extract: empty family");
  const auto& member_dims = family.members.front().arr.dims();
  const auto tile = flattened_dims(member_dims);
  std::size_t tiles = 0;
  IntArray folded = fold_tiles(img, tile[0], tile[1], &tiles);

  // Remove the (rounded) tile mean. Members built with a = 0 sum to zero, so the
  // rounding residue contributes nothing to any correlation value.
  const auto cells = static_cast<std::int64_t>(folded.size());
  std::int64_t total = 0;
  for (auto v : folded.data()) total += v;
  const std::int64_t mean = (total + cells / 2) / cells;
  for (auto& v : folded.data()) v -= mean;
  const IntArray data = unflatten(folded, member_dims);

  std::vector<const FamilyMember*> candidates;
  for (const auto& m : family.members)
    if (!(cfg.skip_m0 && m.m == 0)) candidates.push_back(&m);
  if (candidates.empty()) throw std::invalid_argument("extract: no candidate members");

  std::vector<IntArray> tables(candidates.size());
  detail::parallel_chunks(candidates.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) tables[i] = correlate(data, candidates[i]->arr, cfg.method);
  });

  std::size_t best_m = 0, best_s = 0;
  std::int64_t best = std::numeric_limits<std::int64_t>::min();
  for (std::size_t i = 0; i < tables.size(); ++i)
    for (std::size_t s = 0; s < tables[i].size(); ++s)
      if (tables[i][s] > best) {
        best = tables[i][s];
        best_m = i;
        best_s = s;
      }

  long double sumsq = 0;
  std::size_t others = 0;
  for (std::size_t i = 0; i < tables.size(); ++i)
    for (std::size_t s = 0; s < tables[i].size(); ++s) {
      if (i == best_m && s == best_s) continue;
      const long double v = static_cast<long double>(tables[i][s]);
      sumsq += v * v;
      ++others;
    }

  ExtractResult r;
  r.payload.m = candidates[best_m]->m;
  const Index si = tables[best_m].multi_index(best_s);
  r.payload.shifts.assign(si.begin(), si.end());
  r.score = static_cast<double>(best) / static_cast<double>(tiles);
  const double rms = others ? static_cast<double>(std::sqrt(sumsq / others)) : 0.0;
  if (best <= 0)
    r.snr = 0.0;
  else
    r.snr = rms > 0 ? static_cast<double>(best) / rms : std::numeric_limits<double>::max();
  r.confident = r.snr >= cfg.snr_threshold;
  return r;
}

}  // namespace lfam
