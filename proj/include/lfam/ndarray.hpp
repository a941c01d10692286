#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

namespace lfam {

using Index = std::vector<std::size_t>;
using Shift = std::vector<std::int64_t>;

inline constexpr std::size_t kMaxRank = 8;

/**
 * Row-major N-d array with positive extents.
 *
 * Linear index of (i_0, ..., i_{N-1}) is ((i_0 l_1 + i_1) l_2 + ...) + i_{N-1}.
 * Raw access is bounds checked; cyclic access reduces every component mod its extent.
 */
template <class T>
class NdArray {
 public:
  using value_type = T;

  NdArray() = default;

  explicit NdArray(std::vector<std::size_t> dims, T fill = T{}) : dims_(std::move(dims)) {
    validate_dims(dims_);
    data_.assign(product(dims_), fill);
    compute_strides();
  }

  NdArray(std::vector<std::size_t> dims, std::vector<T> data) : dims_(std::move(dims)), data_(std::move(data)) {
    validate_dims(dims_);
    if (data_.size() != product(dims_))
      throw std::invalid_argument("NdArray: data length " + std::to_string(data_.size()) + " != " +
                                  std::to_string(product(dims_)));
    compute_strides();
  }

  static std::size_t product(std::span<const std::size_t> dims) {
    return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>{});
  }

  static void validate_dims(std::span<const std::size_t> dims) {
    if (dims.empty()) throw std::invalid_argument("NdArray: rank must be >= 1");
    if (dims.size() > kMaxRank)
      throw std::invalid_argument("NdArray: rank " + std::to_string(dims.size()) + " exceeds " +
                                  std::to_string(kMaxRank));
    for (auto d : dims)
      if (d == 0) throw std::invalid_argument("NdArray: zero extent");
  }

  std::size_t rank() const noexcept { return dims_.size(); }
  std::size_t size() const noexcept { return data_.size(); }
  const std::vector<std::size_t>& dims() const noexcept { return dims_; }
  const std::vector<std::size_t>& strides() const noexcept { return strides_; }
  std::span<T> data() noexcept { return data_; }
  std::span<const T> data() const noexcept { return data_; }
  T& operator[](std::size_t linear) noexcept { return data_[linear]; }
  const T& operator[](std::size_t linear) const noexcept { return data_[linear]; }

  std::size_t linear_index(std::span<const std::size_t> idx) const {
    if (idx.size() != rank())
      throw std::invalid_argument("NdArray: index rank " + std::to_string(idx.size()) + " != " +
                                  std::to_string(rank()));
    std::size_t off = 0;
    for (std::size_t k = 0; k < idx.size(); ++k) {
      if (idx[k] >= dims_[k])
        throw std::out_of_range("NdArray: index " + std::to_string(idx[k]) + " out of range on axis " +
                                std::to_string(k));
      off = off * dims_[k] + idx[k];
    }
    return off;
  }

  Index multi_index(std::size_t linear) const {
    Index idx(rank());
    for (std::size_t k = rank(); k-- > 0;) {
      idx[k] = linear % dims_[k];
      linear /= dims_[k];
    }
    return idx;
  }

  /// Component-wise mod; negative components wrap.
  std::size_t cyclic_linear_index(std::span<const std::int64_t> idx) const {
    if (idx.size() != rank())
      throw std::invalid_argument("NdArray: index rank " + std::to_string(idx.size()) + " != " +
                                  std::to_string(rank()));
    std::size_t off = 0;
    for (std::size_t k = 0; k < idx.size(); ++k) off = off * dims_[k] + wrap(idx[k], dims_[k]);
    return off;
  }

  const T& get(std::span<const std::size_t> idx) const { return data_[linear_index(idx)]; }
  T& get(std::span<const std::size_t> idx) { return data_[linear_index(idx)]; }
  void set(std::span<const std::size_t> idx, T v) { data_[linear_index(idx)] = v; }
  const T& cyclic_get(std::span<const std::int64_t> idx) const { return data_[cyclic_linear_index(idx)]; }

  const T& at(std::initializer_list<std::size_t> idx) const {
    return get(std::span<const std::size_t>(idx.begin(), idx.size()));
  }

  static std::size_t wrap(std::int64_t v, std::size_t extent) noexcept {
    const auto e = static_cast<std::int64_t>(extent);
    const auto r = v % e;
    return static_cast<std::size_t>(r < 0 ? r + e : r);
  }

  friend bool operator==(const NdArray&, const NdArray&) = default;

 private:
  void compute_strides() {
    strides_.assign(dims_.size(), 1);
    for (std::size_t k = dims_.size(); k-- > 1;) strides_[k - 1] = strides_[k] * dims_[k];
  }

  std::vector<std::size_t> dims_;
  std::vector<std::size_t> strides_;
  std::vector<T> data_;
};

using TernaryArray = NdArray<std::int8_t>;
using IntArray = NdArray<std::int64_t>;

/// Advances idx through dims in row-major order; false after the last index.
inline bool next_index(Index& idx, std::span<const std::size_t> dims) noexcept {
  for (std::size_t k = dims.size(); k-- > 0;) {
    if (++idx[k] < dims[k]) return true;
    idx[k] = 0;
  }
  return false;
}

template <class T>
bool is_ternary(const NdArray<T>& a) {
  return std::all_of(a.data().begin(), a.data().end(), [](T v) { return v == T(-1) || v == T(0) || v == T(1); });
}

template <class T>
TernaryArray to_ternary(const NdArray<T>& a) {
  if (!is_ternary(a)) throw std::invalid_argument("to_ternary: entries outside {-1,0,+1}");
  std::vector<std::int8_t> d(a.data().begin(), a.data().end());
  return TernaryArray(a.dims(), std::move(d));
}

template <class T>
IntArray to_int(const NdArray<T>& a) {
  std::vector<std::int64_t> d(a.data().begin(), a.data().end());
  return IntArray(a.dims(), std::move(d));
}

/// result[idx] = arr[(idx + offsets) mod dims]
template <class T>
NdArray<T> cyclic_shift(const NdArray<T>& arr, std::span<const std::int64_t> offsets) {
  if (offsets.size() != arr.rank())
    throw std::invalid_argument("cyclic_shift: " + std::to_string(offsets.size()) + " offsets for rank " +
                                std::to_string(arr.rank()));
  const auto& dims = arr.dims();
  const std::size_t rank = dims.size();
  // per-axis source offset tables
  std::vector<std::vector<std::size_t>> src(rank);
  for (std::size_t k = 0; k < rank; ++k) {
    src[k].resize(dims[k]);
    for (std::size_t i = 0; i < dims[k]; ++i)
      src[k][i] = NdArray<T>::wrap(static_cast<std::int64_t>(i) + offsets[k], dims[k]) * arr.strides()[k];
  }
  NdArray<T> out(dims);
  Index idx(rank, 0);
  std::size_t linear = 0;
  do {
    std::size_t s = 0;
    for (std::size_t k = 0; k < rank; ++k) s += src[k][idx[k]];
    out[linear++] = arr[s];
  } while (next_index(idx, dims));
  return out;
}

template <class T>
NdArray<T> cyclic_shift(const NdArray<T>& arr, std::initializer_list<std::int64_t> offsets) {
  return cyclic_shift(arr, std::span<const std::int64_t>(offsets.begin(), offsets.size()));
}

// ---------------------------------------------------------------------------
// NDA1 text format:
//   NDA1
//   <rank>
//   <l_0> ... <l_{N-1}>
//   ternary | int
//   values, one line per run of the last axis

enum class NdaKind { ternary, integer };

inline std::string_view to_string(NdaKind k) { return k == NdaKind::ternary ? "ternary" : "int"; }

template <class T>
std::string serialize(const NdArray<T>& arr, NdaKind kind) {
  if (kind == NdaKind::ternary && !is_ternary(arr))
    throw std::invalid_argument("serialize: ternary kind requested for non-ternary data");
  std::ostringstream os;
  os << "NDA1\n" << arr.rank() << '\n';
  for (std::size_t k = 0; k < arr.rank(); ++k) os << (k ? " " : "") << arr.dims()[k];
  os << '\n' << to_string(kind) << '\n';
  const std::size_t row = arr.dims().back();
  for (std::size_t i = 0; i < arr.size(); ++i) {
    os << static_cast<std::int64_t>(arr[i]) << ((i + 1) % row == 0 ? '\n' : ' ');
  }
  return os.str();
}

inline std::string serialize(const TernaryArray& arr) { return serialize(arr, NdaKind::ternary); }
inline std::string serialize(const IntArray& arr) { return serialize(arr, NdaKind::integer); }

struct NdaDocument {
  NdaKind kind;
  IntArray values;
};

namespace detail {

inline std::string read_line(std::istream& is, std::string_view what) {
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument("NDA1: missing " + std::string(what));
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

inline std::int64_t parse_int(const std::string& tok, std::string_view what) {
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(tok, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != tok.size() || tok.empty())
    throw std::invalid_argument("NDA1: bad " + std::string(what) + " '" + tok + "'");
  return v;
}

}  // namespace detail

inline NdaDocument deserialize_document(std::string_view text) {
  std::istringstream is{std::string(text)};
  if (detail::read_line(is, "magic") != "NDA1") throw std::invalid_argument("NDA1: bad magic");
  const auto rank = detail::parse_int(detail::read_line(is, "rank"), "rank");
  if (rank < 1 || rank > static_cast<std::int64_t>(kMaxRank))
    throw std::invalid_argument("NDA1: rank " + std::to_string(rank) + " outside [1, " + std::to_string(kMaxRank) +
                                "]");
  std::istringstream dl(detail::read_line(is, "extents"));
  std::vector<std::size_t> dims;
  std::string tok;
  while (dl >> tok) {
    const auto d = detail::parse_int(tok, "extent");
    if (d < 1) throw std::invalid_argument("NDA1: extent must be positive, got " + tok);
    dims.push_back(static_cast<std::size_t>(d));
  }
  if (dims.size() != static_cast<std::size_t>(rank))
    throw std::invalid_argument("NDA1: expected " + std::to_string(rank) + " extents, got " +
                                std::to_string(dims.size()));
  const std::string kind_s = detail::read_line(is, "kind");
  NdaKind kind;
  if (kind_s == "ternary")
    kind = NdaKind::ternary;
  else if (kind_s == "int")
    kind = NdaKind::integer;
  else
    throw std::invalid_argument("NDA1: unknown kind '" + kind_s + "'");

  const std::size_t count = IntArray::product(dims);
  std::vector<std::int64_t> values;
  values.reserve(count);
  while (is >> tok) {
    const auto v = detail::parse_int(tok, "entry");
    if (kind == NdaKind::ternary && (v < -1 || v > 1))
      throw std::invalid_argument("NDA1: ternary entry out of range: " + tok);
    values.push_back(v);
  }
  if (values.size() != count)
    throw std::invalid_argument("NDA1: expected " + std::to_string(count) + " entries, got " +
                                std::to_string(values.size()));
  return {kind, IntArray(std::move(dims), std::move(values))};
}

inline TernaryArray deserialize_ternary(std::string_view text) {
  auto doc = deserialize_document(text);
  if (doc.kind != NdaKind::ternary) throw std::invalid_argument("NDA1: expected ternary kind");
  return to_ternary(doc.values);
}

inline IntArray deserialize_int(std::string_view text) { return deserialize_document(text).values; }

}  // namespace lfam
