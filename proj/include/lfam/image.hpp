#pragma once

#include <cctype>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lfam/ndarray.hpp"

namespace lfam {

/// 8-bit grayscale raster, row-major.
class GrayImage {
 public:
  GrayImage(std::size_t width, std::size_t height, std::uint8_t fill = 0)
      : width_(width), height_(height), pixels_(width * height, fill) {
    if (width == 0 || height == 0) throw std::invalid_argument("GrayImage: dimensions must be positive");
  }
  GrayImage(std::size_t width, std::size_t height, std::vector<std::uint8_t> pixels)
      : width_(width), height_(height), pixels_(std::move(pixels)) {
    if (width == 0 || height == 0) throw std::invalid_argument("GrayImage: dimensions must be positive");
    if (pixels_.size() != width * height) throw std::invalid_argument("GrayImage: pixel count mismatch");
  }

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::span<const std::uint8_t> pixels() const noexcept { return pixels_; }
  std::span<std::uint8_t> pixels() noexcept { return pixels_; }
  std::uint8_t& operator()(std::size_t x, std::size_t y) { return pixels_.at(y * width_ + x); }
  std::uint8_t operator()(std::size_t x, std::size_t y) const { return pixels_.at(y * width_ + x); }

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

 private:
  std::size_t width_;
  std::size_t height_;
  std::vector<std::uint8_t> pixels_;
};

/// Binary P5, maxval 255, no comments.
inline std::string write_pgm(const GrayImage& img) {
  std::string out = "P5\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
  out.append(reinterpret_cast<const char*>(img.pixels().data()), img.pixels().size());
  return out;
}

/// ASCII P2, maxval 255.
inline std::string write_pgm_ascii(const GrayImage& img) {
  std::string out = "P2\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
  for (std::size_t y = 0; y < img.height(); ++y) {
    for (std::size_t x = 0; x < img.width(); ++x) {
      if (x) out += ' ';
      out += std::to_string(img(x, y));
    }
    out += '\n';
  }
  return out;
}

namespace detail {

class PgmCursor {
 public:
  explicit PgmCursor(std::string_view b) : buf_(b) {}

  // Skips whitespace and '#' comments, then reads an unsigned decimal.
  std::size_t number(std::string_view what) {
    skip();
    std::size_t start = pos_;
    std::size_t v = 0;
    while (pos_ < buf_.size() && std::isdigit(static_cast<unsigned char>(buf_[pos_]))) {
      v = v * 10 + static_cast<std::size_t>(buf_[pos_] - '0');
      if (v > (std::size_t{1} << 31)) throw std::invalid_argument("PGM: " + std::string(what) + " too large");
      ++pos_;
    }
    if (pos_ == start) throw std::invalid_argument("PGM: expected " + std::string(what));
    return v;
  }

  // Exactly one whitespace byte separates the header from binary data.
  void single_whitespace() {
    if (pos_ >= buf_.size() || !std::isspace(static_cast<unsigned char>(buf_[pos_])))
      throw std::invalid_argument("PGM: missing whitespace before raster");
    ++pos_;
  }

  std::size_t pos() const noexcept { return pos_; }
  std::string_view buffer() const noexcept { return buf_; }

 private:
  void skip() {
    while (pos_ < buf_.size()) {
      const char c = buf_[pos_];
      if (c == '#') {
        while (pos_ < buf_.size() && buf_[pos_] != '\n' && buf_[pos_] != '\r') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view buf_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline GrayImage read_pgm(std::string_view bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '2'))
    throw std::invalid_argument("PGM: bad magic (expected P5 or P2)");
  const bool binary = bytes[1] == '5';
  detail::PgmCursor cur(bytes.substr(2));
  const std::size_t w = cur.number("width");
  const std::size_t h = cur.number("height");
  const std::size_t maxval = cur.number("maxval");
  if (w == 0 || h == 0) throw std::invalid_argument("PGM: zero dimension");
  if (maxval != 255) throw std::invalid_argument("PGM: maxval must be 255, got " + std::to_string(maxval));
  std::vector<std::uint8_t> px(w * h);
  if (binary) {
    cur.single_whitespace();
    const auto rest = cur.buffer().substr(cur.pos());
    if (rest.size() < px.size())
      throw std::invalid_argument("PGM: truncated raster (" + std::to_string(rest.size()) + " of " +
                                  std::to_string(px.size()) + " bytes)");
    std::copy_n(rest.begin(), px.size(), reinterpret_cast<char*>(px.data()));
  } else {
    for (auto& v : px) {
      const std::size_t s = cur.number("sample");
      if (s > 255) throw std::invalid_argument("PGM: sample " + std::to_string(s) + " exceeds maxval");
      v = static_cast<std::uint8_t>(s);
    }
  }
  return GrayImage(w, h, std::move(px));
}

/// -1 -> 255 (white), 0 -> 128 (gray), +1 -> 0 (black); each cell becomes a scale x scale block.
template <class T>
GrayImage render(const NdArray<T>& arr, std::size_t scale = 1) {
  if (arr.rank() != 2) throw std::invalid_argument("render: expected a rank-2 array, got rank " +
                                                   std::to_string(arr.rank()));
  if (scale == 0) throw std::invalid_argument("render: scale must be positive");
  const std::size_t rows = arr.dims()[0], cols = arr.dims()[1];
  GrayImage img(cols * scale, rows * scale);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const auto v = arr[r * cols + c];
      std::uint8_t g;
      if (v < 0)
        g = 255;
      else if (v == 0)
        g = 128;
      else
        g = 0;
      for (std::size_t dy = 0; dy < scale; ++dy)
        for (std::size_t dx = 0; dx < scale; ++dx) img(c * scale + dx, r * scale + dy) = g;
    }
  }
  return img;
}

}  // namespace lfam
