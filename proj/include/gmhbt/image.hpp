#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gmhbt/error.hpp"

namespace gmhbt {

/// Number of luminance levels of an 8-bit image.
inline constexpr int kLuminanceLevels = 256;
inline constexpr double kPeakValue = kLuminanceLevels - 1;

/// 8-bit grayscale raster, row-major.
class GrayImage {
 public:
  GrayImage() = default;

  GrayImage(int width, int height, std::uint8_t fill = 0)
      : GrayImage(width, height,
                  std::vector<std::uint8_t>(checked_area(width, height), fill)) {}

  GrayImage(int width, int height, std::vector<std::uint8_t> data)
      : width_(width), height_(height), data_(std::move(data)) {
    if (data_.size() != checked_area(width, height)) {
      throw DimensionMismatch("pixel count " + std::to_string(data_.size()) +
                              " != " + std::to_string(width) + "x" +
                              std::to_string(height));
    }
  }

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  std::uint8_t operator()(int row, int col) const {
    return data_[static_cast<std::size_t>(row) * width_ + col];
  }
  std::uint8_t& operator()(int row, int col) {
    return data_[static_cast<std::size_t>(row) * width_ + col];
  }

  std::span<const std::uint8_t> pixels() const { return data_; }
  std::span<std::uint8_t> pixels() { return data_; }

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

 private:
  static std::size_t checked_area(int width, int height) {
    if (width < 1 || height < 1) {
      throw DimensionMismatch("image dimensions must be positive, got " +
                              std::to_string(width) + "x" +
                              std::to_string(height));
    }
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> data_;
};

/// Real-valued raster with the same layout as GrayImage. Holds filter
/// responses (HF maps) before quantization.
class RealMap {
 public:
  RealMap() = default;

  RealMap(int width, int height, double fill = 0.0)
      : width_(width), height_(height),
        data_(static_cast<std::size_t>(width) * height, fill) {
    if (width < 1 || height < 1) {
      throw DimensionMismatch("map dimensions must be positive");
    }
  }

  RealMap(int width, int height, std::vector<double> data)
      : width_(width), height_(height), data_(std::move(data)) {
    if (width < 1 || height < 1 ||
        data_.size() != static_cast<std::size_t>(width) * height) {
      throw DimensionMismatch("value count does not match map dimensions");
    }
  }

  explicit RealMap(const GrayImage& img)
      : width_(img.width()), height_(img.height()),
        data_(img.pixels().begin(), img.pixels().end()) {}

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return data_.size(); }

  double operator()(int row, int col) const {
    return data_[static_cast<std::size_t>(row) * width_ + col];
  }
  double& operator()(int row, int col) {
    return data_[static_cast<std::size_t>(row) * width_ + col];
  }

  std::span<const double> values() const { return data_; }
  std::span<double> values() { return data_; }

  bool all_finite() const {
    for (double v : data_) {
      if (!std::isfinite(v)) return false;
    }
    return true;
  }

  friend bool operator==(const RealMap&, const RealMap&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<double> data_;
};

enum class QuantizeMode { absolute, offset128 };

inline std::string to_string(QuantizeMode mode) {
  return mode == QuantizeMode::absolute ? "absolute" : "offset128";
}

inline QuantizeMode parse_quantize_mode(const std::string& name) {
  if (name == "absolute") return QuantizeMode::absolute;
  if (name == "offset128") return QuantizeMode::offset128;
  throw InvalidSpec("unknown quantize mode '" + name + "'");
}

/// Clamp to [0, 255] and round half away from zero (std::round semantics).
inline std::uint8_t to_luminance(double v) {
  if (v <= 0.0) return 0;
  if (v >= kPeakValue) return static_cast<std::uint8_t>(kPeakValue);
  return static_cast<std::uint8_t>(std::round(v));
}

/// Maps a real-valued response to 8-bit luminance.
///   absolute  -> round(clamp(|v|, 0, 255))
///   offset128 -> round(clamp(v + 128, 0, 255))
inline GrayImage quantize(const RealMap& map,
                          QuantizeMode mode = QuantizeMode::absolute) {
  std::vector<std::uint8_t> out(map.size());
  auto in = map.values();
  for (std::size_t i = 0; i < in.size(); ++i) {
    const double v = in[i];
    if (!std::isfinite(v)) {
      throw NonFiniteValue("map value at index " + std::to_string(i));
    }
    out[i] = to_luminance(mode == QuantizeMode::absolute ? std::abs(v)
                                                         : v + 128.0);
  }
  return GrayImage(map.width(), map.height(), std::move(out));
}

/// Center crop to at most `width` x `height`; smaller inputs keep their extent.
inline GrayImage center_crop(const GrayImage& img, int width, int height) {
  const int w = std::min(width, img.width());
  const int h = std::min(height, img.height());
  const int x0 = (img.width() - w) / 2;
  const int y0 = (img.height() - h) / 2;
  GrayImage out(w, h);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) out(r, c) = img(y0 + r, x0 + c);
  }
  return out;
}

}  // namespace gmhbt
