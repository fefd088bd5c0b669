#pragma once

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "gmhbt/error.hpp"
#include "gmhbt/filtering.hpp"
#include "gmhbt/image.hpp"
#include "gmhbt/kernel.hpp"

namespace gmhbt {

/// PSNR value in dB, or the PerfectMatch marker when the images are equal.
class Decibels {
 public:
  static Decibels of(double db) { return Decibels(db, false); }
  static Decibels perfect_match() {
    return Decibels(std::numeric_limits<double>::infinity(), true);
  }

  bool is_perfect() const { return perfect_; }
  /// +inf for a perfect match.
  double value() const { return value_; }

  /// "inf" for a perfect match, otherwise fixed with `decimals` digits.
  std::string to_string(int decimals = 6) const {
    if (perfect_) return "inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, value_);
    return buf;
  }

  friend bool operator==(const Decibels&, const Decibels&) = default;

 private:
  Decibels(double v, bool perfect) : value_(v), perfect_(perfect) {}
  double value_;
  bool perfect_;
};

/// 10 log10((L-1)^2 / MSE), L = 256.
inline Decibels psnr(const GrayImage& y, const GrayImage& z) {
  if (y.width() != z.width() || y.height() != z.height()) {
    throw DimensionMismatch("PSNR inputs differ in size");
  }
  auto a = y.pixels();
  auto b = z.pixels();
  // Integer accumulation keeps the result independent of summation order.
  std::uint64_t sse = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int d = int(a[i]) - int(b[i]);
    sse += static_cast<std::uint64_t>(d * d);
  }
  if (sse == 0) return Decibels::perfect_match();
  const double mse = static_cast<double>(sse) / static_cast<double>(a.size());
  return Decibels::of(10.0 * std::log10(kPeakValue * kPeakValue / mse));
}

/// PSNR between the quantized HF map of the noisy image (y) and that of
/// the clean image (z).
inline Decibels hf_restoration_psnr(const GrayImage& original,
                                    const GrayImage& noisy,
                                    const Kernel2D& kernel,
                                    QuantizeMode mode = QuantizeMode::absolute,
                                    BoundaryMode boundary = BoundaryMode::replicate) {
  if (original.width() != noisy.width() || original.height() != noisy.height()) {
    throw DimensionMismatch("original and noisy images differ in size");
  }
  const GrayImage y = quantize(convolve2d(noisy, kernel, boundary), mode);
  const GrayImage z = quantize(convolve2d(original, kernel, boundary), mode);
  return psnr(y, z);
}

}  // namespace gmhbt
