#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "gmhbt/error.hpp"
#include "gmhbt/image.hpp"
#include "gmhbt/kernel.hpp"

namespace gmhbt {

enum class BoundaryMode { replicate, zero };

inline std::string to_string(BoundaryMode m) {
  return m == BoundaryMode::replicate ? "replicate" : "zero";
}

inline BoundaryMode parse_boundary_mode(const std::string& name) {
  if (name == "replicate") return BoundaryMode::replicate;
  if (name == "zero") return BoundaryMode::zero;
  throw InvalidSpec("unknown boundary mode '" + name + "'");
}

/// True 2D convolution y(r, c) = sum_{a,b} h(a, b) I(r - a, c - b), output
/// the same size as the input.
inline RealMap convolve2d(const RealMap& img, const Kernel2D& kernel,
                          BoundaryMode boundary = BoundaryMode::replicate) {
  if (kernel.size() >= img.width() || kernel.size() >= img.height()) {
    throw KernelTooLarge("kernel side " + std::to_string(kernel.size()) +
                         " not smaller than image " +
                         std::to_string(img.width()) + "x" +
                         std::to_string(img.height()));
  }
  const int w = img.width();
  const int h = img.height();
  const int rad = kernel.radius();
  RealMap out(w, h);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      double acc = 0.0;
      for (int a = -rad; a <= rad; ++a) {
        int sr = r - a;
        if (sr < 0 || sr >= h) {
          if (boundary == BoundaryMode::zero) continue;
          sr = std::clamp(sr, 0, h - 1);
        }
        for (int b = -rad; b <= rad; ++b) {
          int sc = c - b;
          if (sc < 0 || sc >= w) {
            if (boundary == BoundaryMode::zero) continue;
            sc = std::clamp(sc, 0, w - 1);
          }
          acc += kernel.at(a, b) * img(sr, sc);
        }
      }
      out(r, c) = acc;
    }
  }
  return out;
}

inline RealMap convolve2d(const GrayImage& img, const Kernel2D& kernel,
                          BoundaryMode boundary = BoundaryMode::replicate) {
  return convolve2d(RealMap(img), kernel, boundary);
}

/// Default LoG scale for a given mask size.
inline double default_log_sigma(int size) { return size / 6.0; }

/// Sampled Laplacian of Gaussian
///   -1/(pi s^4) (1 - r^2/(2 s^2)) exp(-r^2/(2 s^2)),
/// made zero-mean so a constant image maps to zero.
inline Kernel2D log_kernel(int size, double sigma) {
  if (size < 3 || size % 2 == 0) {
    throw InvalidSpec("LoG size must be odd and >= 3");
  }
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw InvalidSpec("LoG sigma must be > 0");
  }
  Kernel2D k(size);
  const int rad = k.radius();
  const double s2 = sigma * sigma;
  const double scale = -1.0 / (std::numbers::pi * s2 * s2);
  for (int i = -rad; i <= rad; ++i) {
    for (int j = -rad; j <= rad; ++j) {
      const double q = (i * i + j * j) / (2.0 * s2);
      k.at(i, j) = scale * (1.0 - q) * std::exp(-q);
    }
  }
  const double mean = k.sum() / (size * size);
  for (int i = -rad; i <= rad; ++i) {
    for (int j = -rad; j <= rad; ++j) k.at(i, j) -= mean;
  }
  return k;
}

/// Binary edge map: 255 where |hf| > fraction * max|hf|, else 0.
inline GrayImage threshold_edges(const RealMap& hf, double fraction) {
  if (!hf.all_finite()) throw NonFiniteValue("HF map has non-finite values");
  double peak = 0.0;
  for (double v : hf.values()) peak = std::max(peak, std::abs(v));
  const double level = fraction * peak;
  GrayImage out(hf.width(), hf.height());
  auto src = hf.values();
  auto dst = out.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) {
    dst[i] = std::abs(src[i]) > level ? 255 : 0;
  }
  return out;
}

/// Superimposes lambda * hf onto the image and requantizes to 8 bits.
inline GrayImage sharpen(const GrayImage& img, const RealMap& hf, double lambda) {
  if (img.width() != hf.width() || img.height() != hf.height()) {
    throw DimensionMismatch("image and HF map differ in size");
  }
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw InvalidSpec("lambda must be finite and >= 0");
  }
  if (!hf.all_finite()) throw NonFiniteValue("HF map has non-finite values");
  GrayImage out(img.width(), img.height());
  auto src = img.pixels();
  auto add = hf.values();
  auto dst = out.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) {
    dst[i] = to_luminance(src[i] + lambda * add[i]);
  }
  return out;
}

}  // namespace gmhbt
