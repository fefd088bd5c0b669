#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string_view>

#include "gmhbt/error.hpp"
#include "gmhbt/image.hpp"

namespace gmhbt {

struct NoiseSpec {
  double sigma = 0.0;  // standard deviation in luminance units
  std::uint64_t seed = 0;
};

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// FNV-1a, 64 bit.
constexpr std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

/// Seed of one benchmark cell:
///   s = mix64(master ^ fnv1a64(id)); s = mix64(s ^ size); s = mix64(s ^ bits(sigma))
inline std::uint64_t cell_seed(std::uint64_t master, std::string_view image_id,
                               int size, double sigma) {
  std::uint64_t s = mix64(master ^ fnv1a64(image_id));
  s = mix64(s ^ static_cast<std::uint64_t>(size));
  s = mix64(s ^ std::bit_cast<std::uint64_t>(sigma));
  return s;
}

/// Standard normal stream with a fixed algorithm (Box-Muller over the
/// mt19937_64 bit stream), so sequences match across standard libraries.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : engine_(seed) {}

  double next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Adds round(n), n ~ N(0, sigma^2), to every pixel and clamps to [0, 255].
inline GrayImage add_gaussian_noise(const GrayImage& img, const NoiseSpec& noise) {
  if (!std::isfinite(noise.sigma) || noise.sigma < 0.0) {
    throw InvalidSpec("noise sigma must be finite and >= 0");
  }
  if (noise.sigma == 0.0) return img;
  GrayImage out = img;
  NormalStream normal(noise.seed);
  for (auto& px : out.pixels()) {
    const double n = std::round(noise.sigma * normal.next());
    px = to_luminance(px + n);
  }
  return out;
}

}  // namespace gmhbt
