#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "gmhbt/image.hpp"

namespace gmhbt {

struct NamedImage {
  std::string id;
  GrayImage image;
};

namespace synthetic {

inline constexpr int kSide = 128;

// Vertical step: left half 40, right half 200.
inline GrayImage step(int side = kSide) {
  GrayImage img(side, side);
  for (int r = 0; r < side; ++r)
    for (int c = 0; c < side; ++c) img(r, c) = c < side / 2 ? 40 : 200;
  return img;
}

inline GrayImage checkerboard(int side = kSide, int cell = 16) {
  GrayImage img(side, side);
  for (int r = 0; r < side; ++r)
    for (int c = 0; c < side; ++c)
      img(r, c) = ((r / cell) + (c / cell)) % 2 ? 190 : 60;
  return img;
}

// 21 vertical bars of evenly spaced gray levels, 0 to 255.
inline GrayImage gray21(int side = kSide) {
  GrayImage img(side, side);
  for (int r = 0; r < side; ++r)
    for (int c = 0; c < side; ++c) {
      const int bar = c * 21 / side;
      img(r, c) = to_luminance(bar * 255.0 / 20.0);
    }
  return img;
}

inline GrayImage disk(int side = kSide) {
  GrayImage img(side, side);
  const double cx = (side - 1) / 2.0;
  const double radius = side * 0.3;
  for (int r = 0; r < side; ++r)
    for (int c = 0; c < side; ++c)
      img(r, c) = std::hypot(r - cx, c - cx) < radius ? 200 : 50;
  return img;
}

// Eight horizontal steps rising left to right, 16 px wide each.
inline GrayImage step_wedge(int side = kSide) {
  GrayImage img(side, side);
  for (int r = 0; r < side; ++r)
    for (int c = 0; c < side; ++c)
      img(r, c) = to_luminance(20.0 + 30.0 * (c * 8 / side));
  return img;
}

inline GrayImage grating(int side = kSide) {
  GrayImage img(side, side);
  for (int r = 0; r < side; ++r)
    for (int c = 0; c < side; ++c)
      img(r, c) = to_luminance(128.0 + 80.0 * std::sin(c / 5.0 + r / 7.0));
  return img;
}

/// The bundled desk-scale benchmark suite, six 128 x 128 images.
inline std::vector<NamedImage> suite() {
  return {
      {"step", step()},       {"checkerboard", checkerboard()},
      {"gray21", gray21()},   {"disk", disk()},
      {"wedge", step_wedge()}, {"grating", grating()},
  };
}

}  // namespace synthetic
}  // namespace gmhbt
