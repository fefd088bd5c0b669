#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "gmhbt/error.hpp"

namespace gmhbt {

/// Odd-sized square impulse response h(x1, x2), indexed by signed offsets
/// in [-radius, radius].
class Kernel2D {
 public:
  Kernel2D() = default;

  explicit Kernel2D(int size, double fill = 0.0)
      : Kernel2D(size, std::vector<double>(checked_count(size), fill)) {}

  Kernel2D(int size, std::vector<double> coeffs)
      : size_(size), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != checked_count(size)) {
      throw LengthMismatch("kernel of side " + std::to_string(size) +
                           " needs " + std::to_string(size * size) +
                           " coefficients, got " +
                           std::to_string(coeffs_.size()));
    }
  }

  int size() const { return size_; }
  int radius() const { return (size_ - 1) / 2; }

  /// Coefficient at signed offset (x1, x2); x1 selects the row.
  double at(int x1, int x2) const { return coeffs_[index(x1, x2)]; }
  double& at(int x1, int x2) { return coeffs_[index(x1, x2)]; }

  std::span<const double> coeffs() const { return coeffs_; }

  double sum() const {
    double s = 0.0;
    for (double c : coeffs_) s += c;
    return s;
  }

  bool all_finite() const {
    for (double c : coeffs_) {
      if (!std::isfinite(c)) return false;
    }
    return true;
  }

  /// True when h(i,j) = h(j,i) = h(-i,j) = h(i,-j) hold bitwise.
  bool has_octagonal_symmetry() const {
    const int c = radius();
    for (int i = -c; i <= c; ++i) {
      for (int j = -c; j <= c; ++j) {
        const double v = at(i, j);
        if (v != at(j, i) || v != at(-i, j) || v != at(i, -j)) return false;
      }
    }
    return true;
  }

  /// Unit impulse at the origin.
  static Kernel2D delta(int size) {
    Kernel2D k(size);
    k.at(0, 0) = 1.0;
    return k;
  }

  friend bool operator==(const Kernel2D&, const Kernel2D&) = default;

 private:
  static std::size_t checked_count(int size) {
    if (size < 1 || size % 2 == 0) {
      throw InvalidSpec("kernel side must be odd and positive, got " +
                        std::to_string(size));
    }
    return static_cast<std::size_t>(size) * size;
  }

  std::size_t index(int x1, int x2) const {
    return static_cast<std::size_t>(x1 + radius()) * size_ + (x2 + radius());
  }

  int size_ = 0;
  std::vector<double> coeffs_;
};

// Text format: "<rows> <cols>" then one line per row of space-separated
// coefficients, printed with round-trip precision.
inline void write_kernel(const Kernel2D& k, std::ostream& out) {
  out << k.size() << ' ' << k.size() << '\n';
  char buf[32];
  for (int r = 0; r < k.size(); ++r) {
    for (int c = 0; c < k.size(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", k.coeffs()[r * k.size() + c]);
      if (c) out << ' ';
      out << buf;
    }
    out << '\n';
  }
}

inline Kernel2D read_kernel(std::istream& in) {
  int rows = 0, cols = 0;
  if (!(in >> rows >> cols)) throw MalformedHeader("kernel dimensions");
  if (rows != cols || rows < 1 || rows % 2 == 0) {
    throw MalformedHeader("kernel must be square with odd side, got " +
                          std::to_string(rows) + "x" + std::to_string(cols));
  }
  std::vector<double> coeffs(static_cast<std::size_t>(rows) * cols);
  for (double& v : coeffs) {
    std::string token;
    if (!(in >> token)) throw TruncatedData("kernel has too few coefficients");
    std::size_t used = 0;
    try {
      v = std::stod(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size() || !std::isfinite(v)) {
      throw MalformedHeader("bad kernel coefficient '" + token + "'");
    }
  }
  return Kernel2D(rows, std::move(coeffs));
}

inline void save_kernel(const Kernel2D& k, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoFailure("cannot open " + path.string() + " for writing");
  write_kernel(k, out);
  out.flush();
  if (!out) throw IoFailure("write failed: " + path.string());
}

inline Kernel2D load_kernel(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoFailure("cannot open " + path.string());
  return read_kernel(in);
}

}  // namespace gmhbt
