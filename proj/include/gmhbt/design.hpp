#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "gmhbt/error.hpp"
#include "gmhbt/kernel.hpp"
#include "gmhbt/lsq.hpp"

namespace gmhbt {

/// How the cutoff term of the desired high-pass response is normalized.
///   butterworth: r^n / (0.4142 wc^{2n} + r^n)
///   literal:     r^n / (0.4142 wc^{2n} + r)
/// with r = w1^2 + w2^2 and n the response order.
enum class DenomForm { butterworth, literal };

inline std::string to_string(DenomForm f) {
  return f == DenomForm::butterworth ? "butterworth" : "literal";
}

inline DenomForm parse_denom_form(const std::string& name) {
  if (name == "butterworth") return DenomForm::butterworth;
  if (name == "literal") return DenomForm::literal;
  throw InvalidSpec("unknown denominator form '" + name + "'");
}

/// Parameters of the Gaussian-modulated tanh high-pass design.
struct DesignSpec {
  int size = 5;                  // odd kernel side
  double sigma_w = 0.7;          // tanh slope
  std::optional<double> support_w;  // region of support; default (size-1)/2
  std::optional<double> sigma_g;    // Gaussian envelope; default support/2
  double omega_c = std::numbers::pi / 4.0;
  int response_order = 2;
  DenomForm denom_form = DenomForm::butterworth;
  int grid_m = 33;
  int grid_k = 33;
  double weight_pass = 1.0;
  double weight_stop = 1.0;
  double dc_gain = 0.0;          // target of sum(h)

  double support() const {
    return support_w.value_or((size - 1) / 2.0);
  }
  double envelope_sigma() const { return sigma_g.value_or(support() / 2.0); }

  int radius() const { return (size - 1) / 2; }

  /// Count of unique coefficients of an octagonally symmetric kernel.
  int unique_count() const { return (radius() + 1) * (radius() + 2) / 2; }

  void validate() const {
    auto fail = [](const std::string& msg) { throw InvalidSpec(msg); };
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (size < 3 || size % 2 == 0) fail("size must be odd and >= 3");
    if (!positive(sigma_w)) fail("sigma_w must be > 0");
    if (!positive(support())) fail("support_w must be > 0");
    if (!positive(envelope_sigma())) fail("sigma_g must be > 0");
    if (!positive(omega_c) || omega_c >= std::numbers::pi) {
      fail("omega_c must lie in (0, pi)");
    }
    if (response_order < 1) fail("response_order must be >= 1");
    if (grid_m < size || grid_k < size) fail("grid_m and grid_k must be >= size");
    if (static_cast<long>(grid_m) * grid_k < unique_count()) {
      fail("frequency grid smaller than the number of unknowns");
    }
    if (!positive(weight_pass) || !positive(weight_stop)) {
      fail("band weights must be > 0");
    }
    if (!std::isfinite(dc_gain)) fail("dc_gain must be finite");
  }
};

enum class Band { stop, transition, pass };

/// Sample points (w1, w2) in [0, pi]^2 with their band labels.
struct FrequencyGrid {
  std::vector<std::pair<double, double>> points;
  std::vector<Band> bands;

  std::size_t size() const { return points.size(); }
};

/// Gaussian-modulated hyperbolic tangent profile on the square support
/// |x1|, |x2| <= w:
///   exp(-(x1^2 + x2^2) / (2 sg^2)) * (1 - e^{sw (x1 + x2)}) / (1 + e^{sw (x1 + x2)})
/// The tanh factor equals -tanh(sw u / 2), u = x1 + x2.
inline double gmhbt_sample(double x1, double x2, const DesignSpec& spec) {
  const double w = spec.support();
  if (std::abs(x1) > w || std::abs(x2) > w) return 0.0;
  const double sg = spec.envelope_sigma();
  const double envelope = std::exp(-(x1 * x1 + x2 * x2) / (2.0 * sg * sg));
  // Written with tanh to stay finite for large |u|; identical in value.
  return envelope * -std::tanh(spec.sigma_w * (x1 + x2) / 2.0);
}

/// Desired zero-phase high-pass magnitude with -3 dB knee at omega_c.
inline double desired_hp_response(double omega1, double omega2,
                                  const DesignSpec& spec) {
  const double r = omega1 * omega1 + omega2 * omega2;
  const int n = spec.response_order;
  const double num = std::pow(r, n);
  const double knee = 0.4142 * std::pow(spec.omega_c, 2 * n);
  const double tail = spec.denom_form == DenomForm::butterworth ? num : r;
  const double den = knee + tail;
  return den > 0.0 ? num / den : 0.0;
}

/// Uniform M x K lattice over [0, pi]^2. Points inside 0.9 wc are stop band,
/// beyond 1.1 wc pass band, the annulus between is a don't-care region.
inline FrequencyGrid build_grid(const DesignSpec& spec) {
  if (spec.grid_m < 2 || spec.grid_k < 2) {
    throw InvalidSpec("grid_m and grid_k must be >= 2");
  }
  const double pi = std::numbers::pi;
  FrequencyGrid grid;
  grid.points.reserve(static_cast<std::size_t>(spec.grid_m) * spec.grid_k);
  for (int m = 0; m < spec.grid_m; ++m) {
    const double w1 = pi * m / (spec.grid_m - 1);
    for (int n = 0; n < spec.grid_k; ++n) {
      const double w2 = pi * n / (spec.grid_k - 1);
      const double radius = std::hypot(w1, w2);
      Band band = Band::transition;
      if (radius < 0.9 * spec.omega_c) band = Band::stop;
      else if (radius > 1.1 * spec.omega_c) band = Band::pass;
      grid.points.emplace_back(w1, w2);
      grid.bands.push_back(band);
    }
  }
  return grid;
}

/// Magnitude of the DTFT of the GMHBT profile sampled on the integer lattice
/// of its support, at every grid point.
inline Eigen::VectorXd gmhbt_frequency_response(const DesignSpec& spec,
                                                const FrequencyGrid& grid) {
  const int extent = static_cast<int>(std::ceil(spec.support()));
  struct Tap {
    int x1, x2;
    double value;
  };
  std::vector<Tap> taps;
  for (int x1 = -extent; x1 <= extent; ++x1) {
    for (int x2 = -extent; x2 <= extent; ++x2) {
      const double v = gmhbt_sample(x1, x2, spec);
      if (v != 0.0) taps.push_back({x1, x2, v});
    }
  }
  Eigen::VectorXd out(static_cast<Eigen::Index>(grid.size()));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto [w1, w2] = grid.points[i];
    double re = 0.0, im = 0.0;
    for (const Tap& t : taps) {
      const double phase = w1 * t.x1 + w2 * t.x2;
      re += t.value * std::cos(phase);
      im -= t.value * std::sin(phase);
    }
    out[static_cast<Eigen::Index>(i)] = std::hypot(re, im);
  }
  return out;
}

/// D' = H * |G| on the grid, rescaled to a maximum of exactly 1.
inline Eigen::VectorXd composite_target(const DesignSpec& spec,
                                        const FrequencyGrid& grid) {
  Eigen::VectorXd target = gmhbt_frequency_response(spec, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto [w1, w2] = grid.points[i];
    target[static_cast<Eigen::Index>(i)] *= desired_hp_response(w1, w2, spec);
  }
  const double peak = target.size() ? target.maxCoeff() : 0.0;
  if (!(peak > 0.0) || !std::isfinite(peak)) {
    throw DegenerateTarget("composite response vanishes on the grid");
  }
  target /= peak;  // the peak entry becomes exactly 1
  return target;
}

/// Unique coefficient indices (i, j) with 0 <= j <= i <= radius, ordered
/// (0,0),(1,0),(1,1),(2,0),...
inline std::vector<std::pair<int, int>> unique_indices(int radius) {
  std::vector<std::pair<int, int>> idx;
  for (int i = 0; i <= radius; ++i) {
    for (int j = 0; j <= i; ++j) idx.emplace_back(i, j);
  }
  return idx;
}

/// Distinct lattice points (+-a, +-b), (+-b, +-a) that share one coefficient.
inline std::vector<std::pair<int, int>> symmetry_orbit(int a, int b) {
  std::vector<std::pair<int, int>> orbit;
  auto add = [&](int x, int y) {
    for (const auto& p : orbit) {
      if (p.first == x && p.second == y) return;
    }
    orbit.emplace_back(x, y);
  };
  for (int s1 : {1, -1}) {
    for (int s2 : {1, -1}) {
      add(s1 * a, s2 * b);
      add(s2 * b, s1 * a);
    }
  }
  return orbit;
}

/// Cosine basis of the zero-phase response of an octagonally symmetric
/// kernel, plus band weights. A g is the exact real frequency response.
inline LsqSystem build_basis_matrix(const DesignSpec& spec,
                                    const FrequencyGrid& grid) {
  const auto indices = unique_indices(spec.radius());
  const auto rows = static_cast<Eigen::Index>(grid.size());
  const auto cols = static_cast<Eigen::Index>(indices.size());
  LsqSystem sys;
  sys.A.resize(rows, cols);
  sys.weights.resize(rows);
  for (Eigen::Index p = 0; p < cols; ++p) {
    const auto orbit = symmetry_orbit(indices[p].first, indices[p].second);
    for (Eigen::Index r = 0; r < rows; ++r) {
      const auto [w1, w2] = grid.points[static_cast<std::size_t>(r)];
      double acc = 0.0;
      for (const auto& [a, b] : orbit) acc += std::cos(w1 * a + w2 * b);
      sys.A(r, p) = acc;
    }
  }
  for (Eigen::Index r = 0; r < rows; ++r) {
    switch (grid.bands[static_cast<std::size_t>(r)]) {
      case Band::pass: sys.weights[r] = spec.weight_pass; break;
      case Band::stop: sys.weights[r] = spec.weight_stop; break;
      case Band::transition: sys.weights[r] = 0.0; break;
    }
  }
  sys.target = Eigen::VectorXd::Zero(rows);
  sys.B.resize(0, cols);
  sys.b.resize(0);
  return sys;
}

/// Row expressing sum(h) over the full kernel in terms of unique coefficients.
inline Eigen::RowVectorXd dc_constraint_row(int radius) {
  const auto indices = unique_indices(radius);
  Eigen::RowVectorXd row(static_cast<Eigen::Index>(indices.size()));
  for (std::size_t p = 0; p < indices.size(); ++p) {
    row[static_cast<Eigen::Index>(p)] = static_cast<double>(
        symmetry_orbit(indices[p].first, indices[p].second).size());
  }
  return row;
}

/// Expands unique coefficients into the full symmetric kernel.
inline Kernel2D assemble_kernel(const Eigen::VectorXd& g, int size) {
  if (size < 1 || size % 2 == 0) {
    throw InvalidSpec("kernel side must be odd, got " + std::to_string(size));
  }
  const int radius = (size - 1) / 2;
  const auto indices = unique_indices(radius);
  if (static_cast<std::size_t>(g.size()) != indices.size()) {
    throw LengthMismatch("expected " + std::to_string(indices.size()) +
                         " unique coefficients for size " +
                         std::to_string(size) + ", got " +
                         std::to_string(g.size()));
  }
  Kernel2D k(size);
  for (std::size_t p = 0; p < indices.size(); ++p) {
    for (const auto& [a, b] : symmetry_orbit(indices[p].first, indices[p].second)) {
      k.at(a, b) = g[static_cast<Eigen::Index>(p)];
    }
  }
  return k;
}

/// Published 5 x 5 coefficients for sigma_w = 0.7. Kept as opaque reference
/// data: the envelope, grid, weights and constraint behind them are unknown,
/// so designs here are not expected to reproduce the numbers.
inline Kernel2D reference_table_i() {
  return Kernel2D(5, {0.8854, 0.7818, 0.6044, 0.7818, 0.8854,
                      0.7818, 0.6044, 0.3364, 0.6044, 0.7818,
                      0.6044, 0.3364, 0.0,    0.3364, 0.6044,
                      0.7818, 0.6044, 0.3364, 0.6044, 0.7818,
                      0.8854, 0.7818, 0.6044, 0.7818, 0.8854});
}

/// Everything produced by one design run, for reporting and diagnostics.
struct DesignResult {
  Kernel2D kernel;
  LsqSystem system;
  FrequencyGrid grid;
  Eigen::VectorXd g;
  double condition = 0.0;
};

inline DesignResult design_gmhbt_hp_detailed(const DesignSpec& spec) {
  spec.validate();
  DesignResult out;
  out.grid = build_grid(spec);
  out.system = build_basis_matrix(spec, out.grid);
  out.system.target = composite_target(spec, out.grid);
  out.system.B = dc_constraint_row(spec.radius());
  out.system.b = Eigen::VectorXd::Constant(1, spec.dc_gain);
  const LsqSolution sol = solve_constrained(out.system);
  out.g = sol.g;
  out.condition = sol.condition;
  out.kernel = assemble_kernel(sol.g, spec.size);
  return out;
}

/// Designs the high-pass kernel: grid, composite target, cosine basis,
/// DC equality constraint, KKT solve, symmetric expansion.
inline Kernel2D design_gmhbt_hp(const DesignSpec& spec) {
  return design_gmhbt_hp_detailed(spec).kernel;
}

}  // namespace gmhbt
