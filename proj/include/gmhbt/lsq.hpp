#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "gmhbt/error.hpp"

namespace gmhbt {

/// Weighted, equality-constrained least-squares problem
///   minimize (A g - target)^T W (A g - target)  subject to  B g = b
/// with W diagonal.
struct LsqSystem {
  Eigen::MatrixXd A;
  Eigen::VectorXd weights;  // diagonal of W
  Eigen::VectorXd target;   // D'
  Eigen::MatrixXd B;        // C x P, may have zero rows
  Eigen::VectorXd b;        // length C

  Eigen::Index unknowns() const { return A.cols(); }
  Eigen::Index constraints() const { return B.rows(); }

  /// R = A^T W A
  Eigen::MatrixXd normal_matrix() const {
    return A.transpose() * weights.asDiagonal() * A;
  }
  /// d = A^T W D'
  Eigen::VectorXd normal_rhs() const {
    return A.transpose() * (weights.asDiagonal() * target);
  }

  double objective(const Eigen::VectorXd& g) const {
    const Eigen::VectorXd e = A * g - target;
    return e.dot(weights.asDiagonal() * e);
  }
};

struct LsqSolution {
  Eigen::VectorXd g;
  /// max |U_ii| / min |U_ii| of the LU factor of the solved system.
  double condition = 0.0;
};

inline constexpr double kMaxCondition = 1e12;

namespace lsq_detail {

inline void check_shapes(const LsqSystem& sys) {
  const auto rows = sys.A.rows();
  if (rows == 0 || sys.A.cols() == 0) throw LengthMismatch("empty basis matrix");
  if (sys.weights.size() != rows || sys.target.size() != rows) {
    throw LengthMismatch("weights/target length must equal row count of A");
  }
  if (sys.B.rows() > 0 && sys.B.cols() != sys.A.cols()) {
    throw LengthMismatch("constraint matrix column count must equal unknowns");
  }
  if (sys.b.size() != sys.B.rows()) {
    throw LengthMismatch("constraint target length must equal rows of B");
  }
  if ((sys.weights.array() < 0.0).any() || !(sys.weights.array() > 0.0).any() ||
      !sys.weights.allFinite()) {
    throw InvalidSpec("weights must be finite, nonnegative, not all zero");
  }
}

inline LsqSolution lu_solve(const Eigen::MatrixXd& M, const Eigen::VectorXd& rhs) {
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(M);
  const Eigen::VectorXd diag = lu.matrixLU().diagonal().cwiseAbs();
  const double lo = diag.minCoeff();
  const double hi = diag.maxCoeff();
  const double condition =
      lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
  if (!(condition <= kMaxCondition)) {
    throw RankDeficient("condition estimate " + std::to_string(condition) +
                        " exceeds 1e12");
  }
  return {lu.solve(rhs), condition};
}

}  // namespace lsq_detail

/// Unconstrained weighted least squares through the normal equations R g = d.
inline LsqSolution solve_lsq(const LsqSystem& sys) {
  lsq_detail::check_shapes(sys);
  return lsq_detail::lu_solve(sys.normal_matrix(), sys.normal_rhs());
}

/// Equality-constrained weighted least squares via the KKT system
///   [R  B^T] [g     ]   [d]
///   [B  0  ] [lambda] = [b]
/// An empty B reduces to solve_lsq.
inline LsqSolution solve_constrained(const LsqSystem& sys) {
  lsq_detail::check_shapes(sys);
  const auto p = sys.unknowns();
  const auto c = sys.constraints();
  if (c == 0) return solve_lsq(sys);

  // Dependent constraint rows make the KKT matrix singular; tell apart a
  // contradictory set from a merely redundant one.
  Eigen::FullPivLU<Eigen::MatrixXd> rank_check(sys.B);
  rank_check.setThreshold(1e-12);
  if (rank_check.rank() < c) {
    const Eigen::VectorXd g0 = sys.B.completeOrthogonalDecomposition().solve(sys.b);
    const double residual = (sys.B * g0 - sys.b).cwiseAbs().maxCoeff();
    if (residual > 1e-9 * (1.0 + sys.b.cwiseAbs().maxCoeff())) {
      throw InfeasibleConstraint("B g = b has no solution (residual " +
                                 std::to_string(residual) + ")");
    }
    throw RankDeficient("constraint matrix lacks full row rank");
  }

  Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(p + c, p + c);
  kkt.topLeftCorner(p, p) = sys.normal_matrix();
  kkt.topRightCorner(p, c) = sys.B.transpose();
  kkt.bottomLeftCorner(c, p) = sys.B;
  Eigen::VectorXd rhs(p + c);
  rhs << sys.normal_rhs(), sys.b;

  LsqSolution full = lsq_detail::lu_solve(kkt, rhs);
  return {full.g.head(p), full.condition};
}

}  // namespace gmhbt
