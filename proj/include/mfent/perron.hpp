#pragma once

// Perron root and vector of a nonnegative primitive matrix by power
// iteration with repeated squaring. Convergence is certified by the Collatz-Wielandt bracket
//   min_i (Mv)_i / v_i <= rho(M) <= max_i (Mv)_i / v_i,
// which holds for every positive v.

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Core>

#include "mfent/errors.hpp"

namespace mfent {

template <typename Scalar>
struct PerronResult {
  Scalar root;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> vector;  // positive, max-normalized
  Scalar bracket_width;                              // hi - lo of the final bracket
  int iterations;
};

/// Iterates v <- B v with B a rescaled power M^(2^s) of the matrix, squaring B
/// between rounds, so slowly mixing matrices still converge in few rounds.
/// The bracket is always evaluated against M itself.
template <typename Derived>
PerronResult<typename Derived::Scalar> perron(const Eigen::MatrixBase<Derived>& matrix,
                                              typename Derived::Scalar rel_tol = 1e-13, int max_squarings = 60) {
  using Scalar = typename Derived::Scalar;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (matrix.rows() != matrix.cols() || matrix.rows() == 0)
    throw DomainError("Perron root needs a non-empty square matrix");
  if ((matrix.array() < Scalar(0)).any()) throw DomainError("Perron root needs a nonnegative matrix");
  const Matrix M = matrix;
  if (M.maxCoeff() == Scalar(0)) throw NumericError("zero matrix is not primitive");

  Matrix B = M / M.maxCoeff();
  Vector v = Vector::Ones(M.rows());
  int products = 0;
  for (int s = 0; s <= max_squarings; ++s) {
    for (int step = 0; step < 8; ++step) {
      const Vector w = B * v;
      ++products;
      if ((w.array() <= Scalar(0)).any()) break;
      v = w / w.maxCoeff();
      const Vector mv = M * v;
      if ((mv.array() <= Scalar(0)).any()) break;
      const Vector ratio = mv.cwiseQuotient(v);
      const Scalar lo = ratio.minCoeff();
      const Scalar hi = ratio.maxCoeff();
      if (hi - lo <= rel_tol * hi) return {Scalar(0.5) * (hi + lo), v, hi - lo, products};
    }
    B = B * B;
    const Scalar top = B.maxCoeff();
    if (!(top > Scalar(0))) break;
    B /= top;
  }
  throw NumericError("power iteration did not converge after " + std::to_string(max_squarings) +
                     " squarings; matrix may be periodic or reducible");
}

/// log of the Perron root.
template <typename Derived>
typename Derived::Scalar log_perron_root(const Eigen::MatrixBase<Derived>& matrix) {
  return std::log(perron(matrix).root);
}

}  // namespace mfent
