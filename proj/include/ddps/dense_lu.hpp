#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ddps/core.hpp"
#include "ddps/dense_matrix.hpp"

namespace ddps {

/// Dense LU factorization with row partial pivoting: P*A = L*U with
/// unit-lower-triangular L (|entries| <= 1) and upper-triangular U, stored
/// packed in one matrix. Pivots are recorded LAPACK-style: at step k, rows k
/// and pivots[k] were swapped.
class LuFactor {
 public:
  /// Relative pivot-failure threshold against the largest entry of the
  /// input matrix. A pivot below it (or exactly zero) aborts the
  /// factorization and yields nullopt.
  static constexpr double kPivotRelTol = 1e-14;

  LuFactor() = default;

  static std::optional<LuFactor> try_factor(DenseMatrix a) {
    const index_t n = a.n_rows;
    LuFactor f;
    f.lu_ = std::move(a);
    f.piv_.resize(n);
    double amax = 0.0;
    for (double v : f.lu_.values) amax = std::max(amax, std::abs(v));
    for (index_t k = 0; k < n; ++k) {
      index_t p = k;
      double best = std::abs(f.lu_(k, k));
      for (index_t i = k + 1; i < n; ++i) {
        const double v = std::abs(f.lu_(i, k));
        if (v > best) {
          best = v;
          p = i;
        }
      }
      if (best == 0.0 || best < kPivotRelTol * amax) return std::nullopt;
      f.piv_[k] = p;
      if (p != k)
        for (index_t j = 0; j < n; ++j)
          std::swap(f.lu_(k, j), f.lu_(p, j));
      const double pivot = f.lu_(k, k);
      for (index_t i = k + 1; i < n; ++i) f.lu_(i, k) /= pivot;
      for (index_t j = k + 1; j < n; ++j) {
        const double ukj = f.lu_(k, j);
        if (ukj == 0.0) continue;
        double* colj = f.lu_.col(j);
        const double* colk = f.lu_.col(k);
        for (index_t i = k + 1; i < n; ++i) colj[i] -= colk[i] * ukj;
      }
    }
    return f;
  }

  index_t size() const { return lu_.n_rows; }

  /// Solves A*x = b in place (b overwritten with x).
  void solve_in_place(std::span<double> x) const {
    const index_t n = size();
    for (index_t k = 0; k < n; ++k)
      if (piv_[k] != k) std::swap(x[k], x[piv_[k]]);
    for (index_t k = 0; k < n; ++k) {  // L y = P b, unit diagonal
      const double xk = x[k];
      if (xk == 0.0) continue;
      const double* colk = lu_.col(k);
      for (index_t i = k + 1; i < n; ++i) x[i] -= colk[i] * xk;
    }
    for (index_t k = n - 1; k >= 0; --k) {  // U x = y
      x[k] /= lu_(k, k);
      const double xk = x[k];
      if (xk == 0.0) continue;
      const double* colk = lu_.col(k);
      for (index_t i = 0; i < k; ++i) x[i] -= colk[i] * xk;
    }
  }

  Vector solve(Vector b) const {
    solve_in_place(b);
    return b;
  }

  const DenseMatrix& packed() const { return lu_; }
  const std::vector<index_t>& pivots() const { return piv_; }

 private:
  DenseMatrix lu_;
  std::vector<index_t> piv_;
};

}  // namespace ddps
