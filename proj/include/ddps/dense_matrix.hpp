#pragma once

#include <string>
#include <vector>

#include "ddps/core.hpp"
#include "ddps/csr_matrix.hpp"
#include "ddps/errors.hpp"

namespace ddps {

/// Column-major dense matrix.
struct DenseMatrix {
  index_t n_rows = 0;
  index_t n_cols = 0;
  std::vector<double> values;  // length n_rows * n_cols, column-major

  DenseMatrix() = default;
  DenseMatrix(index_t rows, index_t cols)
      : n_rows(rows), n_cols(cols), values(rows * cols, 0.0) {}

  double& operator()(index_t r, index_t c) { return values[c * n_rows + r]; }
  double operator()(index_t r, index_t c) const {
    return values[c * n_rows + r];
  }

  double* col(index_t c) { return values.data() + c * n_rows; }
  const double* col(index_t c) const { return values.data() + c * n_rows; }

  static DenseMatrix identity(index_t n) {
    DenseMatrix m(n, n);
    for (index_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }
};

inline DenseMatrix dense_from_csr(const CsrMatrix& a) {
  DenseMatrix m(a.n_rows, a.n_cols);
  for (index_t i = 0; i < a.n_rows; ++i)
    for (index_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k)
      m(i, a.col_idx[k]) = a.values[k];
  return m;
}

/// y = G*x with a fixed column-order accumulation per row.
inline Vector dense_gemv(const DenseMatrix& g, const Vector& x) {
  if (static_cast<index_t>(x.size()) != g.n_cols)
    throw DimensionMismatch("dense_gemv: vector length " +
                            std::to_string(x.size()) + " != n_cols " +
                            std::to_string(g.n_cols));
  Vector y(g.n_rows, 0.0);
  for (index_t j = 0; j < g.n_cols; ++j) {
    const double xj = x[j];
    const double* gj = g.col(j);
    for (index_t i = 0; i < g.n_rows; ++i) y[i] += gj[i] * xj;
  }
  return y;
}

}  // namespace ddps
