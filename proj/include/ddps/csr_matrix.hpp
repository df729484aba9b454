#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "ddps/core.hpp"
#include "ddps/errors.hpp"
#include "ddps/parallel.hpp"

namespace ddps {

struct Triplet {
  index_t row = 0;
  index_t col = 0;
  double value = 0.0;
};

/// Sparse matrix in compressed-row form.
///
/// Canonical form: row_ptr non-decreasing with row_ptr[0]=0 and
/// row_ptr[n_rows]=nnz, strictly increasing column indices within each row,
/// no explicitly stored zeros. Builders return canonical matrices; treat
/// instances as immutable afterwards (safe to share across threads).
struct CsrMatrix {
  index_t n_rows = 0;
  index_t n_cols = 0;
  std::vector<index_t> row_ptr{0};
  std::vector<index_t> col_idx;
  std::vector<double> values;

  index_t nnz() const { return static_cast<index_t>(col_idx.size()); }

  static CsrMatrix zero(index_t rows, index_t cols) {
    CsrMatrix a;
    a.n_rows = rows;
    a.n_cols = cols;
    a.row_ptr.assign(rows + 1, 0);
    return a;
  }

  static CsrMatrix identity(index_t n) {
    CsrMatrix a = zero(n, n);
    a.col_idx.resize(n);
    a.values.assign(n, 1.0);
    for (index_t i = 0; i < n; ++i) {
      a.row_ptr[i + 1] = i + 1;
      a.col_idx[i] = i;
    }
    return a;
  }

  /// Builds a canonical matrix from (row, col, value) entries. Duplicates
  /// are summed; entries that end up exactly zero are dropped.
  static CsrMatrix from_triplets(index_t rows, index_t cols,
                                 const std::vector<Triplet>& ts) {
    for (const Triplet& t : ts) {
      if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols)
        throw DimensionMismatch("triplet index out of range");
    }
    CsrMatrix a;
    a.n_rows = rows;
    a.n_cols = cols;
    a.row_ptr.assign(rows + 1, 0);
    for (const Triplet& t : ts) a.row_ptr[t.row + 1]++;
    std::partial_sum(a.row_ptr.begin(), a.row_ptr.end(), a.row_ptr.begin());
    a.col_idx.resize(ts.size());
    a.values.resize(ts.size());
    std::vector<index_t> fill(a.row_ptr.begin(), a.row_ptr.end() - 1);
    for (const Triplet& t : ts) {
      const index_t k = fill[t.row]++;
      a.col_idx[k] = t.col;
      a.values[k] = t.value;
    }
    a.canonicalize();
    return a;
  }

  /// Sorts each row by column, sums duplicates, drops explicit zeros.
  /// Idempotent.
  void canonicalize() {
    std::vector<index_t> new_ptr(n_rows + 1, 0);
    std::vector<index_t> new_col;
    std::vector<double> new_val;
    new_col.reserve(col_idx.size());
    new_val.reserve(values.size());
    std::vector<std::pair<index_t, double>> row;
    for (index_t i = 0; i < n_rows; ++i) {
      row.clear();
      for (index_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
        row.emplace_back(col_idx[k], values[k]);
      std::sort(row.begin(), row.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      for (std::size_t k = 0; k < row.size();) {
        const index_t c = row[k].first;
        double v = row[k].second;
        for (++k; k < row.size() && row[k].first == c; ++k) v += row[k].second;
        if (v != 0.0) {
          new_col.push_back(c);
          new_val.push_back(v);
        }
      }
      new_ptr[i + 1] = static_cast<index_t>(new_col.size());
    }
    row_ptr = std::move(new_ptr);
    col_idx = std::move(new_col);
    values = std::move(new_val);
  }

  bool is_canonical() const {
    if (row_ptr.size() != static_cast<std::size_t>(n_rows) + 1) return false;
    if (row_ptr.front() != 0 || row_ptr.back() != nnz()) return false;
    for (index_t i = 0; i < n_rows; ++i) {
      if (row_ptr[i] > row_ptr[i + 1]) return false;
      for (index_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
        if (col_idx[k] < 0 || col_idx[k] >= n_cols) return false;
        if (k > row_ptr[i] && col_idx[k] <= col_idx[k - 1]) return false;
        if (values[k] == 0.0) return false;
      }
    }
    return true;
  }
};

/// y = A*x. Row-parallel; each row is summed in stored column order, so the
/// result is identical for every thread count.
inline Vector spmv(const CsrMatrix& a, const Vector& x, int threads = 1) {
  if (static_cast<index_t>(x.size()) != a.n_cols)
    throw DimensionMismatch("spmv: vector length " + std::to_string(x.size()) +
                            " != n_cols " + std::to_string(a.n_cols));
  Vector y(a.n_rows);
  parallel_for(a.n_rows, threads, [&](index_t i) {
    double s = 0.0;
    for (index_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k)
      s += a.values[k] * x[a.col_idx[k]];
    y[i] = s;
  });
  return y;
}

inline CsrMatrix transpose(const CsrMatrix& a) {
  CsrMatrix t;
  t.n_rows = a.n_cols;
  t.n_cols = a.n_rows;
  t.row_ptr.assign(a.n_cols + 1, 0);
  for (index_t c : a.col_idx) t.row_ptr[c + 1]++;
  std::partial_sum(t.row_ptr.begin(), t.row_ptr.end(), t.row_ptr.begin());
  t.col_idx.resize(a.col_idx.size());
  t.values.resize(a.values.size());
  std::vector<index_t> fill(t.row_ptr.begin(), t.row_ptr.end() - 1);
  for (index_t i = 0; i < a.n_rows; ++i) {
    for (index_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
      const index_t pos = fill[a.col_idx[k]]++;
      t.col_idx[pos] = i;
      t.values[pos] = a.values[k];
    }
  }
  return t;  // rows visited in order, so output columns come out sorted
}

/// Induced infinity norm: max absolute row sum.
inline double inf_norm(const CsrMatrix& a) {
  double m = 0.0;
  for (index_t i = 0; i < a.n_rows; ++i) {
    double s = 0.0;
    for (index_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k)
      s += std::abs(a.values[k]);
    m = std::max(m, s);
  }
  return m;
}

/// Fraction of rows i with |a_ii| >= sum_{j != i} |a_ij|. Reporting
/// statistic only; the solver never consumes it.
inline double compute_diag_dominance(const CsrMatrix& a) {
  if (a.n_rows != a.n_cols) throw NotSquare("diag dominance needs square A");
  if (a.n_rows == 0) return 1.0;
  index_t dominant = 0;
  for (index_t i = 0; i < a.n_rows; ++i) {
    double diag = 0.0;
    double off = 0.0;
    for (index_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
      const double v = std::abs(a.values[k]);
      if (a.col_idx[k] == i)
        diag = v;
      else
        off += v;
    }
    if (diag >= off) ++dominant;
  }
  return static_cast<double>(dominant) / static_cast<double>(a.n_rows);
}

}  // namespace ddps
