#pragma once

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ddps/core.hpp"
#include "ddps/csr_matrix.hpp"
#include "ddps/errors.hpp"

namespace ddps {
namespace mm_detail {

inline std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

/// Advances to the next line that is neither blank nor a "%" comment.
inline bool next_data_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    std::size_t i = line.find_first_not_of(" \t\r\n");
    if (i == std::string::npos) continue;
    if (line[i] == '%') continue;
    return true;
  }
  return false;
}

enum class Symmetry { general, symmetric, skew };

struct Header {
  bool coordinate = true;
  Symmetry symmetry = Symmetry::general;
};

inline Header read_header(std::istream& in, const std::string& name) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(name + ": empty file");
  std::istringstream is(line);
  std::string banner, object, format, field, symmetry;
  if (!(is >> banner >> object >> format >> field >> symmetry))
    throw ParseError(name + ": malformed Matrix Market banner");
  if (banner != "%%MatrixMarket")
    throw ParseError(name + ": missing %%MatrixMarket banner");
  if (lower(object) != "matrix")
    throw ParseError(name + ": unsupported object '" + object + "'");
  Header h;
  const std::string fmt = lower(format);
  if (fmt == "coordinate")
    h.coordinate = true;
  else if (fmt == "array")
    h.coordinate = false;
  else
    throw ParseError(name + ": unsupported format '" + format + "'");
  const std::string fld = lower(field);
  if (fld == "complex" || fld == "pattern")
    throw UnsupportedField(name + ": field '" + fld + "' not supported");
  if (fld != "real" && fld != "integer")
    throw ParseError(name + ": unknown field '" + field + "'");
  const std::string sym = lower(symmetry);
  if (sym == "general")
    h.symmetry = Symmetry::general;
  else if (sym == "symmetric")
    h.symmetry = Symmetry::symmetric;
  else if (sym == "skew-symmetric")
    h.symmetry = Symmetry::skew;
  else if (sym == "hermitian")
    throw UnsupportedField(name + ": hermitian storage not supported");
  else
    throw ParseError(name + ": unknown symmetry '" + symmetry + "'");
  return h;
}

}  // namespace mm_detail

/// Reads a Matrix Market file (coordinate or array; real or integer field;
/// general, symmetric, or skew-symmetric storage). Symmetric and skew
/// storage is expanded to full general form, duplicates are summed, and the
/// result is canonical. Indices are 1-based on disk, 0-based in memory.
inline CsrMatrix read_matrix_market(std::istream& in,
                                    const std::string& name = "<stream>") {
  using namespace mm_detail;
  const Header h = read_header(in, name);
  std::string line;
  if (!next_data_line(in, line))
    throw ParseError(name + ": missing size line");
  std::istringstream sz(line);
  index_t rows = 0, cols = 0, declared = 0;
  if (h.coordinate) {
    if (!(sz >> rows >> cols >> declared) || rows < 0 || cols < 0 ||
        declared < 0)
      throw ParseError(name + ": malformed coordinate size line");
  } else {
    if (!(sz >> rows >> cols) || rows < 0 || cols < 0)
      throw ParseError(name + ": malformed array size line");
  }
  if (h.symmetry != Symmetry::general && rows != cols)
    throw ParseError(name + ": symmetric storage requires a square matrix");

  std::vector<Triplet> ts;
  if (h.coordinate) {
    ts.reserve(declared);
    for (index_t k = 0; k < declared; ++k) {
      if (!next_data_line(in, line))
        throw ParseError(name + ": expected " + std::to_string(declared) +
                         " entries, file ended after " + std::to_string(k));
      std::istringstream is(line);
      index_t i = 0, j = 0;
      double v = 0.0;
      if (!(is >> i >> j >> v))
        throw ParseError(name + ": malformed entry '" + line + "'");
      if (i < 1 || i > rows || j < 1 || j > cols)
        throw ParseError(name + ": entry index out of range in '" + line + "'");
      ts.push_back({i - 1, j - 1, v});
      if (h.symmetry != Symmetry::general && i != j)
        ts.push_back({j - 1, i - 1, h.symmetry == Symmetry::skew ? -v : v});
    }
  } else {
    // Array storage lists the dense values column by column; symmetric and
    // skew variants list only the lower triangle of each column.
    for (index_t j = 0; j < cols; ++j) {
      index_t i0 = 0;
      if (h.symmetry == Symmetry::symmetric) i0 = j;
      if (h.symmetry == Symmetry::skew) i0 = j + 1;
      for (index_t i = i0; i < rows; ++i) {
        double v;
        if (!(in >> v))
          throw ParseError(name + ": array body ended early");
        if (v != 0.0) {
          ts.push_back({i, j, v});
          if (h.symmetry != Symmetry::general && i != j)
            ts.push_back({j, i, h.symmetry == Symmetry::skew ? -v : v});
        }
      }
    }
  }
  return CsrMatrix::from_triplets(rows, cols, ts);
}

inline CsrMatrix read_matrix_market(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open '" + path + "'");
  return read_matrix_market(f, path);
}

/// Reads a vector stored as an n-by-1 (or 1-by-n) Matrix Market matrix.
inline Vector read_vector_market(std::istream& in,
                                 const std::string& name = "<stream>") {
  const CsrMatrix a = read_matrix_market(in, name);
  if (a.n_cols != 1 && a.n_rows != 1)
    throw DimensionMismatch(name + ": not a vector (" +
                            std::to_string(a.n_rows) + "x" +
                            std::to_string(a.n_cols) + ")");
  const bool column = a.n_cols == 1;
  Vector v(column ? a.n_rows : a.n_cols, 0.0);
  for (index_t i = 0; i < a.n_rows; ++i)
    for (index_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k)
      v[column ? i : a.col_idx[k]] = a.values[k];
  return v;
}

inline Vector read_vector_market(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open '" + path + "'");
  return read_vector_market(f, path);
}

/// Writes coordinate/real/general with full double precision; reading the
/// file back reproduces the canonical triple exactly.
inline void write_matrix_market(std::ostream& out, const CsrMatrix& a) {
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << a.n_rows << " " << a.n_cols << " " << a.nnz() << "\n";
  char buf[40];
  for (index_t i = 0; i < a.n_rows; ++i)
    for (index_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
      std::snprintf(buf, sizeof(buf), "%.17g", a.values[k]);
      out << (i + 1) << " " << (a.col_idx[k] + 1) << " " << buf << "\n";
    }
}

inline void write_matrix_market(const std::string& path, const CsrMatrix& a) {
  std::ofstream f(path);
  if (!f) throw Error("cannot open '" + path + "' for writing");
  write_matrix_market(f, a);
}

inline void write_vector_market(std::ostream& out, const Vector& v) {
  out << "%%MatrixMarket matrix array real general\n";
  out << v.size() << " 1\n";
  char buf[40];
  for (double x : v) {
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    out << buf << "\n";
  }
}

inline void write_vector_market(const std::string& path, const Vector& v) {
  std::ofstream f(path);
  if (!f) throw Error("cannot open '" + path + "' for writing");
  write_vector_market(f, v);
}

}  // namespace ddps
