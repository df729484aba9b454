#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace ddps {

using index_t = std::int64_t;

/// Dense vector of doubles. All public operations leave finite entries
/// unless they report an error.
using Vector = std::vector<double>;

/// Max-magnitude entry; 0 for an empty vector.
inline double inf_norm(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

/// Sequential dot product with a fixed summation order.
inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline bool all_finite(std::span<const double> x) {
  for (double v : x)
    if (!std::isfinite(v)) return false;
  return true;
}

}  // namespace ddps
