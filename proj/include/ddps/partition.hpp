#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "ddps/core.hpp"
#include "ddps/csr_matrix.hpp"
#include "ddps/errors.hpp"

namespace ddps {

/// Block-row partition of 0..n into consecutive parts, optionally preceded
/// by a symmetric permutation. perm[k] is the original row placed at
/// position k; an empty perm means identity.
struct Partition {
  index_t n_parts = 0;
  std::vector<index_t> boundaries;  // length n_parts+1, strictly increasing
  std::vector<index_t> perm;
  std::vector<index_t> inv_perm;

  bool has_perm() const { return !perm.empty(); }
  index_t n() const { return boundaries.empty() ? 0 : boundaries.back(); }
  index_t part_size(index_t i) const {
    return boundaries[i + 1] - boundaries[i];
  }
  /// Part containing (permuted) row index r.
  index_t part_of(index_t r) const {
    return std::upper_bound(boundaries.begin(), boundaries.end(), r) -
           boundaries.begin() - 1;
  }
};

/// (|A| + |A^T|)/2 in canonical CSR; the result is symmetric in both
/// pattern and values.
inline CsrMatrix symmetrize_pattern(const CsrMatrix& a) {
  if (a.n_rows != a.n_cols) throw NotSquare("symmetrize_pattern needs square A");
  const CsrMatrix at = transpose(a);
  CsrMatrix s;
  s.n_rows = a.n_rows;
  s.n_cols = a.n_cols;
  s.row_ptr.assign(a.n_rows + 1, 0);
  s.col_idx.reserve(a.nnz());
  s.values.reserve(a.nnz());
  for (index_t i = 0; i < a.n_rows; ++i) {
    index_t ka = a.row_ptr[i], kb = at.row_ptr[i];
    const index_t ea = a.row_ptr[i + 1], eb = at.row_ptr[i + 1];
    while (ka < ea || kb < eb) {
      index_t ca = ka < ea ? a.col_idx[ka] : s.n_cols;
      index_t cb = kb < eb ? at.col_idx[kb] : s.n_cols;
      double v = 0.0;
      index_t c;
      if (ca <= cb) {
        c = ca;
        v += 0.5 * std::abs(a.values[ka++]);
      } else {
        c = cb;
      }
      if (cb == c && kb < eb) v += 0.5 * std::abs(at.values[kb++]);
      s.col_idx.push_back(c);
      s.values.push_back(v);
    }
    s.row_ptr[i + 1] = static_cast<index_t>(s.col_idx.size());
  }
  return s;
}

/// Near-equal consecutive blocks; sizes differ by at most one, larger
/// blocks first. No permutation.
inline Partition partition_contiguous(index_t n, index_t p) {
  if (p < 1 || p > n)
    throw InvalidPartCount("partition count " + std::to_string(p) +
                           " not in [1, " + std::to_string(n) + "]");
  Partition part;
  part.n_parts = p;
  part.boundaries.resize(p + 1);
  const index_t base = n / p, rem = n % p;
  part.boundaries[0] = 0;
  for (index_t i = 0; i < p; ++i)
    part.boundaries[i + 1] = part.boundaries[i] + base + (i < rem ? 1 : 0);
  return part;
}

namespace part_detail {

/// Recursive BFS level-set bisection. Within each subgraph, components are
/// processed in order of their lowest vertex id and assigned greedily to
/// the side with more remaining capacity; a component that overflows its
/// side is cut in BFS level order from a pseudo-peripheral root.
class Bisector {
 public:
  explicit Bisector(const CsrMatrix& s) : n_(s.n_rows), adj_(s.n_rows) {
    for (index_t i = 0; i < n_; ++i)
      for (index_t k = s.row_ptr[i]; k < s.row_ptr[i + 1]; ++k)
        if (s.col_idx[k] != i) adj_[i].push_back(s.col_idx[k]);
    in_subset_.assign(n_, 0);
    visited_.assign(n_, 0);
    level_.assign(n_, -1);
  }

  Partition run(index_t nparts) {
    std::vector<index_t> all(n_);
    std::iota(all.begin(), all.end(), 0);
    recurse(std::move(all), nparts);
    Partition part;
    part.n_parts = nparts;
    part.boundaries.assign(1, 0);
    part.perm.reserve(n_);
    for (const auto& vs : parts_) {
      part.perm.insert(part.perm.end(), vs.begin(), vs.end());
      part.boundaries.push_back(static_cast<index_t>(part.perm.size()));
    }
    part.inv_perm.resize(n_);
    for (index_t k = 0; k < n_; ++k) part.inv_perm[part.perm[k]] = k;
    return part;
  }

 private:
  void recurse(std::vector<index_t> verts, index_t nparts) {
    if (nparts == 1) {
      parts_.push_back(std::move(verts));  // kept ascending: stable in part
      return;
    }
    const index_t size = static_cast<index_t>(verts.size());
    const index_t nl = (nparts + 1) / 2, nr = nparts - nl;
    index_t target = static_cast<index_t>(
        std::llround(static_cast<double>(size) * nl / nparts));
    target = std::clamp(target, nl, size - nr);

    for (index_t v : verts) in_subset_[v] = 1;
    for (index_t v : verts) visited_[v] = 0;
    std::vector<index_t> left, right;
    index_t rem_l = target, rem_r = size - target;
    for (index_t v : verts) {
      if (visited_[v]) continue;
      std::vector<index_t> comp = component_level_order(v);
      const bool to_left = rem_l >= rem_r;
      auto& prim = to_left ? left : right;
      auto& prem = to_left ? rem_l : rem_r;
      auto& other = to_left ? right : left;
      auto& orem = to_left ? rem_r : rem_l;
      const index_t cs = static_cast<index_t>(comp.size());
      if (cs <= prem) {
        prim.insert(prim.end(), comp.begin(), comp.end());
        prem -= cs;
      } else {
        prim.insert(prim.end(), comp.begin(), comp.begin() + prem);
        other.insert(other.end(), comp.begin() + prem, comp.end());
        orem -= cs - prem;
        prem = 0;
      }
    }
    for (index_t v : verts) in_subset_[v] = 0;
    std::sort(left.begin(), left.end());
    std::sort(right.begin(), right.end());
    recurse(std::move(left), nl);
    recurse(std::move(right), nr);
  }

  /// Component of `seed` within the current subset, ordered by BFS level
  /// from a pseudo-peripheral root (ties within a level by vertex id).
  /// Marks its members visited.
  std::vector<index_t> component_level_order(index_t seed) {
    std::vector<index_t> comp;
    bfs(seed, comp);
    for (index_t v : comp) visited_[v] = 1;
    index_t root = seed;
    index_t ecc = levelize(root, comp);
    for (int round = 0; round < 4; ++round) {
      index_t cand = n_;
      for (index_t v : comp)
        if (level_[v] == ecc && v < cand) cand = v;
      const index_t ecc2 = levelize(cand, comp);
      if (ecc2 > ecc) {
        root = cand;
        ecc = ecc2;
      } else {
        levelize(root, comp);
        break;
      }
    }
    std::vector<std::vector<index_t>> buckets(ecc + 1);
    for (index_t v : comp) buckets[level_[v]].push_back(v);
    comp.clear();
    for (auto& b : buckets) {
      std::sort(b.begin(), b.end());
      comp.insert(comp.end(), b.begin(), b.end());
    }
    return comp;
  }

  void bfs(index_t seed, std::vector<index_t>& out) {
    out.push_back(seed);
    level_[seed] = 0;
    for (std::size_t head = 0; head < out.size(); ++head) {
      const index_t u = out[head];
      for (index_t w : adj_[u])
        if (in_subset_[w] && level_[w] < 0) {
          level_[w] = level_[u] + 1;
          out.push_back(w);
        }
    }
    for (index_t v : out) level_[v] = -1;
  }

  /// BFS distances from root over comp; returns the eccentricity.
  index_t levelize(index_t root, const std::vector<index_t>& comp) {
    for (index_t v : comp) level_[v] = -1;
    std::vector<index_t> queue{root};
    level_[root] = 0;
    index_t ecc = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const index_t u = queue[head];
      for (index_t w : adj_[u])
        if (in_subset_[w] && visited_[w] && level_[w] < 0) {
          level_[w] = level_[u] + 1;
          ecc = std::max(ecc, level_[w]);
          queue.push_back(w);
        }
    }
    return ecc;
  }

  index_t n_;
  std::vector<std::vector<index_t>> adj_;
  std::vector<char> in_subset_, visited_;
  std::vector<index_t> level_;
  std::vector<std::vector<index_t>> parts_;
};

}  // namespace part_detail

/// Heuristic edge-cut-reducing partition of a structurally symmetric
/// pattern. The permutation groups each part's vertices consecutively; no
/// quality guarantee is part of the contract.
inline Partition partition_bisection(const CsrMatrix& s, index_t p) {
  if (s.n_rows != s.n_cols) throw NotSquare("partition_bisection needs square S");
  if (p < 1 || p > s.n_rows)
    throw InvalidPartCount("partition count " + std::to_string(p) +
                           " not in [1, " + std::to_string(s.n_rows) + "]");
  return part_detail::Bisector(s).run(p);
}

/// Reads a METIS-style part vector: n whitespace-separated 0-based part
/// ids, one per row. Rows are grouped by part id, stable within a part.
inline Partition read_partition_file(const std::string& path, index_t n) {
  std::ifstream f(path);
  if (!f) throw BadPartVector("cannot open '" + path + "'");
  std::vector<index_t> ids;
  ids.reserve(n);
  index_t id;
  while (f >> id) ids.push_back(id);
  if (!f.eof()) throw BadPartVector(path + ": non-integer token");
  if (static_cast<index_t>(ids.size()) != n)
    throw BadPartVector(path + ": expected " + std::to_string(n) +
                        " part ids, found " + std::to_string(ids.size()));
  index_t p = 0;
  for (index_t v : ids) {
    if (v < 0) throw BadPartVector(path + ": negative part id");
    p = std::max(p, v + 1);
  }
  std::vector<index_t> count(p, 0);
  for (index_t v : ids) count[v]++;
  for (index_t i = 0; i < p; ++i)
    if (count[i] == 0)
      throw BadPartVector(path + ": part id " + std::to_string(i) +
                          " never occurs");
  Partition part;
  part.n_parts = p;
  part.boundaries.assign(1, 0);
  for (index_t i = 0; i < p; ++i)
    part.boundaries.push_back(part.boundaries.back() + count[i]);
  part.perm.resize(n);
  std::iota(part.perm.begin(), part.perm.end(), 0);
  std::stable_sort(part.perm.begin(), part.perm.end(),
                   [&ids](index_t a, index_t b) { return ids[a] < ids[b]; });
  part.inv_perm.resize(n);
  for (index_t k = 0; k < n; ++k) part.inv_perm[part.perm[k]] = k;
  return part;
}

inline Vector permute_vector(const std::vector<index_t>& perm,
                             const Vector& v) {
  Vector out(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) out[k] = v[perm[k]];
  return out;
}

inline Vector unpermute_vector(const std::vector<index_t>& perm,
                               const Vector& v) {
  Vector out(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) out[perm[k]] = v[k];
  return out;
}

/// (P*A*P^T, P*f) for the permutation P given by part.perm. Solving the
/// permuted system and applying unpermute_vector to the solution recovers
/// the solution of the original system. Identity (absent) perm returns
/// copies unchanged.
inline std::pair<CsrMatrix, Vector> apply_permutation(const CsrMatrix& a,
                                                      const Vector& f,
                                                      const Partition& part) {
  if (a.n_rows != a.n_cols) throw NotSquare("apply_permutation needs square A");
  if (static_cast<index_t>(f.size()) != a.n_rows)
    throw DimensionMismatch("apply_permutation: rhs length mismatch");
  if (!part.has_perm()) return {a, f};
  if (static_cast<index_t>(part.perm.size()) != a.n_rows)
    throw DimensionMismatch("apply_permutation: perm length mismatch");
  std::vector<Triplet> ts;
  ts.reserve(a.nnz());
  for (index_t k = 0; k < a.n_rows; ++k) {
    const index_t old_row = part.perm[k];
    for (index_t j = a.row_ptr[old_row]; j < a.row_ptr[old_row + 1]; ++j)
      ts.push_back({k, part.inv_perm[a.col_idx[j]], a.values[j]});
  }
  return {CsrMatrix::from_triplets(a.n_rows, a.n_cols, ts),
          permute_vector(part.perm, f)};
}

}  // namespace ddps
