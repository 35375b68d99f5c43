#pragma once

// Smith normal form over the integers, plus row-lattice membership tests.
// Matrices here stay small (tens of rows/columns, small entries), so plain
// elementary operations with smallest-pivot selection are adequate.

#include <cstdlib>
#include <vector>

#include "fourfold/common.hpp"

namespace fourfold {

using IntRow = std::vector<long long>;
using IntMat = std::vector<IntRow>;

struct SmithForm {
  std::vector<long long> divisors;  // d1 | d2 | ... , all positive
  size_t rank = 0;
  IntMat col_ops;  // accumulated right factor V with A_orig * V ~ row ops of D
};

namespace detail {

inline IntMat identity(size_t n) {
  IntMat m(n, IntRow(n, 0));
  for (size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline void swap_cols(IntMat& a, IntMat& v, size_t i, size_t j) {
  for (auto& row : a) std::swap(row[i], row[j]);
  for (auto& row : v) std::swap(row[i], row[j]);
}

// col_j -= q * col_i
inline void add_col(IntMat& a, IntMat& v, size_t i, size_t j, long long q) {
  for (auto& row : a) row[j] -= q * row[i];
  for (auto& row : v) row[j] -= q * row[i];
}

}  // namespace detail

inline SmithForm smith_normal_form(IntMat a) {
  size_t m = a.size();
  size_t n = m ? a[0].size() : 0;
  SmithForm out;
  out.col_ops = detail::identity(n);
  IntMat& v = out.col_ops;

  size_t t = 0;
  while (t < m && t < n) {
    // locate the entry of least magnitude in the trailing submatrix
    size_t pi = t, pj = t;
    long long best = 0;
    for (size_t i = t; i < m; ++i)
      for (size_t j = t; j < n; ++j) {
        long long x = std::abs(a[i][j]);
        if (x != 0 && (best == 0 || x < best)) {
          best = x;
          pi = i;
          pj = j;
        }
      }
    if (best == 0) break;
    std::swap(a[pi], a[t]);
    if (pj != t) detail::swap_cols(a, v, pj, t);

    bool clean = true;
    for (size_t i = t + 1; i < m; ++i)
      if (a[i][t] != 0) {
        long long q = a[i][t] / a[t][t];
        for (size_t j = 0; j < n; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) clean = false;
      }
    for (size_t j = t + 1; j < n; ++j)
      if (a[t][j] != 0) {
        long long q = a[t][j] / a[t][t];
        detail::add_col(a, v, t, j, q);
        if (a[t][j] != 0) clean = false;
      }
    if (!clean) continue;

    // enforce d_t | every remaining entry
    bool divides = true;
    for (size_t i = t + 1; i < m && divides; ++i)
      for (size_t j = t + 1; j < n && divides; ++j)
        if (a[i][j] % a[t][t] != 0) {
          for (size_t k = 0; k < n; ++k) a[t][k] += a[i][k];
          divides = false;
        }
    if (!divides) continue;

    out.divisors.push_back(std::abs(a[t][t]));
    ++t;
  }
  out.rank = out.divisors.size();
  return out;
}

inline size_t integer_rank(const IntMat& a) { return smith_normal_form(a).rank; }

// Does y lie in the lattice generated by the rows of a?
inline bool in_row_lattice(const IntMat& a, const IntRow& y) {
  if (a.empty()) {
    for (long long x : y)
      if (x) return false;
    return true;
  }
  size_t n = a[0].size();
  if (y.size() != n) throw precondition_error("row-lattice membership: size mismatch");
  SmithForm s = smith_normal_form(a);
  // y in rowspace(A) iff y*V has coordinates divisible by the divisors and
  // zero beyond the rank.
  IntRow yv(n, 0);
  for (size_t j = 0; j < n; ++j)
    for (size_t i = 0; i < n; ++i) yv[j] += y[i] * s.col_ops[i][j];
  for (size_t j = 0; j < n; ++j) {
    if (j < s.rank) {
      if (yv[j] % s.divisors[j] != 0) return false;
    } else if (yv[j] != 0) {
      return false;
    }
  }
  return true;
}

}  // namespace fourfold
