#pragma once

#include <stdexcept>
#include <vector>

#include "rational.hpp"

namespace lgalg {

template <class K>
using Matrix = std::vector<std::vector<K>>;

template <class K>
Matrix<K> mat_identity(size_t n, const K& sample) {
  Matrix<K> I(n, std::vector<K>(n, kv_int(sample, 0)));
  for (size_t i = 0; i < n; ++i) I[i][i] = kv_int(sample, 1);
  return I;
}

template <class K>
Matrix<K> mat_mul(const Matrix<K>& A, const Matrix<K>& B) {
  const size_t n = A.size(), m = B[0].size(), k = B.size();
  Matrix<K> C(n, std::vector<K>(m, kv_int(A[0][0], 0)));
  for (size_t i = 0; i < n; ++i)
    for (size_t l = 0; l < k; ++l) {
      if (kv_is_zero(A[i][l])) continue;
      for (size_t j = 0; j < m; ++j) C[i][j] = C[i][j] + A[i][l] * B[l][j];
    }
  return C;
}

template <class K>
Matrix<K> mat_add(const Matrix<K>& A, const Matrix<K>& B) {
  Matrix<K> C = A;
  for (size_t i = 0; i < A.size(); ++i)
    for (size_t j = 0; j < A[i].size(); ++j) C[i][j] = C[i][j] + B[i][j];
  return C;
}

template <class K>
Matrix<K> mat_scale(const Matrix<K>& A, const K& c) {
  Matrix<K> C = A;
  for (auto& row : C)
    for (auto& x : row) x = x * c;
  return C;
}

template <class K>
std::vector<K> mat_apply(const Matrix<K>& A, const std::vector<K>& v) {
  std::vector<K> out(A.size(), kv_int(A[0][0], 0));
  for (size_t i = 0; i < A.size(); ++i)
    for (size_t j = 0; j < v.size(); ++j) out[i] = out[i] + A[i][j] * v[j];
  return out;
}

// Row echelon form in place; returns pivot columns. Picks the first nonzero
// invertible pivot in each column; over an etale ring a column of pure zero
// divisors raises ZeroDivisor through kv_inv.
template <class K>
std::vector<size_t> row_echelon(Matrix<K>& A) {
  std::vector<size_t> pivots;
  if (A.empty()) return pivots;
  const size_t rows = A.size(), cols = A[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t sel = rows;
    for (size_t i = r; i < rows; ++i)
      if (!kv_is_zero(A[i][c])) {
        sel = i;
        break;
      }
    if (sel == rows) continue;
    std::swap(A[r], A[sel]);
    K inv = kv_inv(A[r][c]);
    for (size_t j = c; j < cols; ++j) A[r][j] = A[r][j] * inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || kv_is_zero(A[i][c])) continue;
      K f = A[i][c];
      for (size_t j = c; j < cols; ++j) A[i][j] = A[i][j] - f * A[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class K>
size_t mat_rank(Matrix<K> A) {
  return row_echelon(A).size();
}

// Basis of the right kernel.
template <class K>
std::vector<std::vector<K>> mat_kernel(Matrix<K> A) {
  if (A.empty()) return {};
  const size_t cols = A[0].size();
  const K zero = kv_int(A[0][0], 0), one = kv_int(A[0][0], 1);
  auto pivots = row_echelon(A);
  std::vector<bool> is_pivot(cols, false);
  for (size_t c : pivots) is_pivot[c] = true;
  std::vector<std::vector<K>> basis;
  for (size_t fc = 0; fc < cols; ++fc) {
    if (is_pivot[fc]) continue;
    std::vector<K> v(cols, zero);
    v[fc] = one;
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = zero - A[r][fc];
    basis.push_back(v);
  }
  return basis;
}

template <class K>
K mat_trace(const Matrix<K>& A) {
  K t = kv_int(A[0][0], 0);
  for (size_t i = 0; i < A.size(); ++i) t = t + A[i][i];
  return t;
}

// Characteristic polynomial det(xI - A) via Faddeev-LeVerrier; coefficient of
// x^i at index i, monic of degree n. Requires only division by integers.
template <class K>
std::vector<K> char_poly(const Matrix<K>& A) {
  const size_t n = A.size();
  const K zero = kv_int(A[0][0], 0), one = kv_int(A[0][0], 1);
  std::vector<K> cs(n + 1, zero);
  cs[n] = one;
  Matrix<K> B = mat_identity(n, one);
  for (size_t k = 1; k <= n; ++k) {
    B = mat_mul(A, B);
    K ck = zero - mat_trace(B) * kv_inv(kv_int(one, static_cast<long>(k)));
    cs[n - k] = ck;
    for (size_t i = 0; i < n; ++i) B[i][i] = B[i][i] + ck;
  }
  return cs;
}

template <class K>
K mat_det(const Matrix<K>& A) {
  auto cs = char_poly(A);
  K d = cs[0];
  if (A.size() % 2 == 1) d = kv_int(d, 0) - d;
  return d;
}

// Dimension of the stabilized kernel of A (the generalized 0-eigenspace):
// grow ker(A^k) until it stops.
template <class K>
size_t generalized_kernel_dim(const Matrix<K>& A) {
  const size_t n = A.size();
  Matrix<K> P = A;
  size_t prev = 0;
  for (size_t k = 1; k <= n; ++k) {
    size_t d = n - mat_rank(P);
    if (d == prev) return d;
    prev = d;
    P = mat_mul(P, A);
  }
  return prev;
}

// Solve A x = b if consistent.
template <class K>
std::vector<K> mat_solve(Matrix<K> A, const std::vector<K>& b) {
  const size_t rows = A.size(), cols = A[0].size();
  const K zero = kv_int(A[0][0], 0);
  for (size_t i = 0; i < rows; ++i) A[i].push_back(b[i]);
  auto pivots = row_echelon(A);
  if (!pivots.empty() && pivots.back() == cols)
    throw std::domain_error("inconsistent linear system");
  std::vector<K> x(cols, zero);
  for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = A[r][cols];
  return x;
}

}  // namespace lgalg
