#pragma once

// Dense linear algebra over GF(p) for small p (p < 256) and small dimensions.
// Used for module action matrices, fixed-point spaces and coordinate extraction;
// the sparse solver in linalg.hpp handles the big cochain matrices.

#include <cstdint>
#include <span>
#include <vector>

#include "oblim/common.hpp"

namespace oblim {

inline bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline uint8_t gf_add(uint8_t a, uint8_t b, uint8_t p) { return uint8_t((a + b) % p); }
inline uint8_t gf_sub(uint8_t a, uint8_t b, uint8_t p) { return uint8_t((a + p - b) % p); }
inline uint8_t gf_mul(uint8_t a, uint8_t b, uint8_t p) { return uint8_t((int(a) * int(b)) % p); }
inline uint8_t gf_neg(uint8_t a, uint8_t p) { return a ? uint8_t(p - a) : 0; }

inline uint8_t gf_inv(uint8_t a, uint8_t p) {
  require(a % p != 0, "gf_inv: zero has no inverse");
  // p is tiny; scan.
  for (int x = 1; x < p; ++x)
    if ((int(a) * x) % p == 1) return uint8_t(x);
  fail_check("gf_inv: not a field");
}

// Row-major dense matrix over GF(p).
struct Mat {
  uint8_t p = 2;
  int rows = 0, cols = 0;
  std::vector<uint8_t> a;

  Mat() = default;
  Mat(uint8_t p_, int r, int c) : p(p_), rows(r), cols(c), a(size_t(r) * c, 0) {}

  static Mat identity(uint8_t p, int n) {
    Mat m(p, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  uint8_t& at(int r, int c) { return a[size_t(r) * cols + c]; }
  uint8_t at(int r, int c) const { return a[size_t(r) * cols + c]; }

  bool operator==(const Mat& o) const = default;

  bool is_identity() const {
    if (rows != cols) return false;
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j)
        if (at(i, j) != (i == j ? 1 : 0)) return false;
    return true;
  }

  Mat mul(const Mat& o) const {
    require(cols == o.rows && p == o.p, "Mat::mul: shape/field mismatch");
    Mat r(p, rows, o.cols);
    for (int i = 0; i < rows; ++i)
      for (int k = 0; k < cols; ++k) {
        uint8_t v = at(i, k);
        if (!v) continue;
        for (int j = 0; j < o.cols; ++j)
          r.at(i, j) = uint8_t((r.at(i, j) + int(v) * o.at(k, j)) % p);
      }
    return r;
  }

  std::vector<uint8_t> apply(std::span<const uint8_t> v) const {
    require(int(v.size()) == cols, "Mat::apply: length mismatch");
    std::vector<uint8_t> r(rows, 0);
    for (int i = 0; i < rows; ++i) {
      int acc = 0;
      for (int j = 0; j < cols; ++j) acc += int(at(i, j)) * v[j];
      r[i] = uint8_t(acc % p);
    }
    return r;
  }

  Mat kron(const Mat& o) const {
    require(p == o.p, "Mat::kron: field mismatch");
    Mat r(p, rows * o.rows, cols * o.cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) {
        uint8_t v = at(i, j);
        if (!v) continue;
        for (int k = 0; k < o.rows; ++k)
          for (int l = 0; l < o.cols; ++l)
            r.at(i * o.rows + k, j * o.cols + l) = gf_mul(v, o.at(k, l), p);
      }
    return r;
  }
};

// Gaussian elimination in place; returns rank. Columns of `m` are destroyed.
inline int mat_rank(Mat m) {
  int rank = 0;
  for (int c = 0; c < m.cols && rank < m.rows; ++c) {
    int piv = -1;
    for (int r = rank; r < m.rows; ++r)
      if (m.at(r, c)) { piv = r; break; }
    if (piv < 0) continue;
    for (int j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(rank, j));
    uint8_t inv = gf_inv(m.at(rank, c), m.p);
    for (int j = c; j < m.cols; ++j) m.at(rank, j) = gf_mul(m.at(rank, j), inv, m.p);
    for (int r = 0; r < m.rows; ++r) {
      if (r == rank) continue;
      uint8_t f = m.at(r, c);
      if (!f) continue;
      for (int j = c; j < m.cols; ++j)
        m.at(r, j) = gf_sub(m.at(r, j), gf_mul(f, m.at(rank, j), m.p), m.p);
    }
    ++rank;
  }
  return rank;
}

// Gauss-Jordan inverse; CheckError when singular.
inline Mat mat_inverse(const Mat& m) {
  require(m.rows == m.cols, "mat_inverse: not square");
  const int n = m.rows;
  Mat w(m.p, n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) w.at(i, j) = m.at(i, j);
    w.at(i, n + i) = 1;
  }
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (w.at(r, c)) { piv = r; break; }
    require(piv >= 0, "mat_inverse: singular matrix");
    for (int j = 0; j < 2 * n; ++j) std::swap(w.at(piv, j), w.at(c, j));
    uint8_t inv = gf_inv(w.at(c, c), m.p);
    for (int j = 0; j < 2 * n; ++j) w.at(c, j) = gf_mul(w.at(c, j), inv, m.p);
    for (int r = 0; r < n; ++r) {
      if (r == c) continue;
      uint8_t f = w.at(r, c);
      if (!f) continue;
      for (int j = 0; j < 2 * n; ++j)
        w.at(r, j) = gf_sub(w.at(r, j), gf_mul(f, w.at(c, j), m.p), m.p);
    }
  }
  Mat out(m.p, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.at(i, j) = w.at(i, n + j);
  return out;
}

// Coordinates with respect to a full-column-rank basis matrix: picks an
// invertible row submatrix once, then solves by multiplication. coords()
// checks the full reconstruction and fails on vectors outside the span.
struct SpanSolver {
  Mat basis;              // dim x m
  std::vector<int> rows;  // m independent rows of `basis`
  Mat inv;                // inverse of basis[rows, :]

  explicit SpanSolver(Mat b) : basis(std::move(b)) {
    const int m = basis.cols;
    std::vector<std::vector<uint8_t>> red;  // reduced forms of selected rows
    std::vector<int> pivc;                  // leading column of each
    for (int r = 0; r < basis.rows && int(rows.size()) < m; ++r) {
      std::vector<uint8_t> v(m);
      for (int c = 0; c < m; ++c) v[c] = basis.at(r, c);
      for (size_t k = 0; k < red.size(); ++k) {
        uint8_t f = v[pivc[k]];
        if (!f) continue;
        for (int c = 0; c < m; ++c)
          v[c] = gf_sub(v[c], gf_mul(f, red[k][c], basis.p), basis.p);
      }
      int pc = -1;
      for (int c = 0; c < m; ++c)
        if (v[c]) { pc = c; break; }
      if (pc < 0) continue;
      uint8_t s = gf_inv(v[pc], basis.p);
      for (int c = 0; c < m; ++c) v[c] = gf_mul(v[c], s, basis.p);
      rows.push_back(r);
      red.push_back(std::move(v));
      pivc.push_back(pc);
    }
    require(int(rows.size()) == m, "SpanSolver: basis columns are dependent");
    Mat sub(basis.p, m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) sub.at(i, j) = basis.at(rows[i], j);
    inv = mat_inverse(sub);
  }

  std::vector<uint8_t> coords(std::span<const uint8_t> v) const {
    require(int(v.size()) == basis.rows, "SpanSolver: length mismatch");
    std::vector<uint8_t> sub(rows.size());
    for (size_t i = 0; i < rows.size(); ++i) sub[i] = v[rows[i]];
    std::vector<uint8_t> x = inv.apply(sub);
    std::vector<uint8_t> back = basis.apply(x);
    for (int r = 0; r < basis.rows; ++r)
      require(back[r] == v[r], "SpanSolver: vector outside span");
    return x;
  }
};

// Basis of the right kernel {x : m x = 0}, one vector per free column.
inline std::vector<std::vector<uint8_t>> mat_kernel(Mat m) {
  const uint8_t p = m.p;
  const int n = m.cols;
  std::vector<int> pivot_col;  // pivot column of row i after reduction
  int rank = 0;
  for (int c = 0; c < n && rank < m.rows; ++c) {
    int piv = -1;
    for (int r = rank; r < m.rows; ++r)
      if (m.at(r, c)) { piv = r; break; }
    if (piv < 0) continue;
    for (int j = 0; j < n; ++j) std::swap(m.at(piv, j), m.at(rank, j));
    uint8_t inv = gf_inv(m.at(rank, c), p);
    for (int j = c; j < n; ++j) m.at(rank, j) = gf_mul(m.at(rank, j), inv, p);
    for (int r = 0; r < m.rows; ++r) {
      if (r == rank) continue;
      uint8_t f = m.at(r, c);
      if (!f) continue;
      for (int j = c; j < n; ++j)
        m.at(r, j) = gf_sub(m.at(r, j), gf_mul(f, m.at(rank, j), p), p);
    }
    pivot_col.push_back(c);
    ++rank;
  }
  std::vector<bool> is_pivot(n, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<uint8_t>> basis;
  for (int f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    std::vector<uint8_t> x(n, 0);
    x[f] = 1;
    for (int r = 0; r < rank; ++r) x[pivot_col[r]] = gf_neg(m.at(r, f), p);
    basis.push_back(std::move(x));
  }
  return basis;
}

}  // namespace oblim
