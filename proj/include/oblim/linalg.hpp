#pragma once

// Sparse exact linear algebra over GF(p): rank, kernel basis, linear solve, and
// cochain complexes with cohomology dimensions. Elimination is deterministic
// (Markowitz-style pivoting with fixed tie-breaking), so every run of the engine
// produces identical numbers.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "oblim/common.hpp"

namespace oblim {

struct SparseMatrix {
  uint8_t p = 2;
  int rows = 0, cols = 0;
  // Triplets may repeat; entries at the same position accumulate mod p.
  std::vector<int> ri, ci;
  std::vector<uint8_t> v;

  SparseMatrix() = default;
  SparseMatrix(uint8_t p_, int r, int c) : p(p_), rows(r), cols(c) {}

  void add(int r, int c, int val) {
    require(r >= 0 && r < rows && c >= 0 && c < cols, "SparseMatrix::add: out of range");
    int m = val % p;
    if (m < 0) m += p;
    if (!m) return;
    ri.push_back(r);
    ci.push_back(c);
    v.push_back(uint8_t(m));
  }

  size_t nnz_upper_bound() const { return v.size(); }
};

int sparse_rank(const SparseMatrix& m);

// Basis of {x : m x = 0}.
std::vector<std::vector<uint8_t>> sparse_kernel(const SparseMatrix& m);

// One solution of m x = b, or nullopt if inconsistent.
std::optional<std::vector<uint8_t>> sparse_solve(const SparseMatrix& m,
                                                 std::span<const uint8_t> b);

std::vector<uint8_t> sparse_apply(const SparseMatrix& m, std::span<const uint8_t> x);

// C^0 -> C^1 -> ... -> C^N with d[i] : C^i -> C^{i+1} (so d.size() == dims.size()-1).
struct CochainComplex {
  uint8_t p = 2;
  std::vector<int> dims;
  std::vector<SparseMatrix> d;

  // Shape consistency and d(i+1) d(i) = 0; CheckError on violation.
  void validate() const;
};

// H^0 .. H^{N-1}; the top degree is not reported since d out of C^N is unknown.
std::vector<int> cohomology_dims(const CochainComplex& c);

}  // namespace oblim
