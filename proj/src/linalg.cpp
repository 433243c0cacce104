#include "oblim/linalg.hpp"

#include <algorithm>
#include <bit>
#include <queue>

#include "oblim/gf.hpp"

namespace oblim {

namespace {

// Row-list working form: each active row is a sorted (col, val) vector.
struct Workspace {
  uint8_t p;
  int cols;
  std::vector<std::vector<std::pair<int, uint8_t>>> row;

  explicit Workspace(const SparseMatrix& m) : p(m.p), cols(m.cols), row(m.rows) {
    std::vector<uint32_t> ord(m.v.size());
    for (uint32_t k = 0; k < ord.size(); ++k) ord[k] = k;
    std::sort(ord.begin(), ord.end(), [&](uint32_t a, uint32_t b) {
      return std::pair(m.ri[a], m.ci[a]) < std::pair(m.ri[b], m.ci[b]);
    });
    for (size_t i = 0; i < ord.size();) {  // duplicates accumulate mod p
      const int r = m.ri[ord[i]], c = m.ci[ord[i]];
      int acc = 0;
      for (; i < ord.size() && m.ri[ord[i]] == r && m.ci[ord[i]] == c; ++i)
        acc += m.v[ord[i]];
      if (uint8_t rv = uint8_t(acc % p)) row[r].push_back({c, rv});
    }
  }

  // row[dst] += f * row[src]  (merge of sorted vectors)
  void axpy(int dst, int src, uint8_t f) {
    const auto& s = row[src];
    const auto& d = row[dst];
    std::vector<std::pair<int, uint8_t>> out;
    out.reserve(d.size() + s.size());
    size_t i = 0, j = 0;
    while (i < d.size() || j < s.size()) {
      if (j == s.size() || (i < d.size() && d[i].first < s[j].first)) {
        out.push_back(d[i++]);
      } else if (i == d.size() || s[j].first < d[i].first) {
        out.push_back({s[j].first, gf_mul(f, s[j].second, p)});
        ++j;
      } else {
        uint8_t val = gf_add(d[i].second, gf_mul(f, s[j].second, p), p);
        if (val) out.push_back({d[i].first, val});
        ++i;
        ++j;
      }
    }
    row[dst] = std::move(out);
  }
};

// Deterministic sparse elimination with Markowitz-style pivoting.
//
// If `record` is non-null the reduction is Gauss-Jordan: pivot rows are kept,
// fully reduced against later pivots, and (row, col) pairs are appended so
// callers can back-substitute. Entries in `forbid_col` (if >= 0) are never
// chosen as pivots; solve() uses that for the augmented right-hand side.
// Returns the rank.
int eliminate(Workspace& ws, std::vector<std::pair<int, int>>* record,
              int forbid_col = -1) {
  const int nrows = int(ws.row.size());
  constexpr int kMaxBucket = 48;   // rows with nnz >= cap share the last bucket
  constexpr int kScanRows = 24;    // candidate rows examined per pivot step

  std::vector<int> col_count(ws.cols, 0);
  std::vector<std::vector<int>> rows_in_col(ws.cols);
  std::vector<bool> active(nrows, true), pivoted(nrows, false);
  std::vector<std::vector<int>> bucket(kMaxBucket + 1);

  auto has_candidate = [&](int r) {
    if (forbid_col < 0) return !ws.row[r].empty();
    for (auto [c, v] : ws.row[r])
      if (c != forbid_col) return true;
    return false;
  };
  auto push = [&](int r) {
    bucket[std::min(int(ws.row[r].size()), kMaxBucket)].push_back(r);
  };

  for (int r = 0; r < nrows; ++r) {
    if (ws.row[r].empty()) {
      active[r] = false;
      continue;
    }
    for (auto [c, v] : ws.row[r]) {
      ++col_count[c];
      rows_in_col[c].push_back(r);
    }
    push(r);
  }

  int rank = 0;
  std::vector<int> scan;
  for (;;) {
    // Collect up to kScanRows valid rows from the lightest non-empty bucket.
    scan.clear();
    for (int b = 1; b <= kMaxBucket && scan.empty(); ++b) {
      auto& bk = bucket[b];
      size_t i = 0;
      while (i < bk.size() && int(scan.size()) < kScanRows) {
        int r = bk[i];
        bool valid = active[r] && !pivoted[r] &&
                     std::min(int(ws.row[r].size()), kMaxBucket) == b &&
                     has_candidate(r);
        if (!valid) {
          bk[i] = bk.back();
          bk.pop_back();
          continue;
        }
        scan.push_back(r);
        ++i;
      }
    }
    if (scan.empty()) break;

    int best_r = -1, best_c = -1;
    long best_score = -1;
    for (int r : scan)
      for (auto [c, v] : ws.row[r]) {
        if (c == forbid_col) continue;
        long score = long(ws.row[r].size() - 1) * long(col_count[c] - 1);
        if (best_score < 0 || score < best_score ||
            (score == best_score && (c < best_c || (c == best_c && r < best_r)))) {
          best_score = score;
          best_r = r;
          best_c = c;
        }
      }
    require(best_r >= 0, "eliminate: empty scan set");

    uint8_t pval = 0;
    for (auto [c, v] : ws.row[best_r])
      if (c == best_c) pval = v;
    uint8_t inv = gf_inv(pval, ws.p);
    if (inv != 1)
      for (auto& [c, v] : ws.row[best_r]) v = gf_mul(v, inv, ws.p);

    // Eliminate the pivot column from the other active rows.
    std::vector<int> targets;
    for (int r : rows_in_col[best_c])
      if (r != best_r && active[r] && !pivoted[r]) targets.push_back(r);
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    rows_in_col[best_c].clear();
    for (int r : targets) {
      uint8_t f = 0;
      for (auto [c, v] : ws.row[r])
        if (c == best_c) f = v;
      if (!f) continue;  // stale index entry
      for (auto [c, v] : ws.row[r]) --col_count[c];
      ws.axpy(r, best_r, gf_neg(f, ws.p));
      for (auto [c, v] : ws.row[r]) {
        ++col_count[c];
        rows_in_col[c].push_back(r);
      }
      if (ws.row[r].empty())
        active[r] = false;
      else
        push(r);
    }
    // Gauss-Jordan: clear the pivot column from earlier pivot rows too.
    if (record) {
      for (auto& [pr, pc] : *record) {
        uint8_t f = 0;
        for (auto [c, v] : ws.row[pr])
          if (c == best_c) f = v;
        if (f) ws.axpy(pr, best_r, gf_neg(f, ws.p));
      }
      record->push_back({best_r, best_c});
    }
    pivoted[best_r] = true;
    for (auto [c, v] : ws.row[best_r]) --col_count[c];
    if (!record) {
      ws.row[best_r].clear();
      ws.row[best_r].shrink_to_fit();
      active[best_r] = false;
    }
    ++rank;
  }
  return rank;
}

// Rank by streaming rows into a leftmost-lead echelon basis.  Memory tracks
// the basis (at most `cols` rows) rather than the row count, which is the
// shape face maps take: millions of light rows over far fewer columns.
// Inserted basis rows are never revisited; each incoming row is reduced in a
// dense scratch column accumulator with a min-heap over its nonzeros.
int echelon_rank(const SparseMatrix& m) {
  std::vector<uint32_t> ord(m.v.size());
  for (uint32_t k = 0; k < ord.size(); ++k) ord[k] = k;
  std::sort(ord.begin(), ord.end(), [&](uint32_t a, uint32_t b) {
    return std::pair(m.ri[a], m.ci[a]) < std::pair(m.ri[b], m.ci[b]);
  });

  std::vector<int> lead(size_t(m.cols), -1);
  std::vector<std::vector<std::pair<int, uint8_t>>> basis;
  std::vector<uint8_t> spa(size_t(m.cols), 0);
  std::priority_queue<int, std::vector<int>, std::greater<int>> heap;

  int rank = 0;
  size_t i = 0;
  while (i < ord.size() && rank < m.cols) {
    const int r = m.ri[ord[i]];
    while (i < ord.size() && m.ri[ord[i]] == r) {  // scatter, duplicates folded
      const int c = m.ci[ord[i]];
      int acc = 0;
      for (; i < ord.size() && m.ri[ord[i]] == r && m.ci[ord[i]] == c; ++i)
        acc += m.v[ord[i]];
      if (uint8_t v = uint8_t(acc % m.p)) {
        spa[size_t(c)] = v;
        heap.push(c);
      }
    }
    while (!heap.empty()) {
      const int c = heap.top();
      heap.pop();
      const uint8_t f = spa[size_t(c)];
      if (!f) continue;  // cancelled after a 0 -> x -> 0 round trip
      if (lead[size_t(c)] < 0) {
        // New pivot: normalize the remainder (already sorted by pop order).
        const uint8_t inv = gf_inv(f, m.p);
        std::vector<std::pair<int, uint8_t>> row{{c, uint8_t(1)}};
        spa[size_t(c)] = 0;
        while (!heap.empty()) {
          const int cc = heap.top();
          heap.pop();
          if (uint8_t v = spa[size_t(cc)]) {
            row.push_back({cc, gf_mul(v, inv, m.p)});
            spa[size_t(cc)] = 0;
          }
        }
        lead[size_t(c)] = int(basis.size());
        basis.push_back(std::move(row));
        ++rank;
        break;
      }
      spa[size_t(c)] = 0;
      const auto& b = basis[size_t(lead[size_t(c)])];
      const uint8_t neg = gf_neg(f, m.p);
      for (size_t j = 1; j < b.size(); ++j) {  // lead entry cancels by design
        const size_t cc = size_t(b[j].first);
        const uint8_t before = spa[cc];
        spa[cc] = gf_add(before, gf_mul(neg, b[j].second, m.p), m.p);
        if (!before && spa[cc]) heap.push(b[j].first);
      }
    }
  }
  return rank;
}

// The GF(2) variant keeps basis rows as bitsets: a pivot hit is a word-XOR
// sweep, and memory is capped at rank * cols bits however bad the fill gets.
int echelon_rank_gf2(const SparseMatrix& m) {
  const size_t words = (size_t(m.cols) + 63) / 64;
  std::vector<uint32_t> ord(m.v.size());
  for (uint32_t k = 0; k < ord.size(); ++k) ord[k] = k;
  std::sort(ord.begin(), ord.end(), [&](uint32_t a, uint32_t b) {
    return std::pair(m.ri[a], m.ci[a]) < std::pair(m.ri[b], m.ci[b]);
  });

  std::vector<int> lead(size_t(m.cols), -1);
  std::vector<std::vector<uint64_t>> basis;
  std::vector<uint64_t> acc(words, 0);

  int rank = 0;
  size_t i = 0;
  while (i < ord.size() && rank < m.cols) {
    const int r = m.ri[ord[i]];
    size_t w0 = words;  // first touched word
    for (; i < ord.size() && m.ri[ord[i]] == r;) {
      const int c = m.ci[ord[i]];
      int sum = 0;
      for (; i < ord.size() && m.ri[ord[i]] == r && m.ci[ord[i]] == c; ++i)
        sum += m.v[ord[i]];
      if (sum & 1) {
        acc[size_t(c) >> 6] ^= uint64_t(1) << (c & 63);
        w0 = std::min(w0, size_t(c) >> 6);
      }
    }
    for (size_t w = w0; w < words;) {
      const uint64_t x = acc[w];
      if (!x) {
        ++w;
        continue;
      }
      const int c = int((w << 6) + size_t(std::countr_zero(x)));
      if (lead[size_t(c)] < 0) {
        std::vector<uint64_t> row(words, 0);
        std::copy(acc.begin() + long(w), acc.end(), row.begin() + long(w));
        std::fill(acc.begin() + long(w), acc.end(), uint64_t(0));
        lead[size_t(c)] = int(basis.size());
        basis.push_back(std::move(row));
        ++rank;
        break;
      }
      const auto& b = basis[size_t(lead[size_t(c)])];
      for (size_t j = w; j < words; ++j) acc[j] ^= b[j];
    }
  }
  return rank;
}

}  // namespace

int sparse_rank(const SparseMatrix& m) {
  if (m.rows > (1 << 16) && m.rows > m.cols)
    return m.p == 2 ? echelon_rank_gf2(m) : echelon_rank(m);
  Workspace ws(m);
  return eliminate(ws, nullptr);
}

std::vector<std::vector<uint8_t>> sparse_kernel(const SparseMatrix& m) {
  Workspace ws(m);
  std::vector<std::pair<int, int>> piv;
  eliminate(ws, &piv);
  std::vector<bool> is_pivot_col(m.cols, false);
  for (auto& [r, c] : piv) is_pivot_col[c] = true;

  std::vector<std::vector<uint8_t>> basis;
  for (int f = 0; f < m.cols; ++f) {
    if (is_pivot_col[f]) continue;
    std::vector<uint8_t> x(m.cols, 0);
    x[f] = 1;
    // Jordan-reduced pivot row with pivot col c: x_c + coef_f * x_f = 0.
    for (auto& [r, c] : piv)
      for (auto [cc, val] : ws.row[r])
        if (cc == f) x[c] = gf_neg(val, m.p);
    basis.push_back(std::move(x));
  }
  return basis;
}

std::optional<std::vector<uint8_t>> sparse_solve(const SparseMatrix& m,
                                                 std::span<const uint8_t> b) {
  require(int(b.size()) == m.rows, "sparse_solve: rhs length mismatch");
  SparseMatrix aug(m.p, m.rows, m.cols + 1);
  aug.ri = m.ri;
  aug.ci = m.ci;
  aug.v = m.v;
  for (int r = 0; r < m.rows; ++r)
    if (b[r] % m.p) aug.add(r, m.cols, b[r]);

  Workspace ws(aug);
  std::vector<std::pair<int, int>> piv;
  eliminate(ws, &piv, /*forbid_col=*/m.cols);

  // Any leftover nonzero row can only sit in the forbidden column: inconsistent.
  for (size_t r = 0; r < ws.row.size(); ++r) {
    bool is_pivot_row = false;
    for (auto& [pr, pc] : piv) is_pivot_row |= int(r) == pr;
    if (is_pivot_row) continue;
    for (auto [c, val] : ws.row[r])
      if (val) return std::nullopt;
  }
  std::vector<uint8_t> x(m.cols, 0);
  for (auto& [r, c] : piv)
    for (auto [cc, val] : ws.row[r])
      if (cc == m.cols) x[c] = val;

  std::vector<uint8_t> check = sparse_apply(m, x);
  for (int r = 0; r < m.rows; ++r)
    if (check[r] != b[r] % m.p) fail_check("sparse_solve: verification failed");
  return x;
}

std::vector<uint8_t> sparse_apply(const SparseMatrix& m, std::span<const uint8_t> x) {
  require(int(x.size()) == m.cols, "sparse_apply: length mismatch");
  std::vector<int> acc(m.rows, 0);
  for (size_t k = 0; k < m.v.size(); ++k) acc[m.ri[k]] += int(m.v[k]) * x[m.ci[k]];
  std::vector<uint8_t> out(m.rows);
  for (int r = 0; r < m.rows; ++r) out[r] = uint8_t(((acc[r] % m.p) + m.p) % m.p);
  return out;
}

void CochainComplex::validate() const {
  require(d.size() + 1 == dims.size() || (d.empty() && dims.size() <= 1),
          "CochainComplex: dims/d length mismatch");
  for (size_t i = 0; i < d.size(); ++i) {
    require(d[i].p == p, "CochainComplex: field mismatch");
    require(d[i].cols == dims[i] && d[i].rows == dims[i + 1],
            "CochainComplex: differential shape mismatch");
  }
  for (size_t i = 0; i + 1 < d.size(); ++i) {
    if (!dims[i] || !dims[i + 2]) continue;
    // Column structure of d[i] and of d[i+1], duplicates folded.
    auto columns = [this](const SparseMatrix& m) {
      std::vector<uint32_t> ord(m.v.size());
      for (uint32_t k = 0; k < ord.size(); ++k) ord[k] = k;
      std::sort(ord.begin(), ord.end(), [&](uint32_t a, uint32_t b) {
        return std::pair(m.ci[a], m.ri[a]) < std::pair(m.ci[b], m.ri[b]);
      });
      std::vector<std::vector<std::pair<int, uint8_t>>> cols(m.cols);
      for (size_t i = 0; i < ord.size();) {
        const int c = m.ci[ord[i]], r = m.ri[ord[i]];
        int acc = 0;
        for (; i < ord.size() && m.ci[ord[i]] == c && m.ri[ord[i]] == r; ++i)
          acc += m.v[ord[i]];
        if (uint8_t rv = uint8_t(acc % p)) cols[c].push_back({r, rv});
      }
      return cols;
    };
    auto lo = columns(d[i]);
    auto hi = columns(d[i + 1]);
    std::vector<int> acc(dims[i + 2], 0);
    for (int c = 0; c < d[i].cols; ++c) {
      std::vector<int> touched;
      for (auto [mid, val] : lo[c])
        for (auto [r, val2] : hi[mid]) {
          if (!acc[r]) touched.push_back(r);
          acc[r] += int(val) * val2;
        }
      for (int r : touched) {
        require(acc[r] % p == 0, "CochainComplex: d∘d != 0");
        acc[r] = 0;
      }
    }
  }
}

std::vector<int> cohomology_dims(const CochainComplex& c) {
  c.validate();
  if (c.dims.empty()) return {};
  std::vector<int> rk(c.d.size());
  for (size_t i = 0; i < c.d.size(); ++i) rk[i] = sparse_rank(c.d[i]);
  std::vector<int> h;
  for (size_t i = 0; i + 1 < c.dims.size(); ++i) {
    int ker = c.dims[i] - rk[i];
    int im = i == 0 ? 0 : rk[i - 1];
    require(ker >= im, "cohomology_dims: negative dimension");
    h.push_back(ker - im);
  }
  if (c.d.empty() && c.dims.size() == 1) h.push_back(c.dims[0]);
  return h;
}

}  // namespace oblim
