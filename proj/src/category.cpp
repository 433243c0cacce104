#include "oblim/category.hpp"

#include <unordered_map>

#include "oblim/common.hpp"

namespace oblim {

namespace {

struct VecU32Hash {
  size_t operator()(const std::vector<uint32_t>& v) const {
    uint64_t h = 1469598103934665603ull;
    for (uint32_t x : v) {
      h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return size_t(h);
  }
};

}  // namespace

size_t FiniteCategory::total_morphisms() const {
  size_t t = 0;
  for (int c : mor_count) t += size_t(c);
  return t;
}

void FiniteCategory::check_laws(uint64_t budget) const {
  for (int a = 0; a < n; ++a) {
    require(identity_id[a] >= 0 && identity_id[a] < morc(a, a),
            "category: identity id out of range");
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const uint32_t ida = uint32_t(identity_id[a]);
      const uint32_t idb = uint32_t(identity_id[b]);
      for (uint32_t f = 0; f < uint32_t(morc(a, b)); ++f) {
        require(compose(a, a, b, ida, f) == f, "category: left identity law");
        require(compose(a, b, b, f, idb) == f, "category: right identity law");
      }
    }
  }
  uint64_t triples = 0;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (morc(a, b) == 0) continue;
      for (int c = 0; c < n; ++c) {
        if (morc(b, c) == 0) continue;
        for (int d = 0; d < n; ++d) {
          if (morc(c, d) == 0) continue;
          triples += uint64_t(morc(a, b)) * morc(b, c) * morc(c, d);
          if (triples > budget) fail_budget("category law check exceeds triple budget");
          for (uint32_t f = 0; f < uint32_t(morc(a, b)); ++f) {
            for (uint32_t g = 0; g < uint32_t(morc(b, c)); ++g) {
              const uint32_t gf = compose(a, b, c, f, g);
              for (uint32_t h = 0; h < uint32_t(morc(c, d)); ++h) {
                require(compose(a, c, d, gf, h) ==
                            compose(a, b, d, f, compose(b, c, d, g, h)),
                        "category: associativity law");
              }
            }
          }
        }
      }
    }
  }
}

void VecFunctor::check_functorial(const FiniteCategory& c) const {
  require(int(dim.size()) == c.n, "functor: dim count mismatch");
  for (int a = 0; a < c.n; ++a) {
    if (dim[a] == 0) continue;
    const Mat& m = mat(c, a, a, uint32_t(c.identity_id[a]));
    require(m.is_identity(), "functor: identity morphism is not the identity matrix");
  }
  for (int a = 0; a < c.n; ++a) {
    if (dim[a] == 0) continue;
    for (int b = 0; b < c.n; ++b) {
      for (int cc = 0; cc < c.n; ++cc) {
        if (dim[cc] == 0) continue;
        for (uint32_t f = 0; f < uint32_t(c.morc(a, b)); ++f) {
          for (uint32_t g = 0; g < uint32_t(c.morc(b, cc)); ++g) {
            const uint32_t gf = c.compose(a, b, cc, f, g);
            const Mat& mgf = mat(c, a, cc, gf);
            require(mgf.rows == dim[a] && mgf.cols == dim[cc],
                    "functor: matrix shape mismatch");
            if (dim[b] == 0) {
              for (uint8_t x : mgf.a) require(x == 0, "functor: composite through zero object");
            } else {
              require(mgf == mat(c, a, b, f).mul(mat(c, b, cc, g)),
                      "functor: contravariant composition law");
            }
          }
        }
      }
    }
  }
}

namespace {

// A degree-k chain is [c0, f1, c1, ..., fk, ck]: k composable non-identity
// morphisms with dim F(c0) > 0.
using Chain = std::vector<uint32_t>;

struct Degree {
  std::vector<Chain> chains;
  std::unordered_map<Chain, uint32_t, VecU32Hash> id;
  std::vector<int> col_off;  // block offset per chain
  int total = 0;             // sum of block widths

  void push(Chain ch, int width) {
    id.emplace(ch, uint32_t(chains.size()));
    col_off.push_back(total);
    total += width;
    chains.push_back(std::move(ch));
  }
};

bool is_identity_mor(const FiniteCategory& c, int a, int b, uint32_t f) {
  return a == b && f == uint32_t(c.identity_id[a]);
}

// Appends every one-step extension of `base` (by a non-identity morphism out
// of its last object) through `emit`.
template <class Emit>
void extend_chain(const FiniteCategory& c, const Chain& base, Emit&& emit) {
  const int last = int(base.back());
  Chain ext = base;
  ext.push_back(0);
  ext.push_back(0);
  for (int b = 0; b < c.n; ++b) {
    const int mc = c.morc(last, b);
    for (uint32_t f = 0; f < uint32_t(mc); ++f) {
      if (is_identity_mor(c, last, b, f)) continue;
      ext[ext.size() - 2] = f;
      ext[ext.size() - 1] = uint32_t(b);
      emit(ext);
    }
  }
}

}  // namespace

std::vector<int> lim_dims(const FiniteCategory& c, const VecFunctor& f, int i_max,
                          uint64_t chain_budget) {
  require(i_max >= 0, "lim_dims: negative degree");
  require(int(f.dim.size()) == c.n, "lim_dims: functor/category mismatch");

  // Chains of degree 0..i_max, materialized with ids and column offsets.
  std::vector<Degree> deg(size_t(i_max) + 1);
  for (int a = 0; a < c.n; ++a) {
    if (f.dim[a] > 0) deg[0].push({uint32_t(a)}, f.dim[a]);
  }
  for (int k = 1; k <= i_max; ++k) {
    for (const Chain& base : deg[k - 1].chains) {
      const int width = f.dim[base[0]];
      extend_chain(c, base, [&](const Chain& ext) {
        if (deg[k].chains.size() >= chain_budget)
          fail_budget("lim_dims: chain count exceeds budget");
        deg[k].push(ext, width);
      });
    }
  }

  // d^k : C^k -> C^{k+1}, rows indexed by degree-(k+1) chains. The top degree
  // i_max+1 is streamed without materializing.
  std::vector<int> dims(size_t(i_max) + 2);
  for (int k = 0; k <= i_max; ++k) dims[k] = deg[k].total;
  std::vector<SparseMatrix> ds;
  for (int k = 0; k <= i_max; ++k) {
    SparseMatrix d;
    d.p = f.p;
    d.cols = deg[k].total;
    if (k + 1 <= i_max) {
      d.rows = deg[k + 1].total;
    } else {
      // Count the top degree first: the budget check, and the row count the
      // assembly below range-checks against.
      uint64_t top_count = 0;
      int top_width = 0;
      for (const Chain& base : deg[k].chains) {
        extend_chain(c, base, [&](const Chain&) {
          if (++top_count > chain_budget)
            fail_budget("lim_dims: chain count exceeds budget");
          top_width += f.dim[base[0]];
        });
      }
      d.rows = top_width;
      dims[k + 1] = top_width;
    }
    int row_off = 0;
    auto emit_rows = [&](const Chain& tau) {
      const int w = f.dim[tau[0]];
      // Term 0: drop the first morphism, apply F(f1).
      {
        const int c1 = int(tau[2]);
        if (f.dim[c1] > 0) {
          Chain sigma(tau.begin() + 2, tau.end());
          const uint32_t sid = deg[k].id.at(sigma);
          const Mat& m = f.mat(c, int(tau[0]), c1, tau[1]);
          for (int r = 0; r < m.rows; ++r) {
            for (int s = 0; s < m.cols; ++s) {
              if (m.at(r, s))
                d.add(row_off + r, deg[k].col_off[sid] + s, m.at(r, s));
            }
          }
        }
      }
      // Terms 1..k: merge adjacent morphisms (identity merges vanish).
      for (int i = 1; i <= k; ++i) {
        const int a = int(tau[2 * i - 2]), b = int(tau[2 * i]), cc = int(tau[2 * i + 2]);
        const uint32_t g = c.compose(a, b, cc, tau[2 * i - 1], tau[2 * i + 1]);
        if (is_identity_mor(c, a, cc, g)) continue;
        Chain sigma;
        sigma.reserve(tau.size() - 2);
        sigma.insert(sigma.end(), tau.begin(), tau.begin() + 2 * i - 1);
        sigma.push_back(g);
        sigma.insert(sigma.end(), tau.begin() + 2 * i + 2, tau.end());
        const uint32_t sid = deg[k].id.at(sigma);
        const uint8_t val = (i % 2) ? gf_neg(1, f.p) : 1;
        for (int r = 0; r < w; ++r) d.add(row_off + r, deg[k].col_off[sid] + r, val);
      }
      // Term k+1: drop the last morphism.
      {
        Chain sigma(tau.begin(), tau.end() - 2);
        const uint32_t sid = deg[k].id.at(sigma);
        const uint8_t val = ((k + 1) % 2) ? gf_neg(1, f.p) : 1;
        for (int r = 0; r < w; ++r) d.add(row_off + r, deg[k].col_off[sid] + r, val);
      }
      row_off += w;
    };
    if (k + 1 <= i_max) {
      for (const Chain& tau : deg[k + 1].chains) emit_rows(tau);
    } else {
      for (const Chain& base : deg[k].chains)
        extend_chain(c, base, [&](const Chain& ext) { emit_rows(ext); });
    }
    require(row_off == d.rows, "lim_dims: row accounting mismatch");
    ds.push_back(std::move(d));
  }

  CochainComplex cx;
  cx.p = f.p;
  cx.dims = dims;
  cx.d = std::move(ds);
  cx.validate();
  std::vector<int> h = cohomology_dims(cx);
  h.resize(size_t(i_max) + 1);
  return h;
}

}  // namespace oblim
