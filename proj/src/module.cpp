#include "oblim/module.hpp"

#include <deque>
#include <random>

namespace oblim {

GModule make_module(GroupPtr owner, std::vector<Mat> gen_mats, uint8_t p, int dim) {
  require(gen_mats.size() == owner->generators().size(),
          "make_module: one matrix per group generator required");
  for (const Mat& m : gen_mats) {
    require(m.p == p && m.rows == dim && m.cols == dim, "make_module: shape mismatch");
    require(mat_rank(m) == dim, "make_module: generator matrix not invertible");
  }

  GModule mod;
  mod.p = p;
  mod.dim = dim;
  mod.owner = owner;
  mod.gen_mats = gen_mats;

  // Action table by breadth-first closure: rho(g s) = rho(g) rho(s).
  auto table = std::make_shared<std::vector<Mat>>(owner->order());
  std::vector<bool> known(owner->order(), false);
  ElemIdx id = owner->identity_index();
  (*table)[id] = Mat::identity(p, dim);
  known[id] = true;
  std::deque<ElemIdx> queue{id};
  const auto& gens = owner->generators();
  while (!queue.empty()) {
    ElemIdx g = queue.front();
    queue.pop_front();
    for (size_t k = 0; k < gens.size(); ++k) {
      ElemIdx h = owner->mul_idx(g, gens[k]);
      if (known[h]) continue;
      (*table)[h] = (*table)[g].mul(gen_mats[k]);
      known[h] = true;
      queue.push_back(h);
    }
  }
  for (bool b : known) require(b, "make_module: generators do not reach the group");
  mod.table = std::move(table);

  // The closure assignment is well defined iff the matrices respect the
  // multiplication; probe random pairs with a fixed seed.
  std::mt19937 rng(0x5eed);
  const uint32_t n = uint32_t(owner->order());
  for (int t = 0; t < 100; ++t) {
    ElemIdx a = rng() % n, b = rng() % n;
    require(mod.action(owner->mul_idx(a, b)) == mod.action(a).mul(mod.action(b)),
            "make_module: action table inconsistent with multiplication");
  }
  return mod;
}

GModule trivial_module(GroupPtr owner, uint8_t p, int dim) {
  require(is_prime(p), "trivial_module: p must be prime");
  require(dim >= 0, "trivial_module: bad dimension");
  std::vector<Mat> mats(owner->generators().size(), Mat::identity(p, dim));
  return make_module(std::move(owner), std::move(mats), p, dim);
}

GModule perm_quotient_module(GroupPtr owner, uint8_t p) {
  require(is_prime(p), "perm_quotient_module: p must be prime");
  require(std::holds_alternative<PermGround>(owner->ground()),
          "perm_quotient_module: owner must be a permutation group");
  const int n = std::get<PermGround>(owner->ground()).points;
  require(n >= 2, "perm_quotient_module: needs at least 2 points");
  const int d = n - 1;
  // In F_p^n / <(1,...,1)>: e_bar_j for j < n-1 are the basis; e_bar_{n-1} =
  // -(e_bar_0 + ... + e_bar_{n-2}).
  std::vector<Mat> mats;
  for (ElemIdx gi : owner->generators()) {
    const Elem& g = owner->elem(gi);
    Mat m(p, d, d);
    for (int j = 0; j < d; ++j) {
      int img = g.data[j];
      if (img < d) {
        m.at(img, j) = 1;
      } else {
        for (int i = 0; i < d; ++i) m.at(i, j) = gf_neg(1, p);
      }
    }
    mats.push_back(std::move(m));
  }
  return make_module(std::move(owner), std::move(mats), p, d);
}

GModule natural_module(int p) {
  return natural_module_over(symmetric_group(p + 1), p);
}

GModule natural_module_over(GroupPtr sym, int p) {
  require(is_prime(p), "natural(p): p must be prime");
  const auto* tag = std::get_if<SymTag>(&sym->build_tag());
  require(tag && tag->n == p + 1, "natural(p): owner must be Sym(p+1)");
  return perm_quotient_module(std::move(sym), uint8_t(p));
}

GModule tensor_module(GroupPtr prod, const std::vector<GModule>& factors) {
  const auto* tag = std::get_if<ProdTag>(&prod->build_tag());
  require(tag != nullptr, "tensor: owner must be a direct product");
  require(tag->factors.size() == factors.size(),
          "tensor: factor count does not match the product");
  uint8_t p = factors.at(0).p;
  int dim = 1;
  for (size_t k = 0; k < factors.size(); ++k) {
    require(factors[k].p == p, "tensor: prime mismatch");
    require(factors[k].owner == tag->factors[k], "tensor: factor owner mismatch");
    dim *= factors[k].dim;
  }
  // Product generators are the factor generators in factor order.
  std::vector<Mat> mats;
  for (size_t k = 0; k < factors.size(); ++k) {
    for (size_t gk = 0; gk < factors[k].owner->generators().size(); ++gk) {
      Mat m = Mat::identity(p, 1);
      for (size_t j = 0; j < factors.size(); ++j)
        m = m.kron(j == k ? factors[j].gen_mats[gk]
                          : Mat::identity(p, factors[j].dim));
      mats.push_back(std::move(m));
    }
  }
  return make_module(std::move(prod), std::move(mats), p, dim);
}

GModule power_module(GroupPtr wreath, const GModule& base) {
  const auto* tag = std::get_if<WreathTag>(&wreath->build_tag());
  require(tag != nullptr, "power: owner must be a wreath product");
  require(tag->base == base.owner, "power: base owner mismatch");
  const int q = tag->p;
  const uint8_t p = base.p;
  const int d = base.dim, dim = q * d;

  std::vector<Mat> mats;
  // Copy-0 generators act on the first block.
  for (const Mat& gm : base.gen_mats) {
    Mat m = Mat::identity(p, dim);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) m.at(i, j) = gm.at(i, j);
    mats.push_back(std::move(m));
  }
  // Rotation x: (x m)_i = m_{i+1 mod q}, matching x(g_1,..,g_q)x^{-1} =
  // (g_2,..,g_q,g_1).
  Mat rot(p, dim, dim);
  for (int blk = 0; blk < q; ++blk) {
    int src = (blk + 1) % q;
    for (int i = 0; i < d; ++i) rot.at(blk * d + i, src * d + i) = 1;
  }
  mats.push_back(std::move(rot));
  require(mats.size() == wreath->generators().size(),
          "power: wreath generator layout unexpected");
  return make_module(std::move(wreath), std::move(mats), p, dim);
}

std::vector<std::vector<uint8_t>> fixed_points(const GModule& m, const Subgroup& h) {
  require(h.parent == m.owner, "fixed_points: subgroup of a different group");
  if (h.gens.empty()) {
    std::vector<std::vector<uint8_t>> basis;
    for (int i = 0; i < m.dim; ++i) {
      std::vector<uint8_t> v(m.dim, 0);
      v[i] = 1;
      basis.push_back(std::move(v));
    }
    return basis;
  }
  Mat stacked(m.p, int(h.gens.size()) * m.dim, m.dim);
  for (size_t k = 0; k < h.gens.size(); ++k) {
    const Mat& a = m.action(h.gens[k]);
    for (int i = 0; i < m.dim; ++i)
      for (int j = 0; j < m.dim; ++j)
        stacked.at(int(k) * m.dim + i, j) =
            gf_sub(a.at(i, j), i == j ? 1 : 0, m.p);
  }
  return mat_kernel(std::move(stacked));
}

bool is_faithful(const GModule& m) {
  int trivial_count = 0;
  for (ElemIdx i = 0; i < m.owner->order(); ++i)
    if (m.action(i).is_identity()) ++trivial_count;
  return trivial_count == 1;
}

GroupPtr semidirect_product(const GModule& m) {
  return semidirect_pairs(m.p, m.dim, m.owner, m.table);
}

}  // namespace oblim
