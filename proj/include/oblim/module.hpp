#pragma once

// GF(p) modules over concrete groups: generator matrices plus the full action
// table (one matrix per group element, built by closure — no word problem).

#include <memory>
#include <vector>

#include "oblim/gf.hpp"
#include "oblim/group.hpp"

namespace oblim {

struct GModule {
  uint8_t p = 2;
  int dim = 0;
  GroupPtr owner;
  std::vector<Mat> gen_mats;  // aligned with owner->generators()
  std::shared_ptr<const std::vector<Mat>> table;  // per element index

  const Mat& action(ElemIdx i) const { return (*table)[i]; }
};

// Builds the action table from generator matrices and consistency-checks the
// assignment (invertibility; matrix(gh) = matrix(g) matrix(h) on random pairs).
GModule make_module(GroupPtr owner, std::vector<Mat> gen_mats, uint8_t p, int dim);

GModule trivial_module(GroupPtr owner, uint8_t p, int dim);

// Permutation module of a permutation group modulo the constant vector
// (dimension: points - 1, basis = images of e_0..e_{n-2}).
GModule perm_quotient_module(GroupPtr owner, uint8_t p);

// The natural module of Sym(p+1): perm_quotient_module at the same p. The
// one-argument form constructs its own copy of Sym(p+1).
GModule natural_module(int p);
GModule natural_module_over(GroupPtr sym_p_plus_1, int p);

// Kronecker action over direct_product(owners of the factors).
GModule tensor_module(GroupPtr prod, const std::vector<GModule>& factors);

// M^p over wreath(owner(M), p): base acts blockwise through copy 0 conjugates,
// the rotation generator shifts blocks consistently with its conjugation action.
GModule power_module(GroupPtr wreath, const GModule& base);

// Basis of C_M(H), the joint fixed space of the generators of H.
std::vector<std::vector<uint8_t>> fixed_points(const GModule& m, const Subgroup& h);

bool is_faithful(const GModule& m);

// G = M x| Gamma with elements (m, gamma).
GroupPtr semidirect_product(const GModule& m);

}  // namespace oblim
