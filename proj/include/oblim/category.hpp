#pragma once

// Finite categories with enumerated morphism sets, contravariant GF(p)-functors
// on them, and higher inverse limits via the normalized cochain complex on
// chains of composable non-identity morphisms.

#include <cstdint>
#include <vector>

#include "oblim/gf.hpp"
#include "oblim/linalg.hpp"

namespace oblim {

struct FiniteCategory {
  int n = 0;                    // objects 0..n-1
  std::vector<int> mor_count;   // [a*n+b]: |Mor(a,b)|, local ids 0..count-1
  std::vector<int> identity_id; // per object: local id inside Mor(a,a)
  // comp[(a*n+b)*n+c][g*|Mor(a,b)|+f] = local id of (g o f): a -> c.
  std::vector<std::vector<uint32_t>> comp;

  int morc(int a, int b) const { return mor_count[size_t(a) * n + b]; }
  uint32_t compose(int a, int b, int c, uint32_t f, uint32_t g) const {
    const auto& t = comp[(size_t(a) * n + b) * n + c];
    return t[size_t(g) * morc(a, b) + f];
  }
  size_t total_morphisms() const;
  // Identity and associativity laws on the stored tables; CheckError on
  // violation, BudgetError when the triple count exceeds the budget.
  void check_laws(uint64_t budget = 200'000'000) const;
};

struct VecFunctor {
  uint8_t p = 2;
  std::vector<int> dim;  // per object
  // mats[a*n+b][f]: matrix of F(f) : F(b) -> F(a), shape dim[a] x dim[b];
  // stored empty when either side has dimension 0.
  std::vector<std::vector<Mat>> mats;

  const Mat& mat(const FiniteCategory& c, int a, int b, uint32_t f) const {
    return mats[size_t(a) * c.n + b][f];
  }
  // Contravariant functoriality and identity matrices; CheckError on failure.
  void check_functorial(const FiniteCategory& c) const;
};

// dims of lim^i for i = 0..i_max. The normalized complex: C^k = sum over
// composable chains of k non-identity morphisms starting at an object with
// F != 0; refuses to build when the top degree exceeds `chain_budget` chains.
std::vector<int> lim_dims(const FiniteCategory& c, const VecFunctor& f, int i_max,
                          uint64_t chain_budget = 5'000'000);

}  // namespace oblim
