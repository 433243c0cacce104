#pragma once

// Higher limits over the transporter-quotient category of p-subgroups: the
// direct cochain backend ("bar"), the equivariant chain-poset backend
// ("poset"), the rank-one-Sylow closed form, and vanishing certificates.

#include <optional>
#include <string>
#include <vector>

#include "oblim/category.hpp"
#include "oblim/chains.hpp"
#include "oblim/group.hpp"
#include "oblim/module.hpp"

namespace oblim {

struct Budgets {
  uint64_t chain_orbits = 100'000;  // poset backend: chain orbits per level
  uint64_t bar_chains = 5'000'000;  // bar backend: chains per degree
};

struct LambdaResult {
  uint8_t p = 2;
  std::vector<int> dims;  // degrees 0..i_max
  std::string backend;
  double seconds = 0;
};

// Objects: the subgroups of one fixed Sylow p-subgroup T (trivial first);
// Mor(P,Q) = {aQ : a^{-1} P a <= Q}, composed by representative product.
struct OrbitCategory {
  GroupPtr gamma;
  int p = 2;
  Subgroup t;
  std::vector<Subgroup> objects;
  FiniteCategory cat;
  // rep[a*n+b][f] = group element index representing morphism f : a -> b.
  std::vector<std::vector<ElemIdx>> rep;
  int trivial_object = 0;
};

OrbitCategory orbit_category(GroupPtr gamma, int p);

// M placed at the trivial subgroup, zero elsewhere; endomorphisms of the
// trivial object act through the module structure.
VecFunctor atomic_functor(const OrbitCategory& oc, const GModule& m);

LambdaResult lambda_bar(GroupPtr gamma, int p, const GModule& m, int i_max,
                        const Budgets& budgets = {});
LambdaResult lambda_poset(GroupPtr gamma, int p, const GModule& m, int i_max,
                          const Budgets& budgets = {});
// backend: "poset", "bar" or "both" (which cross-checks and returns the poset
// result with backend tag "both").
LambdaResult lambda_dims(GroupPtr gamma, int p, const GModule& m, int i_max,
                         const std::string& backend, const Budgets& budgets = {});

// Valid when the Sylow p-subgroup has order exactly p: degree 1 carries
// dim C_M(N(T)) - dim C_M(Gamma), all other degrees vanish.
std::vector<int> lambda_closed_form_sylow_p(GroupPtr gamma, int p, const GModule& m,
                                            int i_max);

// Degreewise convolution: out[k] = sum_{i+j=k} a[i] b[j].
std::vector<int> kunneth_combine(const std::vector<int>& a, const std::vector<int>& b,
                                 int i_max);

// A certificate that all degrees vanish, when one applies: either p divides
// |C_Gamma(M)| or O_p(Gamma) is nontrivial.
std::optional<std::string> vanishing_preflight(GroupPtr gamma, int p, const GModule& m);

// Kernel of the action of Gamma on M.
Subgroup module_kernel(const GModule& m);

}  // namespace oblim
