#pragma once

// Fusion category of a finite group at a prime: centric subgroups, the orbit
// category of conjugation homomorphisms, local automorphism data, and the
// classification counts for linking systems over a semidirect product M . Gamma.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "oblim/category.hpp"
#include "oblim/group.hpp"
#include "oblim/lambda.hpp"
#include "oblim/module.hpp"

namespace oblim {

// Ambient data for fusion computations: a group, a prime, a fixed Sylow
// p-subgroup S, and (when G = M . Gamma was built as a semidirect product)
// the acting group and module so obstruction groups can be computed upstairs.
struct FusionContext {
  int p = 2;
  GroupPtr g;
  Subgroup s;                      // fixed Sylow p-subgroup of g
  GroupPtr gamma;                  // acting group when semidirect, else null
  std::optional<GModule> m;        // the module, as a gamma-module
  std::string group_spec;          // display labels for reports
  std::string module_spec;
};

FusionContext fusion_context(GroupPtr g, int p, std::string group_spec = "");

// Context for M . Gamma built from a module action; group_spec/module_spec
// label the report output.
FusionContext fusion_context_semidirect(const GModule& m,
                                        std::string group_spec = "",
                                        std::string module_spec = "");

// The subgroup M x {1} of a semidirect context.
Subgroup module_subgroup(const FusionContext& fc);

// P is F-centric iff every G-conjugate Q of P lying in S satisfies
// C_S(Q) <= Q.  p_centric checks the equivalent ambient form: Z(P) is a
// Sylow p-subgroup of C_G(P).  Both are exposed so they can be cross-checked.
bool f_centric(const FusionContext& fc, const Subgroup& p);
bool p_centric(const FusionContext& fc, const Subgroup& p);

// All F-centric subgroups of S, in subgroup-lattice order.  Enumerates the
// full lattice of S, so only viable when all_subgroups(S) fits the budget.
std::vector<Subgroup> centric_set(const FusionContext& fc,
                                  uint64_t lattice_budget = 1 << 14);

// The object families of the classification theorem, for a semidirect
// context: X = all subgroups of S containing M (enumerated directly, one
// coset-generator extension at a time), Y = X minus the conjugacy class of M.
// Checks that X is F-centric and closed under F-conjugacy.
struct TheoremSets {
  std::vector<Subgroup> x;    // ascending by order, then by element list
  std::vector<int> y;         // indices into x
  int m_index = -1;           // position of M itself in x
};
TheoremSets theorem_sets(const FusionContext& fc);

// Morphisms P -> Q of the orbit category O(F): double cosets
// Q \ T_G(P,Q) / C_G(P), where [g] acts as x -> g x g^-1.  Elements are the
// full transporter, sorted; cls[i] is the class of telems[i]; rep[c] is the
// least element of class c.
struct RepHoms {
  std::vector<ElemIdx> telems;
  std::vector<uint32_t> cls;
  std::vector<ElemIdx> rep;
  uint32_t class_of(ElemIdx t) const;  // t must lie in the transporter
};
RepHoms rep_homs(const FusionContext& fc, const Subgroup& p, const Subgroup& q);

// The orbit category on a fixed object list, with composition tables
// ([h] o [g] = [hg]) and a conjugator representative per morphism.
struct FOrbitCategory {
  GroupPtr g;
  std::vector<Subgroup> objects;
  FiniteCategory cat;
  std::vector<RepHoms> homs;  // [a*n+b]: morphisms a -> b
};
FOrbitCategory f_orbit_category(const FusionContext& fc,
                                std::vector<Subgroup> objects);

// Local data at an F-centric P: Out_F(P) = N_G(P) / (P C_G(P)) together with
// its action on Z(P) = C_S(P), which must be elementary abelian (anything
// else is outside the accepted scope and raises a check failure).
struct ClassLocalData {
  Subgroup rep;                  // P
  Subgroup zp;                   // Z(P) = C_S(P)
  GroupPtr out;                  // Out_F(P), as a coset-permutation group
  std::vector<ElemIdx> out_rep;  // parent-group representative per element
  std::vector<ElemIdx> zbasis;   // GF(p) basis of Z(P), as group elements
  GModule zmod;                  // Z(P) as an Out_F(P)-module
};
ClassLocalData out_f(const FusionContext& fc, const Subgroup& p);

// Lambda^i(Out_F(P); Z(P)) for i = 0..i_max via the poset backend.
LambdaResult class_local_lambda(const FusionContext& fc, const Subgroup& p,
                                int i_max, const Budgets& budgets = {});

// Classification counts for linking systems over F^X and F^Y, driven by the
// obstruction group Lambda^3(Gamma; M): one X-class, p^dim Y-classes, and a
// per-conjugacy-class table of local obstruction dimensions.
struct ClassifyReport {
  int prime = 2;
  std::string group_spec;
  std::string module_spec;
  std::vector<int> lambda_dims;  // Lambda^0..3(Gamma; M)
  int x_classes = 1;
  int y_classes = 1;
  std::string note;              // which Y-classes extend
  struct Row {
    std::string rep;             // label "X[i]" in theorem_sets order
    uint64_t order = 0;
    uint64_t out_f_order = 0;
    int zp_dim = 0;
    std::vector<int> lambda_dims;  // degrees 0..4
  };
  std::vector<Row> per_class_table;  // one row per F-class in X
};
ClassifyReport classify_linking_systems(const FusionContext& fc,
                                        const Budgets& budgets = {});

// Partition of `objects` into F-conjugacy classes (indices into `objects`),
// each class sorted, classes ordered by first member.
std::vector<std::vector<int>> f_conjugacy_classes(
    const FusionContext& fc, const std::vector<Subgroup>& objects);

// Higher limits over the orbit category on `objects` of the center functor
// P -> Z(P), with [g] : P -> Q acting by z -> g^-1 z g.  Every object must be
// F-centric.  Direct nerve computation; exponential in chain depth.
LambdaResult lim_z_direct(const FusionContext& fc,
                          const std::vector<Subgroup>& objects, int i_max,
                          const Budgets& budgets = {});

}  // namespace oblim
