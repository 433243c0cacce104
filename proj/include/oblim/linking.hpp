#pragma once

// Transporter-quotient linking systems: morphisms are cosets of the largest
// normal p'-subgroup of each centralizer, with distinguished lifts delta of
// Sylow-level conjugations. Axioms (A) free central action with quotient the
// fusion homomorphisms, (B) delta projects to conjugation, (C) the
// delta-equivariance relation — all checked exhaustively, with failures
// reported rather than thrown. Every table is plain data, so tests can
// corrupt a copy and watch the checks object.

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "oblim/fusion.hpp"
#include "oblim/group.hpp"

namespace oblim {

struct LinkingCategory {
  GroupPtr g;
  int p = 2;
  Subgroup s;                   // ambient Sylow group; objects live inside it
  std::vector<Subgroup> objects;
  int s_object = -1;            // index of S among the objects, -1 if absent

  std::vector<Subgroup> zp;     // Z(P) = C_S(P) per object
  std::vector<Subgroup> cgp;    // C_G(P)
  std::vector<Subgroup> opc;    // O_{p'}(C_G(P))

  // Per pair (a,b), over the sorted transporter T_G(P_a, P_b): morphism id of
  // each element (right cosets t * O_{p'}(C_G(P_a))), least representative per
  // morphism, fusion class per morphism (right cosets t * C_G(P_a)), least
  // representative per fusion class, and a CSR fiber index (the morphisms of
  // each fusion class, in id order).
  std::vector<std::vector<ElemIdx>> telems;
  std::vector<std::vector<uint32_t>> coset;
  std::vector<std::vector<ElemIdx>> mrep;
  std::vector<std::vector<uint32_t>> fclass;
  std::vector<std::vector<ElemIdx>> frep;
  std::vector<std::vector<uint32_t>> fiber_start;
  std::vector<std::vector<uint32_t>> fiber_items;

  // delta[a*n+b]: the distinguished lift T_S(P_a, P_b) -> morphism id.
  // A weak system keeps only the diagonal maps, restricted to P itself.
  std::vector<std::unordered_map<ElemIdx, uint32_t>> delta;

  int n() const { return int(objects.size()); }
  uint32_t morc(int a, int b) const { return uint32_t(mrep[size_t(a) * n() + b].size()); }
  uint32_t fcount(int a, int b) const {
    return uint32_t(frep[size_t(a) * n() + b].size());
  }
  // Coset / fusion-class lookup of a transporter element (CheckError outside).
  uint32_t coset_of(int a, int b, ElemIdx t) const;
  uint32_t fclass_of(int a, int b, ElemIdx t) const;
  uint32_t identity_mor(int a) const;
  uint32_t pi(int a, int b, uint32_t f) const {
    return fclass[size_t(a) * n() + b][f];
  }
  // h o f for f : a -> b, h : b -> c, by representative multiplication.
  uint32_t compose(int a, int b, int c, uint32_t f, uint32_t h) const;
};

// The transporter-quotient model on the given objects, which must be
// F-centric, mutually distinct, and closed under F-conjugacy and overgroups
// within S (overgroup closure is verified against the full lattice of S when
// that is small enough to enumerate; otherwise S itself must be an object).
LinkingCategory canonical_linking(const FusionContext& fc,
                                  std::vector<Subgroup> objects);

struct AxiomReport {
  bool pass_a = true, pass_b = true, pass_c = true;
  std::string detail_a, detail_b, detail_c;  // first counterexample, else empty
  bool ok() const { return pass_a && pass_b && pass_c; }
};

// Exhaustive axiom check: (A) counting |Mor(P,Q)| = |Z(P)| * |Hom_F(P,Q)| and
// freeness of the Z(P)-action, (B) delta defined exactly on T_S(P,Q) and
// projecting to conjugation, (C) f o delta_P(g) = delta_Q(pi(f)(g)) o f for
// every morphism f and g in P.
AxiomReport check_axioms(const LinkingCategory& l);

struct WeakLinking {
  LinkingCategory base;  // delta reduced to the diagonal maps on P itself
};

WeakLinking weaken(const LinkingCategory& l);
// Same as check_axioms with (B) restricted to the per-object maps.
AxiomReport check_axioms_weak(const WeakLinking& w);

// Keeps objects[i] for i in `keep` (sorted, distinct); the kept family must
// again be closed under F-conjugacy and overgroups within the object list.
LinkingCategory restrict_objects(const LinkingCategory& l, const std::vector<int>& keep);

// The unique psi1 : a -> b with pi(psi1) = phi1 and psi2 o psi1 = psi, given
// psi : a -> r, psi2 : b -> r. Precondition pi(psi2) o phi1 = pi(psi);
// CheckError on violation or if the fiber scan finds zero or several.
uint32_t unique_lift(const LinkingCategory& l, int a, int b, int r, uint32_t psi,
                     uint32_t psi2, uint32_t phi1);

// Rebuilds all delta maps from a weak system plus a choice of inclusions
// iota[a] in Mor(P_a, S) with pi(iota[a]) the conjugation by e (iota at S
// must be the identity morphism): delta_{P,Q}(g) is the unique lift of
// delta_S(g) o iota_P through iota_Q. The result restricts back to w.
LinkingCategory extend_weak(const WeakLinking& w, const std::vector<uint32_t>& iota);

// The isomorphism between two extensions sharing one underlying category:
// z[a] in Z(P_a) with iota'_a = iota_a o delta_a(z[a]), and
// Theta(psi) = delta_Q(z_Q) o psi o delta_P(z_P)^{-1}, which satisfies
// Theta o delta' = delta and pi o Theta = pi (both verified, along with
// bijectivity per pair and composition preservation on a deterministic
// sample of at most `comp_budget` composable pairs).
struct ThetaIso {
  std::vector<ElemIdx> z;
  std::vector<std::vector<uint32_t>> map;  // per pair: morphism id -> image id
};
ThetaIso iso_of_extensions(const LinkingCategory& primed, const LinkingCategory& base,
                           uint64_t comp_budget = 200000);

}  // namespace oblim
