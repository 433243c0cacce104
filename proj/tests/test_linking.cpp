#include <doctest.h>

#include <algorithm>

#include "oblim/linking.hpp"

using namespace oblim;

namespace {

struct CentricIdx {
  int c4 = -1, v4n = -1, v4o = -1, s = -1;
};

CentricIdx locate(const FusionContext& fc, const std::vector<Subgroup>& obj) {
  CentricIdx ix;
  for (int i = 0; i < int(obj.size()); ++i) {
    const Subgroup& o = obj[size_t(i)];
    if (o.order() == 8) {
      ix.s = i;
    } else if (std::any_of(o.elems.begin(), o.elems.end(),
                           [&](ElemIdx x) { return fc.g->elem_order(x) == 4; })) {
      ix.c4 = i;
    } else if (conjugation_orbit(o).size() == 1) {
      ix.v4n = i;
    } else {
      ix.v4o = i;
    }
  }
  REQUIRE(ix.c4 >= 0);
  REQUIRE(ix.v4n >= 0);
  REQUIRE(ix.v4o >= 0);
  REQUIRE(ix.s >= 0);
  return ix;
}

std::vector<uint32_t> identity_inclusions(const LinkingCategory& l) {
  std::vector<uint32_t> iota(size_t(l.n()));
  for (int a = 0; a < l.n(); ++a)
    iota[size_t(a)] = l.coset_of(a, l.s_object, l.g->identity_index());
  return iota;
}

}  // namespace

TEST_CASE("canonical linking system of Sym(4)") {
  FusionContext fc = fusion_context(symmetric_group(4), 2);
  std::vector<Subgroup> cs = centric_set(fc);
  CentricIdx ix = locate(fc, cs);
  LinkingCategory l = canonical_linking(fc, cs);

  CHECK(l.s_object == ix.s);
  CHECK(l.morc(ix.s, ix.s) == 8);      // Aut_L(S) = N_G(S) = S
  CHECK(l.morc(ix.v4n, ix.v4n) == 24); // Aut_L(V4) = N_G(V4) = whole group
  CHECK(l.morc(ix.c4, ix.c4) == 8);
  CHECK(l.morc(ix.v4o, ix.v4o) == 8);
  CHECK(l.morc(ix.v4n, ix.s) == 24);
  CHECK(l.fcount(ix.v4n, ix.s) == 6);
  CHECK(l.morc(ix.s, ix.v4n) == 0);
  for (int a = 0; a < l.n(); ++a) CHECK(l.opc[size_t(a)].order() == 1);

  // delta covers exactly the Sylow-level transporters.
  CHECK(l.delta[size_t(ix.v4n) * l.n() + ix.s].size() == 8);
  CHECK(l.delta[size_t(ix.s) * l.n() + ix.s].size() == 8);

  // Identity morphisms act as units on the stored tables.
  for (int a = 0; a < l.n(); ++a)
    for (int b = 0; b < l.n(); ++b)
      for (uint32_t f = 0; f < l.morc(a, b); ++f) {
        CHECK(l.compose(a, a, b, l.identity_mor(a), f) == f);
        CHECK(l.compose(a, b, b, f, l.identity_mor(b)) == f);
      }

  AxiomReport rep = check_axioms(l);
  CHECK(rep.pass_a);
  CHECK(rep.pass_b);
  CHECK(rep.pass_c);
  CHECK(rep.ok());
}

TEST_CASE("object family validation") {
  FusionContext fc = fusion_context(symmetric_group(4), 2);
  std::vector<Subgroup> cs = centric_set(fc);
  CentricIdx ix = locate(fc, cs);

  // A C2 is never centric.
  ElemIdx invol = 0;
  for (ElemIdx x : fc.s.elems)
    if (fc.g->elem_order(x) == 2) {
      invol = x;
      break;
    }
  CHECK_THROWS_AS(
      canonical_linking(fc, {generated_subgroup_idx(fc.g, {invol})}), CheckError);

  // Dropping the overgroup S breaks closure.
  CHECK_THROWS_AS(canonical_linking(fc, {cs[size_t(ix.v4n)]}), CheckError);

  // S alone is a valid family.
  LinkingCategory top = canonical_linking(fc, {cs[size_t(ix.s)]});
  CHECK(top.n() == 1);
  CHECK(top.s_object == 0);
  CHECK(check_axioms(top).ok());
}

TEST_CASE("weakening and extension round-trip") {
  FusionContext fc = fusion_context(symmetric_group(4), 2);
  LinkingCategory l = canonical_linking(fc, centric_set(fc));

  WeakLinking w = weaken(l);
  for (int a = 0; a < l.n(); ++a)
    for (int b = 0; b < l.n(); ++b) {
      const auto& d = w.base.delta[size_t(a) * l.n() + b];
      if (a == b)
        CHECK(d.size() == l.objects[size_t(a)].order());
      else
        CHECK(d.empty());
    }
  CHECK(check_axioms_weak(w).ok());

  LinkingCategory back = extend_weak(w, identity_inclusions(l));
  CHECK(back.delta == l.delta);
  CHECK(check_axioms(back).ok());
}

TEST_CASE("shifted inclusions give an isomorphic extension") {
  FusionContext fc = fusion_context(symmetric_group(4), 2);
  std::vector<Subgroup> cs = centric_set(fc);
  CentricIdx ix = locate(fc, cs);
  LinkingCategory l = canonical_linking(fc, cs);
  WeakLinking w = weaken(l);
  const ElemIdx e = fc.g->identity_index();

  // Shift the inclusion of the normal four-group by a non-trivial central z.
  ElemIdx z = e;
  for (ElemIdx x : l.zp[size_t(ix.v4n)].elems)
    if (x != e) {
      z = x;
      break;
    }
  REQUIRE(z != e);
  std::vector<uint32_t> iota = identity_inclusions(l);
  const uint32_t dz = l.delta[size_t(ix.v4n) * l.n() + ix.v4n].at(z);
  iota[size_t(ix.v4n)] = l.compose(ix.v4n, ix.v4n, ix.s, dz, iota[size_t(ix.v4n)]);

  LinkingCategory ext = extend_weak(w, iota);
  CHECK(ext.delta != l.delta);       // genuinely different lifts off the diagonal
  CHECK(check_axioms(ext).ok());     // but still a linking system

  ThetaIso th = iso_of_extensions(ext, l);
  CHECK(th.z[size_t(ix.v4n)] == z);
  CHECK(th.z[size_t(ix.s)] == e);
  CHECK(th.z[size_t(ix.c4)] == e);
  CHECK(th.z[size_t(ix.v4o)] == e);

  // The identity comparison gives identity shifts and identity maps.
  ThetaIso id = iso_of_extensions(l, l);
  for (int a = 0; a < l.n(); ++a) CHECK(id.z[size_t(a)] == e);
  for (int a = 0; a < l.n(); ++a)
    for (int b = 0; b < l.n(); ++b) {
      const auto& m = id.map[size_t(a) * l.n() + b];
      for (uint32_t f = 0; f < m.size(); ++f) CHECK(m[f] == f);
    }
}

TEST_CASE("axiom checks catch corrupted tables") {
  FusionContext fc = fusion_context(symmetric_group(4), 2);
  std::vector<Subgroup> cs = centric_set(fc);
  CentricIdx ix = locate(fc, cs);
  LinkingCategory l = canonical_linking(fc, cs);
  const size_t diag = size_t(ix.v4n) * l.n() + ix.v4n;
  const ElemIdx e = fc.g->identity_index();

  // Swapping two delta values composes delta with a non-central automorphism
  // of V4: (A) and (B) survive, the equivariance axiom (C) does not.
  {
    LinkingCategory bad = l;
    std::vector<ElemIdx> nt;
    for (ElemIdx x : l.objects[size_t(ix.v4n)].elems)
      if (x != e) nt.push_back(x);
    REQUIRE(nt.size() == 3);
    auto& d = bad.delta[diag];
    std::swap(d.at(nt[0]), d.at(nt[1]));
    AxiomReport rep = check_axioms(bad);
    CHECK(rep.pass_a);
    CHECK(rep.pass_b);
    CHECK_FALSE(rep.pass_c);
    CHECK(!rep.detail_c.empty());
  }

  // Collapsing delta onto the identity kills injectivity and freeness.
  {
    LinkingCategory bad = l;
    auto& d = bad.delta[diag];
    ElemIdx x = 0;
    for (ElemIdx c : l.objects[size_t(ix.v4n)].elems)
      if (c != e) {
        x = c;
        break;
      }
    d.at(x) = d.at(e);
    AxiomReport rep = check_axioms(bad);
    CHECK_FALSE(rep.pass_a);
    CHECK_FALSE(rep.pass_b);
  }

  // Moving one morphism to a different fusion class breaks the fiber
  // structure of (A) without touching delta.
  {
    LinkingCategory bad = l;
    uint32_t m0 = UINT32_MAX;
    for (uint32_t f = 0; f < bad.morc(ix.v4n, ix.v4n); ++f)
      if (!fc.s.contains(bad.mrep[diag][f])) {
        m0 = f;
        break;
      }
    REQUIRE(m0 != UINT32_MAX);
    bad.fclass[diag][m0] = (bad.fclass[diag][m0] + 1) % bad.fcount(ix.v4n, ix.v4n);
    AxiomReport rep = check_axioms(bad);
    CHECK_FALSE(rep.pass_a);
    CHECK(rep.pass_b);
    CHECK(rep.pass_c);
  }
}

TEST_CASE("unique lifting") {
  FusionContext fc = fusion_context(symmetric_group(4), 2);
  std::vector<Subgroup> cs = centric_set(fc);
  CentricIdx ix = locate(fc, cs);
  LinkingCategory l = canonical_linking(fc, cs);
  const int a = ix.v4n, b = ix.v4n, r = ix.s;

  for (uint32_t k = 0; k < l.morc(a, b); ++k)
    for (uint32_t psi2 = 0; psi2 < l.morc(b, r); ++psi2) {
      const uint32_t psi = l.compose(a, b, r, k, psi2);
      CHECK(unique_lift(l, a, b, r, psi, psi2, l.pi(a, b, k)) == k);
    }

  // Mismatched fusion class violates the precondition.
  const uint32_t psi2 = 0;
  const uint32_t psi = l.compose(a, b, r, 0, psi2);
  const uint32_t bad_phi = (l.pi(a, b, 0) + 1) % l.fcount(a, b);
  CHECK_THROWS_AS(unique_lift(l, a, b, r, psi, psi2, bad_phi), CheckError);
}

TEST_CASE("object restriction") {
  FusionContext fc = fusion_context(symmetric_group(4), 2);
  std::vector<Subgroup> cs = centric_set(fc);
  CentricIdx ix = locate(fc, cs);
  LinkingCategory l = canonical_linking(fc, cs);

  std::vector<int> keep{ix.c4, ix.s};
  std::sort(keep.begin(), keep.end());
  LinkingCategory cut = restrict_objects(l, keep);
  CHECK(cut.n() == 2);
  CHECK(cut.s_object >= 0);
  CHECK(check_axioms(cut).ok());
  const int c4_new = cut.objects[0].order() == 4 ? 0 : 1;
  CHECK(cut.morc(c4_new, c4_new) == 8);

  // V4 alone drops its overgroup S.
  CHECK_THROWS_AS(restrict_objects(l, {ix.v4n}), CheckError);
}

TEST_CASE("linking system of the rank-two semidirect model") {
  GModule v = natural_module(2);
  FusionContext fc = fusion_context_semidirect(v);
  TheoremSets ts = theorem_sets(fc);
  LinkingCategory lx = canonical_linking(fc, ts.x);
  CHECK(lx.n() == 2);
  CHECK(lx.morc(0, 0) == 24);  // Aut_L(M), M normal
  CHECK(lx.morc(1, 1) == 8);
  CHECK(check_axioms(lx).ok());

  WeakLinking w = weaken(lx);
  CHECK(check_axioms_weak(w).ok());
  CHECK(extend_weak(w, identity_inclusions(lx)).delta == lx.delta);

  // The Y family: everything except the class of M.
  std::vector<Subgroup> yobj;
  for (int i : ts.y) yobj.push_back(ts.x[size_t(i)]);
  LinkingCategory ly = canonical_linking(fc, yobj);
  CHECK(ly.n() == 1);
  CHECK(check_axioms(ly).ok());
}

TEST_CASE("nontrivial odd part of the centralizers") {
  auto g = direct_product({symmetric_group(4), cyclic_group(3)});
  FusionContext fc = fusion_context(g, 2);
  CHECK(fc.s.order() == 8);
  std::vector<Subgroup> cs = centric_set(fc);
  REQUIRE(cs.size() == 4);
  CentricIdx ix = locate(fc, cs);
  LinkingCategory l = canonical_linking(fc, cs);

  for (int a = 0; a < l.n(); ++a) CHECK(l.opc[size_t(a)].order() == 3);
  CHECK(l.morc(ix.s, ix.s) == 8);       // 24 transporter elements / C3
  CHECK(l.morc(ix.v4n, ix.v4n) == 24);  // 72 / C3
  CHECK(l.fcount(ix.v4n, ix.v4n) == 6);
  CHECK(l.zp[size_t(ix.v4n)].order() == 4);
  CHECK(check_axioms(l).ok());

  WeakLinking w = weaken(l);
  CHECK(check_axioms_weak(w).ok());
  CHECK(extend_weak(w, identity_inclusions(l)).delta == l.delta);
}
