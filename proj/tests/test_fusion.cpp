#include <doctest.h>

#include <algorithm>

#include "oblim/fusion.hpp"

using namespace oblim;

namespace {

// Indices of the four F-centric subgroups of Sym(4) at p = 2: the cyclic C4,
// the normal four-group, the other four-group in S, and S itself.
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

}  // namespace

TEST_CASE("centric subgroups of Sym(4)") {
  FusionContext fc = fusion_context(symmetric_group(4), 2);
  CHECK(fc.s.order() == 8);

  std::vector<Subgroup> cs = centric_set(fc);
  REQUIRE(cs.size() == 4);
  std::vector<uint64_t> orders;
  for (const Subgroup& o : cs) orders.push_back(o.order());
  std::sort(orders.begin(), orders.end());
  CHECK(orders == std::vector<uint64_t>{4, 4, 4, 8});

  // The two characterisations agree on the whole lattice of S.
  int centric_count = 0;
  for (const Subgroup& h : all_subgroups(fc.s)) {
    CHECK(f_centric(fc, h) == p_centric(fc, h));
    centric_count += f_centric(fc, h);
  }
  CHECK(centric_count == 4);

  // Small subgroups fail: C_S is too big.
  CHECK_FALSE(f_centric(fc, trivial_subgroup(fc.g)));
  CHECK(f_centric(fc, fc.s));
}

TEST_CASE("orbit category morphism counts for Sym(4)") {
  FusionContext fc = fusion_context(symmetric_group(4), 2);
  std::vector<Subgroup> cs = centric_set(fc);
  CentricIdx ix = locate(fc, cs);

  FOrbitCategory oc = f_orbit_category(fc, cs);
  oc.cat.check_laws();
  auto morc = [&](int a, int b) { return oc.cat.morc(a, b); };
  CHECK(morc(ix.v4n, ix.v4n) == 6);  // Out_F of the normal four-group
  CHECK(morc(ix.s, ix.s) == 1);
  CHECK(morc(ix.v4n, ix.s) == 3);
  CHECK(morc(ix.c4, ix.c4) == 2);
  CHECK(morc(ix.c4, ix.s) == 1);
  CHECK(morc(ix.v4o, ix.v4o) == 2);
  CHECK(morc(ix.v4o, ix.s) == 1);
  CHECK(morc(ix.s, ix.v4n) == 0);
  CHECK(morc(ix.c4, ix.v4n) == 0);
  CHECK(morc(ix.v4n, ix.c4) == 0);

  RepHoms rh = rep_homs(fc, cs[size_t(ix.v4n)], cs[size_t(ix.v4n)]);
  CHECK(rh.telems.size() == 24);  // V4 is normal: the whole group transports
  CHECK(rh.rep.size() == 6);
  CHECK(rh.class_of(fc.g->identity_index()) ==
        oc.cat.identity_id[size_t(ix.v4n)]);
}

TEST_CASE("local data at centric classes of Sym(4)") {
  FusionContext fc = fusion_context(symmetric_group(4), 2);
  std::vector<Subgroup> cs = centric_set(fc);
  CentricIdx ix = locate(fc, cs);

  ClassLocalData v4 = out_f(fc, cs[size_t(ix.v4n)]);
  CHECK(v4.out->order() == 6);
  CHECK(v4.zmod.dim == 2);
  CHECK(v4.zp.order() == 4);
  CHECK(class_local_lambda(fc, cs[size_t(ix.v4n)], 3).dims ==
        std::vector<int>{0, 1, 0, 0});

  ClassLocalData v4o = out_f(fc, cs[size_t(ix.v4o)]);
  CHECK(v4o.out->order() == 2);
  CHECK(class_local_lambda(fc, cs[size_t(ix.v4o)], 2).dims ==
        std::vector<int>{0, 0, 0});  // O_p(Out) != 1

  ClassLocalData s = out_f(fc, cs[size_t(ix.s)]);
  CHECK(s.out->order() == 1);
  CHECK(s.zmod.dim == 1);
  CHECK(class_local_lambda(fc, cs[size_t(ix.s)], 2).dims ==
        std::vector<int>{1, 0, 0});

  // Z(C4) is cyclic of order 4: outside the elementary-abelian scope.
  CHECK_THROWS_AS(out_f(fc, cs[size_t(ix.c4)]), CheckError);
}

TEST_CASE("conjugacy classes over the full lattice of S") {
  FusionContext fc = fusion_context(symmetric_group(4), 2);
  std::vector<Subgroup> lattice = all_subgroups(fc.s);
  REQUIRE(lattice.size() == 10);
  auto classes = f_conjugacy_classes(fc, lattice);
  CHECK(classes.size() == 7);
  std::vector<size_t> sizes;
  for (const auto& c : classes) sizes.push_back(c.size());
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<size_t>{1, 1, 1, 1, 1, 2, 3});
}

TEST_CASE("theorem families for the rank-two semidirect model") {
  GModule v = natural_module(2);
  FusionContext fc = fusion_context_semidirect(v, "semidirect(natural(2),Sym(3))",
                                               "natural(2)");
  CHECK(fc.g->order() == 24);
  CHECK(fc.s.order() == 8);

  TheoremSets ts = theorem_sets(fc);
  REQUIRE(ts.x.size() == 2);
  CHECK(ts.m_index == 0);
  CHECK(ts.x[0].order() == 4);
  CHECK(ts.x[1].order() == 8);
  CHECK(ts.y == std::vector<int>{1});
  CHECK(module_subgroup(fc).elems == ts.x[0].elems);
  CHECK(ts.x[1].elems == fc.s.elems);
}

TEST_CASE("classification report for the rank-two semidirect model") {
  GModule v = natural_module(2);
  FusionContext fc = fusion_context_semidirect(v, "semidirect(natural(2),Sym(3))",
                                               "natural(2)");
  ClassifyReport r = classify_linking_systems(fc);
  CHECK(r.prime == 2);
  CHECK(r.lambda_dims == std::vector<int>{0, 1, 0, 0});
  CHECK(r.x_classes == 1);
  CHECK(r.y_classes == 1);  // p^0: Lambda^3 vanishes
  CHECK(!r.note.empty());
  REQUIRE(r.per_class_table.size() == 2);
  const auto& m_row = r.per_class_table[0];
  CHECK(m_row.rep == "X[0]");
  CHECK(m_row.order == 4);
  CHECK(m_row.out_f_order == 6);
  CHECK(m_row.zp_dim == 2);
  CHECK(m_row.lambda_dims == std::vector<int>{0, 1, 0, 0, 0});
  const auto& s_row = r.per_class_table[1];
  CHECK(s_row.rep == "X[1]");
  CHECK(s_row.order == 8);
  CHECK(s_row.out_f_order == 1);
  CHECK(s_row.zp_dim == 1);
  CHECK(s_row.lambda_dims == std::vector<int>{1, 0, 0, 0, 0});
}

TEST_CASE("center-functor limits on Sym(4) families") {
  FusionContext fc = fusion_context(symmetric_group(4), 2);
  std::vector<Subgroup> cs = centric_set(fc);
  CentricIdx ix = locate(fc, cs);

  // One object, one morphism: global sections are all of Z(S).
  LambdaResult top = lim_z_direct(fc, {cs[size_t(ix.s)]}, 2);
  CHECK(top.dims == std::vector<int>{1, 0, 0});
  CHECK(top.backend == "direct");

  // {V4, S}: degree 0 dies against the invariants, and the connecting map of
  // the subfunctor sequence cancels Lambda^1(Sym(3); Z(V4)) against Z(S).
  LambdaResult pair = lim_z_direct(fc, {cs[size_t(ix.v4n)], cs[size_t(ix.s)]}, 2);
  CHECK(pair.dims == std::vector<int>{0, 0, 0});

  // The full centric family includes C4, whose center is not elementary.
  CHECK_THROWS_AS(lim_z_direct(fc, cs, 2), CheckError);
}
