#include <doctest.h>

#include <map>
#include <random>

#include "oblim/group.hpp"

using namespace oblim;

namespace {

// p-part of n.
uint64_t p_part(uint64_t n, int p) {
  uint64_t q = 1;
  while (n % p == 0) { n /= p; q *= p; }
  return q;
}

bool is_p_power(uint64_t n, int p) {
  while (n % p == 0) n /= p;
  return n == 1;
}

}  // namespace

TEST_CASE("symmetric group basics") {
  auto s3 = symmetric_group(3);
  CHECK(s3->order() == 6);
  std::map<int, int> orders;
  for (ElemIdx i = 0; i < s3->order(); ++i) ++orders[s3->elem_order(i)];
  CHECK(orders == std::map<int, int>{{1, 1}, {2, 3}, {3, 2}});

  std::mt19937 rng(11);
  for (int t = 0; t < 50; ++t) {
    ElemIdx a = rng() % s3->order(), b = rng() % s3->order(), c = rng() % s3->order();
    CHECK(s3->mul_idx(s3->mul_idx(a, b), c) == s3->mul_idx(a, s3->mul_idx(b, c)));
    CHECK(s3->mul_idx(a, s3->inv_idx(a)) == s3->identity_index());
  }

  CHECK(symmetric_group(4)->order() == 24);
  CHECK(cyclic_group(6)->order() == 6);
  CHECK(cyclic_group(1)->order() == 1);
}

TEST_CASE("products and wreaths") {
  auto s3 = symmetric_group(3);
  auto prod = direct_product({s3, s3});
  CHECK(prod->order() == 36);
  auto w = wreath_cyclic(s3, 2);
  CHECK(w->order() == 72);

  // The rotation permutes the copies: conjugating copy 0 lands in copy 1.
  Elem a = wreath_embed(*w, s3->elem(1), 0);
  ElemIdx ai = w->index_of(a);
  // the last generator of a wreath product is the rotation
  ElemIdx rot = w->generators().back();
  ElemIdx moved = w->conj_idx(rot, ai);
  Elem expect0 = wreath_embed(*w, s3->elem(1), 1);
  Elem expect1 = wreath_embed(*w, s3->elem(1), 0);
  bool in_some_copy = (moved == w->index_of(expect0)) || (moved == w->index_of(expect1));
  CHECK(in_some_copy);
  CHECK(moved != ai);

  auto big = wreath_cyclic(wreath_cyclic(s3, 2), 2);
  CHECK(big->order() == 10368);
}

TEST_CASE("semidirect products") {
  // C3 x| C2 with inversion: the nonabelian group of order 6.
  auto c2 = cyclic_group(2);
  auto action = std::make_shared<std::vector<Mat>>();
  Mat one = Mat::identity(3, 1);
  Mat invm(3, 1, 1);
  invm.at(0, 0) = 2;
  // element order in C2: identity sorts first
  action->push_back(one);
  action->push_back(invm);
  auto g = semidirect_pairs(3, 1, c2, action);
  CHECK(g->order() == 6);
  bool abelian = true;
  for (ElemIdx a = 0; a < g->order() && abelian; ++a)
    for (ElemIdx b = 0; b < g->order(); ++b)
      if (g->mul_idx(a, b) != g->mul_idx(b, a)) { abelian = false; break; }
  CHECK_FALSE(abelian);

  std::mt19937 rng(5);
  for (int t = 0; t < 100; ++t) {
    ElemIdx a = rng() % g->order(), b = rng() % g->order(), c = rng() % g->order();
    CHECK(g->mul_idx(g->mul_idx(a, b), c) == g->mul_idx(a, g->mul_idx(b, c)));
    Elem ea = g->elem(a), eb = g->elem(b);
    CHECK(g->index_of(g->mul(ea, eb)) == g->mul_idx(a, b));
    CHECK(g->index_of(g->inv(ea)) == g->inv_idx(a));
  }
}

TEST_CASE("packed semidirect path agrees with generic multiplication") {
  // GF(2)^2 x| S3 (acting through the 2-dimensional quotient of the
  // permutation module) has order 24; small enough to check exhaustively.
  auto s3 = symmetric_group(3);
  auto action = std::make_shared<std::vector<Mat>>();
  for (ElemIdx i = 0; i < s3->order(); ++i) {
    // permutation matrix of the action on {e0, e1, e0+e1}, written in e0,e1
    const Elem& e = s3->elem(i);
    Mat m(2, 2, 2);
    for (int j = 0; j < 2; ++j) {
      int img = e.data[j];
      if (img < 2) m.at(img, j) = 1;
      else { m.at(0, j) = 1; m.at(1, j) = 1; }
    }
    action->push_back(m);
  }
  auto g = semidirect_pairs(2, 2, s3, action);
  CHECK(g->order() == 24);
  for (ElemIdx a = 0; a < g->order(); ++a)
    for (ElemIdx b = 0; b < g->order(); ++b)
      CHECK(g->mul_idx(a, b) == g->index_of(g->mul(g->elem(a), g->elem(b))));
}

TEST_CASE("subgroup machinery") {
  auto s3 = symmetric_group(3);
  CHECK(all_subgroups(full_subgroup(s3)).size() == 6);

  auto s4 = symmetric_group(4);
  auto d8 = sylow(s4, 2);
  CHECK(d8.order() == 8);
  CHECK(all_subgroups(d8).size() == 10);

  auto c2c2 = direct_product({cyclic_group(2), cyclic_group(2)});
  CHECK(all_subgroups(full_subgroup(c2c2)).size() == 5);
  auto c2cubed = direct_product({cyclic_group(2), cyclic_group(2), cyclic_group(2)});
  CHECK(all_subgroups(full_subgroup(c2cubed)).size() == 16);

  CHECK_THROWS_AS(all_subgroups(full_subgroup(s4), 3), BudgetError);
}

TEST_CASE("normalizer, centralizer, transporter") {
  auto s3 = symmetric_group(3);
  auto t = sylow(s3, 2);
  REQUIRE(t.order() == 2);
  auto n = normalizer(t);
  CHECK(n.order() == 2);
  CHECK(n.same(t));

  auto c3 = sylow(s3, 3);
  CHECK(normalizer(c3).order() == 6);
  CHECK(centralizer(c3).order() == 3);

  // transporter(P, P) is exactly the normalizer.
  auto tp = transporter(t, t);
  CHECK(tp == n.elems);

  // orbit-stabilizer: |transporter(P, Q)| is 0 or |N(Q)|.
  auto s4 = symmetric_group(4);
  auto d8 = sylow(s4, 2);
  auto subs = all_subgroups(d8);
  for (const auto& p : subs) {
    for (const auto& q : subs) {
      auto tr = transporter(p, q);
      if (p.order() != q.order()) {
        if (p.order() > q.order()) CHECK(tr.empty());
        continue;
      }
      if (!tr.empty()) CHECK(tr.size() == normalizer(q).order());
    }
  }
}

TEST_CASE("p-core") {
  auto s4 = symmetric_group(4);
  CHECK(p_core(s4, 2).order() == 4);
  CHECK(p_core(s4, 3).order() == 1);
  auto s3 = symmetric_group(3);
  CHECK(p_core(s3, 3).order() == 3);
  CHECK(p_core(s3, 2).order() == 1);
}

TEST_CASE("sylow certification battery") {
  auto s3 = symmetric_group(3);
  std::vector<GroupPtr> groups = {
      s3,
      symmetric_group(4),
      cyclic_group(6),
      cyclic_group(12),
      direct_product({s3, s3}),
      direct_product({s3, cyclic_group(2)}),
      wreath_cyclic(s3, 2),
      wreath_cyclic(symmetric_group(4), 3),
  };
  for (const auto& g : groups) {
    for (int p : {2, 3}) {
      auto t = sylow(g, p);
      CHECK(t.order() == p_part(g->order(), p));
      CHECK(is_p_power(t.order(), p));
      auto closure = generated_subgroup_idx(g, t.gens);
      CHECK(closure.elems == t.elems);
    }
  }
}

TEST_CASE("quotient groups") {
  auto s4 = symmetric_group(4);
  auto v4 = p_core(s4, 2);
  auto q = quotient_group(full_subgroup(s4), v4);
  CHECK(q.group->order() == 6);
  bool abelian = true;
  for (ElemIdx a = 0; a < q.group->order() && abelian; ++a)
    for (ElemIdx b = 0; b < q.group->order(); ++b)
      if (q.group->mul_idx(a, b) != q.group->mul_idx(b, a)) { abelian = false; break; }
  CHECK_FALSE(abelian);
  // the representative of the identity class lies in V4
  CHECK(v4.contains(q.rep[q.group->identity_index()]));

  auto c6 = cyclic_group(6);
  auto c3 = sylow(c6, 3);
  CHECK(quotient_group(full_subgroup(c6), c3).group->order() == 2);

  // K not normal in N: C2 inside S3.
  auto s3 = symmetric_group(3);
  auto c2 = sylow(s3, 2);
  CHECK_THROWS_AS(quotient_group(full_subgroup(s3), c2), CheckError);
}

TEST_CASE("conjugate and generated subgroups") {
  auto s4 = symmetric_group(4);
  auto d8 = sylow(s4, 2);
  for (ElemIdx g = 0; g < s4->order(); ++g) {
    auto moved = conjugate_subgroup(d8, g);
    CHECK(moved.order() == 8);
    CHECK(generated_subgroup_idx(s4, moved.gens).elems == moved.elems);
  }
  CHECK(trivial_subgroup(s4).order() == 1);
  CHECK(full_subgroup(s4).order() == 24);
}
