#include <doctest.h>

#include <random>

#include "oblim/module.hpp"

using namespace oblim;

namespace {

// Brute-force fixed points: scan all p^dim vectors (small dims only).
int brute_fixed_dim(const GModule& m, const Subgroup& h) {
  require(m.dim <= 6, "test helper: dim too large");
  uint64_t total = 1;
  for (int i = 0; i < m.dim; ++i) total *= m.p;
  int count = 0;
  for (uint64_t code = 0; code < total; ++code) {
    std::vector<uint8_t> v(size_t(m.dim));
    uint64_t c = code;
    for (int i = 0; i < m.dim; ++i) { v[i] = uint8_t(c % m.p); c /= m.p; }
    bool fixed = true;
    for (ElemIdx g : h.gens)
      if (m.action(g).apply(v) != v) { fixed = false; break; }
    if (fixed) ++count;
  }
  // count = p^d for the fixed subspace dimension d
  int d = 0;
  while (count > 1) { count /= m.p; ++d; }
  return d;
}

}  // namespace

TEST_CASE("natural module of Sym(3) at p = 2") {
  GModule v = natural_module(2);
  CHECK(v.dim == 2);
  CHECK(v.p == 2);
  CHECK(is_faithful(v));
  auto g = v.owner;
  CHECK(fixed_points(v, full_subgroup(g)).empty());
  CHECK(fixed_points(v, trivial_subgroup(g)).size() == 2);
  CHECK(fixed_points(v, sylow(g, 2)).size() == 1);
  CHECK(fixed_points(v, sylow(g, 3)).empty());
}

TEST_CASE("natural module of Sym(4) at p = 3") {
  GModule m = natural_module(3);
  CHECK(m.dim == 3);
  CHECK(m.p == 3);
  CHECK(is_faithful(m));
  auto g = m.owner;
  CHECK(fixed_points(m, full_subgroup(g)).empty());
}

TEST_CASE("trivial and permutation-quotient modules") {
  auto s4 = symmetric_group(4);
  GModule t = trivial_module(s4, 2, 3);
  CHECK_FALSE(is_faithful(t));
  CHECK(fixed_points(t, full_subgroup(s4)).size() == 3);

  GModule q = perm_quotient_module(s4, 2);
  CHECK(q.dim == 3);
  // kernel of Sym(4) on the quotient module at p = 2 is trivial
  CHECK(is_faithful(q));
}

TEST_CASE("fixed points agree with brute force") {
  GModule v = natural_module(2);
  GModule m3 = natural_module(3);
  auto check_all = [&](const GModule& m) {
    auto subs = all_subgroups(sylow(m.owner, int(m.p)));
    for (const auto& h : subs)
      CHECK(int(fixed_points(m, h).size()) == brute_fixed_dim(m, h));
    CHECK(int(fixed_points(m, full_subgroup(m.owner)).size()) ==
          brute_fixed_dim(m, full_subgroup(m.owner)));
  };
  check_all(v);
  check_all(m3);
}

TEST_CASE("tensor modules") {
  GModule v = natural_module(2);
  auto prod = direct_product({v.owner, v.owner});
  GModule vv = tensor_module(prod, {v, v});
  CHECK(vv.dim == 4);
  CHECK(vv.p == 2);
  // spot-check the kron structure on embedded generators
  const Elem a = v.owner->elem(v.owner->generators()[0]);
  Elem left = product_embed(*prod, 0, a);
  Elem right = product_embed(*prod, 1, a);
  Mat ma = v.action(v.owner->generators()[0]);
  CHECK(vv.action(prod->index_of(left)) == ma.kron(Mat::identity(2, 2)));
  CHECK(vv.action(prod->index_of(right)) == Mat::identity(2, 2).kron(ma));
  CHECK(fixed_points(vv, full_subgroup(prod)).empty());
}

TEST_CASE("power modules over wreath products") {
  GModule v = natural_module(2);
  auto w = wreath_cyclic(v.owner, 2);
  GModule v2 = power_module(w, v);
  CHECK(v2.dim == 4);
  // copy-0 generator acts on the first block
  ElemIdx g0 = w->index_of(wreath_embed(*w, v.owner->elem(v.owner->generators()[0]), 0));
  Mat expect = v.action(v.owner->generators()[0]).kron(Mat::identity(2, 1));
  // blockwise: action on block 0, identity on block 1
  Mat got = v2.action(g0);
  Mat want(2, 4, 4);
  const Mat& ma = v.action(v.owner->generators()[0]);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) want.at(i, j) = ma.at(i, j);
  want.at(2, 2) = 1;
  want.at(3, 3) = 1;
  CHECK(got == want);
  (void)expect;
  // rotation has order 2 and is not the identity on the module
  ElemIdx rot = w->generators().back();
  CHECK_FALSE(v2.action(rot).is_identity());
  CHECK(v2.action(rot).mul(v2.action(rot)).is_identity());
}

TEST_CASE("module consistency is enforced") {
  // Sending a 3-cycle to a matrix of order 2 is not a representation.
  auto c3 = cyclic_group(3);
  Mat bad(3, 1, 1);
  bad.at(0, 0) = 2;  // order 2 in GF(3)*
  CHECK_THROWS_AS(make_module(c3, {bad}, 3, 1), CheckError);
}

TEST_CASE("semidirect product from a module") {
  GModule v = natural_module(2);
  auto g = semidirect_product(v);
  CHECK(g->order() == 24);
  CHECK(sylow(g, 2).order() == 8);
  CHECK(p_core(g, 2).order() == 4);
}
