#include <doctest.h>

#include "oblim/lambda.hpp"

using namespace oblim;

namespace {

GModule restricted_to_product(GroupPtr prod, const GModule& m, uint8_t p) {
  // pull back along the projection: tensor with a 1-dim trivial factor
  return tensor_module(prod, {m, trivial_module(std::get<ProdTag>(prod->build_tag())
                                                    .factors[1],
                                                p, 1)});
}

}  // namespace

TEST_CASE("orbit category laws and functor") {
  auto s4 = symmetric_group(4);
  OrbitCategory oc = orbit_category(s4, 2);
  CHECK(oc.objects.size() == 10);  // subgroups of D8
  oc.cat.check_laws();
  GModule q = perm_quotient_module(s4, 2);
  VecFunctor f = atomic_functor(oc, q);
  f.check_functorial(oc.cat);

  auto s3 = symmetric_group(3);
  OrbitCategory oc3 = orbit_category(s3, 2);
  CHECK(oc3.objects.size() == 2);
  CHECK(oc3.cat.morc(0, 0) == 6);  // free cosets: all of Gamma
  CHECK(oc3.cat.morc(0, 1) == 3);
  CHECK(oc3.cat.morc(1, 0) == 0);  // no downward morphisms
  CHECK(oc3.cat.morc(1, 1) == 1);
  oc3.cat.check_laws();
}

TEST_CASE("rank one reference value on both backends") {
  GModule v = natural_module(2);
  auto g = v.owner;
  const std::vector<int> expect{0, 1, 0};
  CHECK(lambda_bar(g, 2, v, 2).dims == expect);
  CHECK(lambda_poset(g, 2, v, 2).dims == expect);
  LambdaResult both = lambda_dims(g, 2, v, 2, "both");
  CHECK(both.dims == expect);
  CHECK(both.backend == "both");
}

TEST_CASE("backend agreement battery") {
  auto check_pair = [](GroupPtr g, const GModule& m) {
    LambdaResult a = lambda_poset(g, 2, m, 2);
    LambdaResult b = lambda_bar(g, 2, m, 2);
    CHECK(a.dims == b.dims);
  };
  GModule v = natural_module(2);
  auto s3 = v.owner;
  check_pair(s3, v);
  check_pair(s3, trivial_module(s3, 2, 1));

  auto v4 = direct_product({cyclic_group(2), cyclic_group(2)});
  check_pair(v4, trivial_module(v4, 2, 2));

  auto prod = direct_product({s3, cyclic_group(2)});
  check_pair(prod, restricted_to_product(prod, v, 2));

  auto s4 = symmetric_group(4);
  check_pair(s4, perm_quotient_module(s4, 2));
}

TEST_CASE("closed form at Sylow of order p") {
  GModule m = natural_module(3);
  auto s4 = m.owner;
  const std::vector<int> expect{0, 1, 0, 0};
  CHECK(lambda_closed_form_sylow_p(s4, 3, m, 3) == expect);
  CHECK(lambda_poset(s4, 3, m, 3).dims == expect);

  // Sylow(Sym(3), 3) = C3 as well
  GModule v = natural_module(2);  // p = 2 module: wrong characteristic for p=3
  auto s3 = v.owner;
  GModule t3 = trivial_module(s3, 3, 1);
  CHECK(lambda_closed_form_sylow_p(s3, 3, t3, 2) ==
        lambda_poset(s3, 3, t3, 2).dims);
}

TEST_CASE("kunneth convolution") {
  CHECK(kunneth_combine({0, 1, 0}, {0, 1, 0}, 2) == std::vector<int>{0, 0, 1});
  CHECK(kunneth_combine({1, 2}, {3, 0, 1}, 3) == std::vector<int>{3, 6, 1, 2});

  GModule v = natural_module(2);
  auto s3 = v.owner;
  auto prod = direct_product({s3, s3});
  GModule vv = tensor_module(prod, {v, v});
  LambdaResult r = lambda_poset(prod, 2, vv, 2);
  CHECK(r.dims == kunneth_combine(lambda_poset(s3, 2, v, 2).dims,
                                  lambda_poset(s3, 2, v, 2).dims, 2));
  CHECK(r.dims == std::vector<int>{0, 0, 1});
}

TEST_CASE("wreath shift") {
  GModule v = natural_module(2);
  auto s3 = v.owner;
  auto w = wreath_cyclic(s3, 2);
  GModule v2 = power_module(w, v);
  REQUIRE(s3->order() % 2 == 0);  // shift hypothesis: p divides |base|
  LambdaResult lhs = lambda_poset(w, 2, v2, 3);
  LambdaResult rhs = lambda_poset(s3, 2, v, 2);
  for (int i = 1; i <= 3; ++i) CHECK(lhs.dims[i] == rhs.dims[i - 1]);
  CHECK(lhs.dims == std::vector<int>{0, 0, 1, 0});
}

TEST_CASE("vanishing certificates are sound") {
  auto s3 = symmetric_group(3);
  GModule triv = trivial_module(s3, 2, 1);
  auto cert = vanishing_preflight(s3, 2, triv);
  REQUIRE(cert.has_value());
  CHECK(*cert == "p divides |C_Gamma(M)|");
  CHECK(lambda_poset(s3, 2, triv, 2).dims == std::vector<int>{0, 0, 0});

  GModule t3 = trivial_module(s3, 3, 1);
  auto cert3 = vanishing_preflight(s3, 3, t3);
  REQUIRE(cert3.has_value());  // both reasons apply; the kernel one is reported
  CHECK(lambda_poset(s3, 3, t3, 2).dims == std::vector<int>{0, 0, 0});

  // O_p(Gamma) != 1 with a faithful module: Sym(4) at p = 2.
  auto s4 = symmetric_group(4);
  GModule q = perm_quotient_module(s4, 2);
  auto cert4 = vanishing_preflight(s4, 2, q);
  REQUIRE(cert4.has_value());
  CHECK(*cert4 == "O_p(Gamma) != 1");
  CHECK(lambda_poset(s4, 2, q, 3).dims == std::vector<int>{0, 0, 0, 0});

  GModule v = natural_module(2);
  CHECK_FALSE(vanishing_preflight(v.owner, 2, v).has_value());
}

TEST_CASE("degree zero law") {
  // p does not divide |Gamma|: lim^0 = dim C_M(Gamma), higher degrees vanish.
  auto c3 = cyclic_group(3);
  GModule t = trivial_module(c3, 2, 2);
  CHECK(lambda_poset(c3, 2, t, 2).dims == std::vector<int>{2, 0, 0});
  CHECK(lambda_bar(c3, 2, t, 2).dims == std::vector<int>{2, 0, 0});

  // p divides |Gamma|: lim^0 = 0.
  auto s3 = symmetric_group(3);
  for (const GModule& m : {natural_module(2), trivial_module(s3, 2, 3)}) {
    auto g = m.owner;
    CHECK(lambda_poset(g, 2, m, 0).dims[0] == 0);
  }
}

TEST_CASE("dimension bound") {
  // lim^k != 0 forces dim M >= p^k; scan small computed examples.
  GModule v = natural_module(2);
  auto s3 = v.owner;
  auto prod = direct_product({s3, s3});
  GModule vv = tensor_module(prod, {v, v});
  struct Case { GroupPtr g; const GModule* m; };
  for (const auto& [g, m] : std::initializer_list<Case>{{s3, &v}, {prod, &vv}}) {
    auto dims = lambda_poset(g, 2, *m, 3).dims;
    for (size_t k = 0; k < dims.size(); ++k) {
      if (!dims[k]) continue;
      uint64_t need = 1;
      for (size_t i = 0; i < k; ++i) need *= 2;
      CHECK(uint64_t(m->dim) >= need);
    }
  }
}

TEST_CASE("bar budget refusal") {
  GModule v = natural_module(2);
  Budgets tight;
  tight.bar_chains = 10;
  CHECK_THROWS_AS(lambda_bar(v.owner, 2, v, 2, tight), BudgetError);
}
