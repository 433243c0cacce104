#include "oblim/verify.hpp"

#include <chrono>
#include <random>

#include "oblim/fusion.hpp"
#include "oblim/lambda.hpp"
#include "oblim/linking.hpp"

namespace oblim {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string dims_str(const std::vector<int>& d) {
  std::string s = "[";
  for (size_t i = 0; i < d.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(d[i]);
  }
  return s + "]";
}

struct Outcome {
  bool pass = false;
  std::string actual;
};

template <class Fn>
CriterionResult run_one(int index, const std::string& name, bool required,
                        const std::string& expected, double limit_s, Fn&& body) {
  CriterionResult r;
  r.index = index;
  r.name = name;
  r.required = required;
  r.expected = expected;
  const auto t0 = Clock::now();
  try {
    Outcome o = body();
    r.pass = o.pass;
    r.actual = o.actual;
  } catch (const BudgetError& e) {
    r.actual = std::string("refused: ") + e.what();
  } catch (const std::exception& e) {
    r.actual = std::string("error: ") + e.what();
  }
  r.elapsed_s = seconds_since(t0);
  if (r.elapsed_s > limit_s) {
    r.pass = false;
    r.actual += " (over the time limit)";
  }
  return r;
}

Outcome crit_base_case() {
  const auto ta = Clock::now();
  GModule v = natural_module(2);
  auto s3 = v.owner;
  const std::vector<int> expect{0, 1, 0};
  const std::vector<int> poset = lambda_poset(s3, 2, v, 2).dims;
  const std::vector<int> bar = lambda_bar(s3, 2, v, 2).dims;
  const double da = seconds_since(ta);
  const bool ok_a = poset == expect && bar == expect && da < 5.0;

  const auto tb = Clock::now();
  GModule m3 = natural_module(3);
  auto s4 = m3.owner;
  const std::vector<int> closed = lambda_closed_form_sylow_p(s4, 3, m3, 3);
  const std::vector<int> p3 = lambda_poset(s4, 3, m3, 3).dims;
  const double db = seconds_since(tb);
  const bool ok_b = closed == p3 && p3[1] == 1 && db < 60.0;

  Outcome o;
  o.pass = ok_a && ok_b;
  o.actual = "p=2: poset " + dims_str(poset) + ", bar " + dims_str(bar) + "; p=3: poset " +
             dims_str(p3) + ", closed form " + dims_str(closed);
  return o;
}

Outcome crit_kunneth() {
  GModule v = natural_module(2);
  auto s3 = v.owner;
  const std::vector<int> base = lambda_poset(s3, 2, v, 2).dims;
  auto prod = direct_product({s3, s3});
  GModule vv = tensor_module(prod, {v, v});
  const std::vector<int> got = lambda_poset(prod, 2, vv, 2).dims;
  const std::vector<int> conv = kunneth_combine(base, base, 2);
  Outcome o;
  o.pass = got == conv && got == std::vector<int>{0, 0, 1};
  o.actual = "computed " + dims_str(got) + ", convolution " + dims_str(conv);
  return o;
}

Outcome crit_headline() {
  GModule v = natural_module(2);
  auto s3 = v.owner;
  auto prod = direct_product({s3, s3, s3});
  GModule vvv = tensor_module(prod, {v, v, v});
  const std::vector<int> got = lambda_poset(prod, 2, vvv, 3).dims;
  Outcome o;
  o.pass = got.size() == 4 && got[3] == 1;
  o.actual = "dims " + dims_str(got);
  return o;
}

Outcome crit_wreath() {
  GModule v = natural_module(2);
  auto s3 = v.owner;
  auto w = wreath_cyclic(s3, 2);
  GModule v2 = power_module(w, v);
  const std::vector<int> lhs = lambda_poset(w, 2, v2, 3).dims;
  const std::vector<int> rhs = lambda_poset(s3, 2, v, 2).dims;
  bool ok = true;
  for (int i = 1; i <= 3; ++i) ok = ok && lhs[size_t(i)] == rhs[size_t(i) - 1];
  Outcome o;
  o.pass = ok;
  o.actual = "wreath side " + dims_str(lhs) + ", base side " + dims_str(rhs);
  return o;
}

Outcome crit_properties() {
  struct Case {
    std::string label;
    GroupPtr g;
    GModule m;
    int p;
  };
  GModule v = natural_module(2);
  auto s3 = v.owner;
  GModule m3 = natural_module(3);
  auto s4 = m3.owner;
  auto prod = direct_product({s3, s3});
  std::vector<Case> cases;
  cases.push_back({"Sym(3)/natural(2)", s3, v, 2});
  cases.push_back({"Sym(3)/trivial(2,1)", s3, trivial_module(s3, 2, 1), 2});
  cases.push_back({"Sym(3)/trivial(2,3)", s3, trivial_module(s3, 2, 3), 2});
  cases.push_back({"Sym(3)/trivial(3,1)@3", s3, trivial_module(s3, 3, 1), 3});
  cases.push_back({"Sym(4)/perm_quotient@2", s4, perm_quotient_module(s4, 2), 2});
  cases.push_back({"Sym(4)/natural(3)@3", s4, m3, 3});
  auto c3 = cyclic_group(3);
  auto c2 = cyclic_group(2);
  cases.push_back({"C(3)/trivial(2,2)", c3, trivial_module(c3, 2, 2), 2});
  cases.push_back({"C(2)/trivial(2,1)", c2, trivial_module(c2, 2, 1), 2});
  cases.push_back({"prod(Sym(3),Sym(3))/tensor", prod, tensor_module(prod, {v, v}), 2});

  std::string bad;
  for (const Case& c : cases) {
    const std::vector<int> dims = lambda_poset(c.g, c.p, c.m, 3).dims;
    // degree-zero law
    const int fixed = int(fixed_points(c.m, full_subgroup(c.g)).size());
    const int want0 = c.g->order() % uint64_t(c.p) == 0 ? 0 : fixed;
    if (dims[0] != want0) bad += " [" + c.label + ": degree-0 law]";
    // certified vanishing
    if (vanishing_preflight(c.g, c.p, c.m) &&
        dims != std::vector<int>(dims.size(), 0))
      bad += " [" + c.label + ": vanishing certificate]";
    // closed form at |Syl| = p
    if (sylow(c.g, c.p).order() == uint64_t(c.p) &&
        lambda_closed_form_sylow_p(c.g, c.p, c.m, 3) != dims)
      bad += " [" + c.label + ": closed form]";
    // dimension bound
    for (size_t k = 0; k < dims.size(); ++k) {
      if (!dims[k]) continue;
      uint64_t need = 1;
      for (size_t i = 0; i < k; ++i) need *= uint64_t(c.p);
      if (uint64_t(c.m.dim) < need) bad += " [" + c.label + ": dimension bound]";
    }
  }
  Outcome o;
  o.pass = bad.empty();
  o.actual = bad.empty() ? "all properties hold on " + std::to_string(cases.size()) + " pairs"
                         : "violations:" + bad;
  return o;
}

FusionContext ex2_context() {
  GModule v = natural_module(2);
  auto s3 = v.owner;
  auto prod = direct_product({s3, s3, s3});
  GModule vvv = tensor_module(prod, {v, v, v});
  return fusion_context_semidirect(
      vvv, "semidirect(tensor(natural(2),natural(2),natural(2)),prod(Sym(3),Sym(3),Sym(3)))",
      "tensor(natural(2),natural(2),natural(2))");
}

Outcome crit_theorem_pipeline() {
  FusionContext fc = ex2_context();
  TheoremSets ts = theorem_sets(fc);
  std::string bad;
  if (ts.x.size() != size_t(16))
    bad += " [|X| = " + std::to_string(ts.x.size()) + "]";
  ClassLocalData m_local = out_f(fc, ts.x[size_t(ts.m_index)]);
  if (m_local.out->order() != uint64_t(216))
    bad += " [|Out_F(M)| = " + std::to_string(m_local.out->order()) + "]";
  const std::vector<int> global = lambda_poset(fc.gamma, 2, *fc.m, 3).dims;
  const std::vector<int> local =
      class_local_lambda(fc, ts.x[size_t(ts.m_index)], 3).dims;
  if (local != global)
    bad += " [class-local " + dims_str(local) + " vs global " + dims_str(global) + "]";
  ClassifyReport rep = classify_linking_systems(fc);
  if (rep.x_classes != 1) bad += " [x_classes = " + std::to_string(rep.x_classes) + "]";
  if (rep.y_classes != 2) bad += " [y_classes = " + std::to_string(rep.y_classes) + "]";
  Outcome o;
  o.pass = bad.empty();
  o.actual = bad.empty()
                 ? "|X| = 16, |Out_F(M)| = 216, class-local dims " + dims_str(local) +
                       ", x_classes = 1, y_classes = 2"
                 : "violations:" + bad;
  return o;
}

// Axiom-(A) counting spelled out pair by pair, independent of check_axioms.
bool counting_holds(const LinkingCategory& l, std::string* bad, const char* tag) {
  for (int a = 0; a < l.n(); ++a)
    for (int b = 0; b < l.n(); ++b)
      if (l.morc(a, b) != l.zp[size_t(a)].order() * l.fcount(a, b)) {
        *bad += std::string(" [") + tag + ": counting fails at (" + std::to_string(a) +
                "," + std::to_string(b) + ")]";
        return false;
      }
  return true;
}

bool random_lifts_hold(const LinkingCategory& l, int rounds, uint32_t seed,
                       std::string* bad, const char* tag) {
  std::mt19937 gen(seed);
  auto pick = [&](uint32_t n) { return uint32_t(gen() % n); };
  const int n = l.n();
  for (int t = 0; t < rounds; ++t) {
    int a = int(pick(uint32_t(n))), b = int(pick(uint32_t(n))), r = int(pick(uint32_t(n)));
    if (l.morc(a, b) == 0 || l.morc(b, r) == 0) {
      --t;  // resample; the diagonal triple always works, so this terminates
      continue;
    }
    const uint32_t k = pick(l.morc(a, b));
    const uint32_t psi2 = pick(l.morc(b, r));
    const uint32_t psi = l.compose(a, b, r, k, psi2);
    if (unique_lift(l, a, b, r, psi, psi2, l.pi(a, b, k)) != k) {
      *bad += std::string(" [") + tag + ": lift mismatch at round " + std::to_string(t) + "]";
      return false;
    }
  }
  return true;
}

std::vector<uint32_t> identity_inclusions(const LinkingCategory& l) {
  std::vector<uint32_t> iota(size_t(l.n()));
  for (int a = 0; a < l.n(); ++a)
    iota[size_t(a)] = l.coset_of(a, l.s_object, l.g->identity_index());
  return iota;
}

// Round-trip, a shifted extension, and the Theta isomorphism between them.
bool extension_story_holds(const LinkingCategory& l, std::string* bad, const char* tag) {
  WeakLinking w = weaken(l);
  if (!check_axioms_weak(w).ok()) {
    *bad += std::string(" [") + tag + ": weak axioms]";
    return false;
  }
  const std::vector<uint32_t> iota = identity_inclusions(l);
  LinkingCategory back = extend_weak(w, iota);
  if (back.delta != l.delta) {
    *bad += std::string(" [") + tag + ": round-trip delta mismatch]";
    return false;
  }
  int a0 = -1;
  ElemIdx z = l.g->identity_index();
  for (int a = 0; a < l.n() && a0 < 0; ++a) {
    if (a == l.s_object) continue;
    for (ElemIdx x : l.zp[size_t(a)].elems)
      if (x != l.g->identity_index()) {
        a0 = a;
        z = x;
        break;
      }
  }
  if (a0 < 0) return true;  // no central shift available: nothing more to compare
  std::vector<uint32_t> iota2 = iota;
  const uint32_t dz = l.delta[size_t(a0) * l.n() + a0].at(z);
  iota2[size_t(a0)] = l.compose(a0, a0, l.s_object, dz, iota[size_t(a0)]);
  LinkingCategory ext = extend_weak(w, iota2);
  ThetaIso th = iso_of_extensions(ext, l);  // verifies Theta o delta' = delta etc.
  if (th.z[size_t(a0)] != z) {
    *bad += std::string(" [") + tag + ": Theta shift mismatch]";
    return false;
  }
  return true;
}

Outcome crit_linking() {
  std::string bad;

  FusionContext fc4 = fusion_context(symmetric_group(4), 2);
  LinkingCategory l4 = canonical_linking(fc4, centric_set(fc4));
  AxiomReport a4 = check_axioms(l4);
  if (!a4.ok())
    bad += " [Sym(4) axioms: " + a4.detail_a + a4.detail_b + a4.detail_c + "]";
  counting_holds(l4, &bad, "Sym(4)");
  random_lifts_hold(l4, 1000, 0xb5eed1, &bad, "Sym(4)");
  extension_story_holds(l4, &bad, "Sym(4)");

  FusionContext fc = ex2_context();
  TheoremSets ts = theorem_sets(fc);
  std::vector<Subgroup> yobjs;
  for (int i : ts.y) yobjs.push_back(ts.x[size_t(i)]);
  LinkingCategory ly = canonical_linking(fc, std::move(yobjs));
  AxiomReport ay = check_axioms(ly);
  if (!ay.ok())
    bad += " [Y-system axioms: " + ay.detail_a + ay.detail_b + ay.detail_c + "]";
  counting_holds(ly, &bad, "Y-system");
  random_lifts_hold(ly, 1000, 0xb5eed2, &bad, "Y-system");
  extension_story_holds(ly, &bad, "Y-system");

  Outcome o;
  o.pass = bad.empty();
  o.actual = bad.empty()
                 ? "axioms, counting, 2x1000 random lifts, round-trips and Theta all hold"
                 : "violations:" + bad;
  return o;
}

Outcome crit_stretch_wreath_square() {
  GModule v = natural_module(2);
  auto s3 = v.owner;
  auto w1 = wreath_cyclic(s3, 2);
  auto w2 = wreath_cyclic(w1, 2);
  GModule m = power_module(w2, power_module(w1, v));
  Budgets big;
  big.chain_orbits = 3'000'000;
  const std::vector<int> got = lambda_poset(w2, 2, m, 3, big).dims;
  Outcome o;
  o.pass = got.size() == 4 && got[3] == 1;
  o.actual = "dims " + dims_str(got);
  return o;
}

Outcome crit_stretch_lim_z() {
  FusionContext fc = ex2_context();
  TheoremSets ts = theorem_sets(fc);
  std::vector<Subgroup> yobjs;
  for (int i : ts.y) yobjs.push_back(ts.x[size_t(i)]);
  Budgets big;
  big.bar_chains = 150'000'000;
  LambdaResult r = lim_z_direct(fc, yobjs, 2, big);
  Outcome o;
  o.pass = r.dims.size() == 3 && r.dims[2] == 1;
  o.actual = "dims " + dims_str(r.dims);
  return o;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(bool include_stretch, double time_cap) {
  const auto cap = [time_cap](double limit) {
    return time_cap > 0 ? std::min(limit, time_cap) : limit;
  };
  std::vector<CriterionResult> rows;
  rows.push_back(run_one(1, "base case and Sylow-p closed form", true,
                         "Lambda(Sym(3);V) = [0,1,0] by both backends in < 5 s; at p = 3 "
                         "the closed form matches the poset backend with Lambda^1 = 1 in < 60 s",
                         cap(65.0), crit_base_case));
  rows.push_back(run_one(2, "Kunneth convolution", true,
                         "Lambda(Sym(3)^2;V(x)V) = [0,0,1], equal to the self-convolution",
                         cap(120.0), crit_kunneth));
  rows.push_back(run_one(3, "headline rank-three obstruction", true,
                         "Lambda^3(Sym(3)^3;V(x)V(x)V) = 1 by the poset backend", cap(600.0),
                         crit_headline));
  rows.push_back(run_one(4, "wreath shift", true,
                         "Lambda^i(Sym(3) wr C2; V^2) = Lambda^{i-1}(Sym(3); V) for i = 1..3",
                         cap(300.0), crit_wreath));
  rows.push_back(run_one(5, "property suite", true,
                         "degree-0 law, certified vanishing, closed form, dimension bound "
                         "across 9 pairs",
                         cap(300.0), crit_properties));
  rows.push_back(run_one(6, "theorem pipeline", true,
                         "|X| = 16, |Out_F(M)| = 216, class-local dims at M equal the "
                         "criterion-3 dims, x_classes = 1, y_classes = 2",
                         cap(900.0), crit_theorem_pipeline));
  rows.push_back(run_one(7, "linking systems", true,
                         "axioms (A)(B)(C) with counting on Sym(4) and the Y-system, 1000 "
                         "random unique lifts each, extension round-trips, Theta isomorphism",
                         cap(600.0), crit_linking));
  if (include_stretch) {
    rows.push_back(run_one(8, "stretch: iterated wreath obstruction", false,
                           "Lambda^3(Sym(3) wr C2 wr C2; V^4) = 1", cap(7200.0),
                           crit_stretch_wreath_square));
    rows.push_back(run_one(8, "stretch: direct center-functor limit", false,
                           "lim^2 of Z over O(F^Y) = 1, matching Lambda^3", cap(7200.0),
                           crit_stretch_lim_z));
  }
  return rows;
}

}  // namespace oblim
