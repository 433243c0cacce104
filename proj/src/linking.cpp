#include "oblim/linking.hpp"

#include <algorithm>
#include <optional>

namespace oblim {

namespace {

bool subgroup_of(const Subgroup& inner, const Subgroup& outer) {
  for (ElemIdx x : inner.gens)
    if (!outer.contains(x)) return false;
  return true;
}

// Largest normal p'-subgroup: generated by every element whose normal closure
// is a p'-group (any normal p'-subgroup is a union of such closures, and a
// product of normal p'-subgroups is again one).
Subgroup o_p_prime(GroupPtr g, const Subgroup& c, int p) {
  const ElemIdx e = g->identity_index();
  std::vector<ElemIdx> gens;
  Subgroup acc = trivial_subgroup(g);
  for (ElemIdx x : c.elems) {
    if (x == e || acc.contains(x)) continue;
    if (g->elem_order(x) % uint64_t(p) == 0) continue;
    std::vector<ElemIdx> cl;
    cl.reserve(c.elems.size());
    for (ElemIdx y : c.elems) cl.push_back(g->conj_idx(y, x));
    std::sort(cl.begin(), cl.end());
    cl.erase(std::unique(cl.begin(), cl.end()), cl.end());
    Subgroup ncl = generated_subgroup_idx(g, std::move(cl));
    if (ncl.order() % uint64_t(p) == 0) continue;
    gens.insert(gens.end(), ncl.gens.begin(), ncl.gens.end());
    acc = generated_subgroup_idx(g, gens);
  }
  require(acc.order() % uint64_t(p) != 0, "o_p_prime: accumulated a p-element");
  for (ElemIdx cg : c.gens)
    for (ElemIdx og : acc.gens)
      require(acc.contains(g->conj_idx(cg, og)), "o_p_prime: result is not normal");
  return acc;
}

size_t transporter_pos(const std::vector<ElemIdx>& telems, ElemIdx t) {
  auto it = std::lower_bound(telems.begin(), telems.end(), t);
  require(it != telems.end() && *it == t, "linking: element is not in the transporter");
  return size_t(it - telems.begin());
}

// Partition of the sorted transporter into right cosets t * <kgens>, each
// class labelled by its least element.
void cosets_by_right_mult(const ConcreteGroup& g, const std::vector<ElemIdx>& telems,
                          const std::vector<ElemIdx>& kgens, std::vector<uint32_t>& cls,
                          std::vector<ElemIdx>& rep) {
  cls.assign(telems.size(), UINT32_MAX);
  rep.clear();
  std::vector<size_t> stack;
  for (size_t i = 0; i < telems.size(); ++i) {
    if (cls[i] != UINT32_MAX) continue;
    const uint32_t id = uint32_t(rep.size());
    rep.push_back(telems[i]);
    cls[i] = id;
    stack.assign(1, i);
    while (!stack.empty()) {
      const ElemIdx t = telems[stack.back()];
      stack.pop_back();
      for (ElemIdx k : kgens) {
        const size_t j = transporter_pos(telems, g.mul_idx(t, k));
        if (cls[j] == UINT32_MAX) {
          cls[j] = id;
          stack.push_back(j);
        }
      }
    }
  }
}

// Element-indexed scratch table for one transporter pair; reset walks the
// same elements, so clearing is proportional to the pair, not the group.
struct PairLut {
  std::vector<uint32_t> tab;
  explicit PairLut(size_t order) : tab(order, UINT32_MAX) {}
  void fill(const std::vector<ElemIdx>& telems, const std::vector<uint32_t>& cls) {
    for (size_t i = 0; i < telems.size(); ++i) tab[telems[i]] = cls[i];
  }
  void clear(const std::vector<ElemIdx>& telems) {
    for (ElemIdx t : telems) tab[t] = UINT32_MAX;
  }
};

// G-indexed copies of the diagonal delta maps (UINT32_MAX where undefined).
std::vector<std::vector<uint32_t>> diagonal_delta_luts(const LinkingCategory& l) {
  const int n = l.n();
  std::vector<std::vector<uint32_t>> dl(static_cast<size_t>(n));
  for (int a = 0; a < n; ++a) {
    dl[size_t(a)].assign(l.g->order(), UINT32_MAX);
    for (const auto& [k, v] : l.delta[size_t(a) * n + a]) dl[size_t(a)][k] = v;
  }
  return dl;
}

std::string pair_label(int a, int b) {
  return "Mor(P" + std::to_string(a) + ",P" + std::to_string(b) + ")";
}

std::optional<std::string> axiom_a_violation(const LinkingCategory& l) {
  const auto& g = *l.g;
  const int n = l.n();
  // Counting: every fusion-class fiber carries exactly |Z(P)| morphisms.
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const size_t pair = size_t(a) * n + b;
      const uint64_t zn = l.zp[size_t(a)].order();
      if (l.morc(a, b) != zn * l.fcount(a, b))
        return pair_label(a, b) + ": |Mor| = " + std::to_string(l.morc(a, b)) +
               " but |Z(P)| * |Hom_F| = " + std::to_string(zn * l.fcount(a, b));
      const auto& fs = l.fiber_start[pair];
      for (uint32_t c = 0; c < l.fcount(a, b); ++c)
        if (fs[c + 1] - fs[c] != zn)
          return pair_label(a, b) + ": fiber " + std::to_string(c) + " has " +
                 std::to_string(fs[c + 1] - fs[c]) + " morphisms, expected " +
                 std::to_string(zn);
    }
  // Freeness of f -> f o delta_P(z), staying inside the pi-fiber.
  PairLut lut(g.order());
  const auto dl = diagonal_delta_luts(l);
  for (int a = 0; a < n; ++a) {
    std::vector<ElemIdx> uz;  // representatives of delta_P(z), z != e
    for (ElemIdx z : l.zp[size_t(a)].elems) {
      if (z == g.identity_index()) continue;
      const uint32_t id = dl[size_t(a)][z];
      if (id == UINT32_MAX || id >= l.morc(a, a))
        return "P" + std::to_string(a) + ": delta undefined or out of range on Z(P)";
      uz.push_back(l.mrep[size_t(a) * n + a][id]);
    }
    for (int b = 0; b < n; ++b) {
      const size_t pair = size_t(a) * n + b;
      lut.fill(l.telems[pair], l.coset[pair]);
      for (uint32_t f = 0; f < l.morc(a, b); ++f) {
        const ElemIdx t = l.mrep[pair][f];
        for (ElemIdx u : uz) {
          const uint32_t m2 = lut.tab[g.mul_idx(t, u)];
          if (m2 == UINT32_MAX)
            return pair_label(a, b) + ": the Z(P)-action leaves the morphism set";
          if (m2 == f)
            return pair_label(a, b) + ": Z(P)-action is not free at morphism " +
                   std::to_string(f);
          if (l.fclass[pair][m2] != l.fclass[pair][f])
            return pair_label(a, b) + ": Z(P)-action moves morphism " +
                   std::to_string(f) + " across pi-fibers";
        }
      }
      lut.clear(l.telems[pair]);
    }
  }
  return std::nullopt;
}

std::optional<std::string> axiom_b_violation(const LinkingCategory& l, bool weak) {
  const auto& g = *l.g;
  const int n = l.n();
  PairLut lut(g.order());
  const auto dl = diagonal_delta_luts(l);
  for (int a = 0; a < n; ++a) {
    const size_t diag = size_t(a) * n + a;
    const Subgroup& p = l.objects[size_t(a)];
    // Domain of the per-object map, values, projection to conjugation.
    if (weak && l.delta[diag].size() != p.elems.size())
      return "P" + std::to_string(a) + ": delta_P domain differs from P";
    std::vector<char> hit(l.morc(a, a), 0);
    for (ElemIdx x : p.elems) {
      const uint32_t id = dl[size_t(a)][x];
      if (id == UINT32_MAX || id >= l.morc(a, a))
        return "P" + std::to_string(a) + ": delta_P undefined or out of range at element " +
               std::to_string(x);
      if (hit[id])
        return "P" + std::to_string(a) + ": delta_P is not injective";
      hit[id] = 1;
      if (l.pi(a, a, id) != l.fclass_of(a, a, x))
        return "P" + std::to_string(a) + ": pi(delta_P(g)) != [c_g] at element " +
               std::to_string(x);
    }
    // delta_P is a homomorphism into Aut(P).
    lut.fill(l.telems[diag], l.coset[diag]);
    for (ElemIdx x : p.elems) {
      const ElemIdx ux = l.mrep[diag][dl[size_t(a)][x]];
      for (ElemIdx y : p.elems) {
        const ElemIdx uy = l.mrep[diag][dl[size_t(a)][y]];
        const uint32_t composed = lut.tab[g.mul_idx(ux, uy)];
        if (composed != dl[size_t(a)][g.mul_idx(x, y)])
          return "P" + std::to_string(a) + ": delta_P is not multiplicative at (" +
                 std::to_string(x) + "," + std::to_string(y) + ")";
      }
    }
    lut.clear(l.telems[diag]);
  }
  if (weak) return std::nullopt;
  // Full systems: delta_{P,Q} is defined exactly on T_S(P,Q) and projects to
  // conjugation there.
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const size_t pair = size_t(a) * n + b;
      const auto& d = l.delta[pair];
      size_t in_s = 0;
      for (size_t i = 0; i < l.telems[pair].size(); ++i) {
        const ElemIdx t = l.telems[pair][i];
        if (!l.s.contains(t)) continue;
        ++in_s;
        auto it = d.find(t);
        if (it == d.end())
          return pair_label(a, b) + ": delta undefined at Sylow element " + std::to_string(t);
        if (it->second >= l.morc(a, b))
          return pair_label(a, b) + ": delta out of range at element " + std::to_string(t);
        if (l.pi(a, b, it->second) != l.fclass[pair][l.coset[pair][i]])
          return pair_label(a, b) + ": pi(delta(g)) != [c_g] at element " + std::to_string(t);
      }
      if (d.size() != in_s)
        return pair_label(a, b) + ": delta domain differs from T_S(P,Q)";
    }
  return std::nullopt;
}

std::optional<std::string> axiom_c_violation(const LinkingCategory& l) {
  const auto& g = *l.g;
  const int n = l.n();
  PairLut lut(g.order());
  const auto dl = diagonal_delta_luts(l);
  for (int a = 0; a < n; ++a) {
    const size_t diag_a = size_t(a) * n + a;
    for (int b = 0; b < n; ++b) {
      const size_t pair = size_t(a) * n + b;
      const size_t diag_b = size_t(b) * n + b;
      if (l.morc(a, b) == 0) continue;
      lut.fill(l.telems[pair], l.coset[pair]);
      for (ElemIdx x : l.objects[size_t(a)].elems) {
        const uint32_t ida = dl[size_t(a)][x];
        if (ida == UINT32_MAX || ida >= l.morc(a, a)) {
          lut.clear(l.telems[pair]);
          return "P" + std::to_string(a) + ": delta_P undefined at element " +
                 std::to_string(x);
        }
        const ElemIdx u = l.mrep[diag_a][ida];
        for (uint32_t f = 0; f < l.morc(a, b); ++f) {
          const ElemIdx t = l.mrep[pair][f];
          const uint32_t lhs = lut.tab[g.mul_idx(t, u)];
          const ElemIdx q = g.conj_idx(t, x);
          const uint32_t idb = dl[size_t(b)][q];
          if (idb == UINT32_MAX || idb >= l.morc(b, b)) {
            lut.clear(l.telems[pair]);
            return "P" + std::to_string(b) + ": delta_Q undefined at conjugated element " +
                   std::to_string(q);
          }
          const uint32_t rhs = lut.tab[g.mul_idx(l.mrep[diag_b][idb], t)];
          if (lhs != rhs || lhs == UINT32_MAX) {
            lut.clear(l.telems[pair]);
            return pair_label(a, b) + ": f o delta_P(g) != delta_Q(pi(f)(g)) o f at (f,g) = (" +
                   std::to_string(f) + "," + std::to_string(x) + ")";
          }
        }
      }
      lut.clear(l.telems[pair]);
    }
  }
  return std::nullopt;
}

AxiomReport check_impl(const LinkingCategory& l, bool weak) {
  AxiomReport rep;
  if (auto v = axiom_a_violation(l)) {
    rep.pass_a = false;
    rep.detail_a = *v;
  }
  if (auto v = axiom_b_violation(l, weak)) {
    rep.pass_b = false;
    rep.detail_b = *v;
  }
  if (auto v = axiom_c_violation(l)) {
    rep.pass_c = false;
    rep.detail_c = *v;
  }
  return rep;
}

}  // namespace

uint32_t LinkingCategory::coset_of(int a, int b, ElemIdx t) const {
  const size_t pair = size_t(a) * n() + b;
  return coset[pair][transporter_pos(telems[pair], t)];
}

uint32_t LinkingCategory::fclass_of(int a, int b, ElemIdx t) const {
  const size_t pair = size_t(a) * n() + b;
  return fclass[pair][coset[pair][transporter_pos(telems[pair], t)]];
}

uint32_t LinkingCategory::identity_mor(int a) const {
  return coset_of(a, a, g->identity_index());
}

uint32_t LinkingCategory::compose(int a, int b, int c, uint32_t f, uint32_t h) const {
  const ElemIdx tf = mrep[size_t(a) * n() + b][f];
  const ElemIdx th = mrep[size_t(b) * n() + c][h];
  return coset_of(a, c, g->mul_idx(th, tf));
}

LinkingCategory canonical_linking(const FusionContext& fc, std::vector<Subgroup> objects) {
  const auto& g = *fc.g;
  LinkingCategory l;
  l.g = fc.g;
  l.p = fc.p;
  l.s = fc.s;
  l.objects = std::move(objects);
  const int n = l.n();
  require(n > 0, "canonical_linking: no objects");

  std::unordered_map<std::vector<ElemIdx>, int, IdxVecHash> pos;
  for (int i = 0; i < n; ++i) {
    const Subgroup& o = l.objects[size_t(i)];
    require(o.parent == fc.g, "canonical_linking: foreign subgroup");
    require(subgroup_of(o, fc.s), "canonical_linking: object is not inside S");
    require(pos.emplace(o.elems, i).second, "canonical_linking: duplicate object");
    if (o.elems == fc.s.elems) l.s_object = i;
  }
  for (int i = 0; i < n; ++i) {
    require(f_centric(fc, l.objects[size_t(i)]), "canonical_linking: object is not F-centric");
    require(p_centric(fc, l.objects[size_t(i)]),
            "canonical_linking: centricity cross-check failed");
    for (const Subgroup& q : conjugation_orbit(l.objects[size_t(i)]))
      if (subgroup_of(q, fc.s))
        require(pos.count(q.elems),
                "canonical_linking: objects not closed under F-conjugacy");
  }
  // Overgroup closure, exact whenever the lattice of S is enumerable.
  try {
    for (const Subgroup& r : all_subgroups(fc.s, 4096)) {
      if (pos.count(r.elems)) continue;
      for (int i = 0; i < n; ++i)
        require(!subgroup_of(l.objects[size_t(i)], r),
                "canonical_linking: objects not closed under overgroups");
    }
  } catch (const BudgetError&) {
    require(l.s_object >= 0, "canonical_linking: S must be an object");
  }

  l.zp.resize(size_t(n));
  l.cgp.resize(size_t(n));
  l.opc.resize(size_t(n));
  for (int a = 0; a < n; ++a) {
    std::vector<ElemIdx> zel;
    for (ElemIdx x : fc.s.elems) {
      bool cent = true;
      for (ElemIdx pg : l.objects[size_t(a)].gens)
        if (g.conj_idx(x, pg) != pg) {
          cent = false;
          break;
        }
      if (cent) zel.push_back(x);
    }
    l.zp[size_t(a)] = subgroup_from_elems(fc.g, std::move(zel));
    for (ElemIdx z : l.zp[size_t(a)].elems)
      require(l.objects[size_t(a)].contains(z), "canonical_linking: C_S(P) exceeds P");
    l.cgp[size_t(a)] = centralizer(l.objects[size_t(a)]);
    l.opc[size_t(a)] = o_p_prime(fc.g, l.cgp[size_t(a)], fc.p);
    require(l.zp[size_t(a)].order() * l.opc[size_t(a)].order() == l.cgp[size_t(a)].order(),
            "canonical_linking: centralizer does not split as Z(P) x O_p'");
  }

  const size_t nn = size_t(n) * n;
  l.telems.resize(nn);
  l.coset.resize(nn);
  l.mrep.resize(nn);
  l.fclass.resize(nn);
  l.frep.resize(nn);
  l.fiber_start.resize(nn);
  l.fiber_items.resize(nn);
  l.delta.resize(nn);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const size_t pair = size_t(a) * n + b;
      l.telems[pair] = transporter(l.objects[size_t(a)], l.objects[size_t(b)]);
      cosets_by_right_mult(g, l.telems[pair], l.opc[size_t(a)].gens, l.coset[pair],
                           l.mrep[pair]);
      std::vector<uint32_t> felem;
      cosets_by_right_mult(g, l.telems[pair], l.cgp[size_t(a)].gens, felem, l.frep[pair]);
      l.fclass[pair].assign(l.mrep[pair].size(), UINT32_MAX);
      for (size_t i = 0; i < l.telems[pair].size(); ++i) {
        uint32_t& fc_of_mor = l.fclass[pair][l.coset[pair][i]];
        if (fc_of_mor == UINT32_MAX) fc_of_mor = felem[i];
        require(fc_of_mor == felem[i],
                "canonical_linking: morphism straddles fusion classes");
      }
      // Fiber index: morphisms of each fusion class, in id order.
      const size_t nf = l.frep[pair].size();
      l.fiber_start[pair].assign(nf + 1, 0);
      for (uint32_t c : l.fclass[pair]) ++l.fiber_start[pair][c + 1];
      for (size_t c = 0; c < nf; ++c) l.fiber_start[pair][c + 1] += l.fiber_start[pair][c];
      l.fiber_items[pair].resize(l.fclass[pair].size());
      std::vector<uint32_t> cursor(l.fiber_start[pair].begin(),
                                   l.fiber_start[pair].end() - 1);
      for (uint32_t m = 0; m < l.fclass[pair].size(); ++m)
        l.fiber_items[pair][cursor[l.fclass[pair][m]]++] = m;
      // Distinguished lifts of the Sylow-level transporter.
      for (size_t i = 0; i < l.telems[pair].size(); ++i)
        if (fc.s.contains(l.telems[pair][i]))
          l.delta[pair].emplace(l.telems[pair][i], l.coset[pair][i]);
    }
  return l;
}

AxiomReport check_axioms(const LinkingCategory& l) { return check_impl(l, false); }

WeakLinking weaken(const LinkingCategory& l) {
  WeakLinking w{l};
  const int n = l.n();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      auto& d = w.base.delta[size_t(a) * n + b];
      if (a != b) {
        d.clear();
        continue;
      }
      std::unordered_map<ElemIdx, uint32_t> keep;
      for (ElemIdx x : l.objects[size_t(a)].elems) {
        auto it = d.find(x);
        if (it != d.end()) keep.emplace(it->first, it->second);
      }
      d = std::move(keep);
    }
  return w;
}

AxiomReport check_axioms_weak(const WeakLinking& w) { return check_impl(w.base, true); }

LinkingCategory restrict_objects(const LinkingCategory& l, const std::vector<int>& keep) {
  const int n = l.n();
  require(!keep.empty(), "restrict_objects: empty object set");
  for (size_t i = 0; i < keep.size(); ++i) {
    require(keep[i] >= 0 && keep[i] < n, "restrict_objects: index out of range");
    require(i == 0 || keep[i - 1] < keep[i], "restrict_objects: indices not sorted");
  }
  std::vector<char> kept(size_t(n), 0);
  for (int i : keep) kept[size_t(i)] = 1;
  for (int i : keep)
    for (int j = 0; j < n; ++j) {
      if (kept[size_t(j)]) continue;
      const bool conjugate =
          l.objects[size_t(i)].order() == l.objects[size_t(j)].order() &&
          !l.telems[size_t(i) * n + j].empty();
      require(!conjugate, "restrict_objects: dropped an F-conjugate");
      require(!subgroup_of(l.objects[size_t(i)], l.objects[size_t(j)]),
              "restrict_objects: dropped an overgroup");
    }

  LinkingCategory out;
  out.g = l.g;
  out.p = l.p;
  out.s = l.s;
  const int m = int(keep.size());
  out.objects.resize(size_t(m));
  out.zp.resize(size_t(m));
  out.cgp.resize(size_t(m));
  out.opc.resize(size_t(m));
  const size_t mm = size_t(m) * m;
  out.telems.resize(mm);
  out.coset.resize(mm);
  out.mrep.resize(mm);
  out.fclass.resize(mm);
  out.frep.resize(mm);
  out.fiber_start.resize(mm);
  out.fiber_items.resize(mm);
  out.delta.resize(mm);
  for (int a = 0; a < m; ++a) {
    const size_t src = size_t(keep[size_t(a)]);
    out.objects[size_t(a)] = l.objects[src];
    out.zp[size_t(a)] = l.zp[src];
    out.cgp[size_t(a)] = l.cgp[src];
    out.opc[size_t(a)] = l.opc[src];
    if (int(src) == l.s_object) out.s_object = a;
    for (int b = 0; b < m; ++b) {
      const size_t from = src * n + size_t(keep[size_t(b)]);
      const size_t to = size_t(a) * m + b;
      out.telems[to] = l.telems[from];
      out.coset[to] = l.coset[from];
      out.mrep[to] = l.mrep[from];
      out.fclass[to] = l.fclass[from];
      out.frep[to] = l.frep[from];
      out.fiber_start[to] = l.fiber_start[from];
      out.fiber_items[to] = l.fiber_items[from];
      out.delta[to] = l.delta[from];
    }
  }
  return out;
}

uint32_t unique_lift(const LinkingCategory& l, int a, int b, int r, uint32_t psi,
                     uint32_t psi2, uint32_t phi1) {
  const auto& g = *l.g;
  const int n = l.n();
  require(phi1 < l.fcount(a, b), "unique_lift: fusion class out of range");
  require(psi < l.morc(a, r) && psi2 < l.morc(b, r), "unique_lift: morphism out of range");
  const ElemIdx u =
      g.mul_idx(l.mrep[size_t(b) * n + r][psi2], l.frep[size_t(a) * n + b][phi1]);
  require(l.fclass_of(a, r, u) == l.pi(a, r, psi), "unique_lift: precondition violated");
  const auto& fs = l.fiber_start[size_t(a) * n + b];
  const auto& fi = l.fiber_items[size_t(a) * n + b];
  uint32_t found = UINT32_MAX;
  for (uint32_t k = fs[phi1]; k < fs[phi1 + 1]; ++k) {
    if (l.compose(a, b, r, fi[k], psi2) != psi) continue;
    require(found == UINT32_MAX, "unique_lift: multiple solutions (axiom breach)");
    found = fi[k];
  }
  require(found != UINT32_MAX, "unique_lift: no solution (axiom breach)");
  return found;
}

LinkingCategory extend_weak(const WeakLinking& w, const std::vector<uint32_t>& iota) {
  const LinkingCategory& base = w.base;
  const auto& g = *base.g;
  const int n = base.n();
  require(base.s_object >= 0, "extend_weak: S must be an object");
  const int so = base.s_object;
  require(iota.size() == size_t(n), "extend_weak: one inclusion per object");
  const ElemIdx e = g.identity_index();
  for (int a = 0; a < n; ++a) {
    require(iota[size_t(a)] < base.morc(a, so), "extend_weak: inclusion out of range");
    require(base.pi(a, so, iota[size_t(a)]) == base.fclass_of(a, so, e),
            "extend_weak: inclusion does not project to the identity map");
  }
  require(iota[size_t(so)] == base.coset_of(so, so, e),
          "extend_weak: iota at S must be the identity morphism");

  LinkingCategory out = base;
  for (auto& d : out.delta) d.clear();
  const auto& ds = base.delta[size_t(so) * n + so];
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const size_t pair = size_t(a) * n + b;
      for (size_t i = 0; i < base.telems[pair].size(); ++i) {
        const ElemIdx t = base.telems[pair][i];
        if (!base.s.contains(t)) continue;
        auto it = ds.find(t);
        require(it != ds.end(), "extend_weak: weak delta misses a Sylow element");
        const uint32_t psi = base.compose(a, so, so, iota[size_t(a)], it->second);
        const uint32_t lift =
            unique_lift(base, a, b, so, psi, iota[size_t(b)], base.fclass[pair][base.coset[pair][i]]);
        out.delta[pair].emplace(t, lift);
      }
    }
  for (int a = 0; a < n; ++a) {
    const size_t diag = size_t(a) * n + a;
    for (const auto& [k, v] : base.delta[diag])
      require(out.delta[diag].at(k) == v,
              "extend_weak: extension does not restrict to the weak system");
  }
  return out;
}

ThetaIso iso_of_extensions(const LinkingCategory& primed, const LinkingCategory& base,
                           uint64_t comp_budget) {
  const auto& g = *base.g;
  const int n = base.n();
  require(primed.g == base.g && primed.p == base.p && primed.s.elems == base.s.elems,
          "iso_of_extensions: systems do not share a base");
  require(primed.telems == base.telems && primed.coset == base.coset &&
              primed.mrep == base.mrep && primed.fclass == base.fclass,
          "iso_of_extensions: systems do not share a base");
  require(int(primed.objects.size()) == n, "iso_of_extensions: systems do not share a base");
  for (int a = 0; a < n; ++a)
    require(primed.objects[size_t(a)].elems == base.objects[size_t(a)].elems,
            "iso_of_extensions: systems do not share a base");
  require(base.s_object >= 0, "iso_of_extensions: S must be an object");
  const int so = base.s_object;
  const ElemIdx e = g.identity_index();

  ThetaIso th;
  th.z.resize(size_t(n));
  th.map.resize(size_t(n) * n);
  for (int a = 0; a < n; ++a) {
    const uint32_t i1 = base.delta[size_t(a) * n + so].at(e);
    const uint32_t i2 = primed.delta[size_t(a) * n + so].at(e);
    ElemIdx zfound = UINT32_MAX;
    for (ElemIdx z : base.zp[size_t(a)].elems) {
      const uint32_t dz = base.delta[size_t(a) * n + a].at(z);
      if (base.compose(a, a, so, dz, i1) != i2) continue;
      require(zfound == UINT32_MAX, "iso_of_extensions: central shift is not unique");
      zfound = z;
    }
    require(zfound != UINT32_MAX,
            "iso_of_extensions: inclusions do not differ by a central shift");
    th.z[size_t(a)] = zfound;
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const size_t pair = size_t(a) * n + b;
      const uint32_t dzb = base.delta[size_t(b) * n + b].at(th.z[size_t(b)]);
      const uint32_t dzainv =
          base.delta[size_t(a) * n + a].at(g.inv_idx(th.z[size_t(a)]));
      auto& map = th.map[pair];
      map.resize(base.morc(a, b));
      std::vector<char> hit(map.size(), 0);
      for (uint32_t f = 0; f < map.size(); ++f) {
        map[f] = base.compose(a, b, b, base.compose(a, a, b, dzainv, f), dzb);
        require(!hit[map[f]], "iso_of_extensions: Theta is not bijective");
        hit[map[f]] = 1;
        require(base.pi(a, b, map[f]) == base.pi(a, b, f),
                "iso_of_extensions: Theta does not preserve pi");
      }
      for (const auto& [k, v] : primed.delta[pair])
        require(map[v] == base.delta[pair].at(k),
                "iso_of_extensions: Theta does not carry delta' to delta");
    }
  // Composition preservation on a deterministic sample.
  uint64_t total = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        total += uint64_t(base.morc(a, b)) * base.morc(b, c);
  const uint64_t step = total > comp_budget ? (total + comp_budget - 1) / comp_budget : 1;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        const uint64_t mab = base.morc(a, b), mbc = base.morc(b, c);
        for (uint64_t k = 0; k < mab * mbc; k += step) {
          const uint32_t f = uint32_t(k % mab), h = uint32_t(k / mab);
          const uint32_t lhs = th.map[size_t(a) * n + c][base.compose(a, b, c, f, h)];
          const uint32_t rhs = base.compose(a, b, c, th.map[size_t(a) * n + b][f],
                                            th.map[size_t(b) * n + c][h]);
          require(lhs == rhs, "iso_of_extensions: Theta does not respect composition");
        }
      }
  return th;
}

}  // namespace oblim
