#include "oblim/fusion.hpp"

#include <algorithm>
#include <chrono>
#include <unordered_map>
#include <unordered_set>

namespace oblim {

namespace {

double seconds_between(std::chrono::steady_clock::time_point a,
                       std::chrono::steady_clock::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

uint64_t p_part(uint64_t n, int p) {
  uint64_t r = 1;
  while (n % uint64_t(p) == 0) {
    n /= uint64_t(p);
    r *= uint64_t(p);
  }
  return r;
}

bool subgroup_of(const Subgroup& inner, const Subgroup& outer) {
  for (ElemIdx x : inner.gens)
    if (!outer.contains(x)) return false;
  return true;
}

// C_S(Q) <= Q, scanned over the ambient Sylow group.
bool cs_inside(const ConcreteGroup& g, const Subgroup& s, const Subgroup& q) {
  for (ElemIdx x : s.elems) {
    bool cent = true;
    for (ElemIdx qg : q.gens)
      if (g.conj_idx(x, qg) != qg) {
        cent = false;
        break;
      }
    if (cent && !q.contains(x)) return false;
  }
  return true;
}

// C_S(P) as a subgroup.
Subgroup cs_of(const FusionContext& fc, const Subgroup& p) {
  std::vector<ElemIdx> elems;
  for (ElemIdx x : fc.s.elems) {
    bool cent = true;
    for (ElemIdx pg : p.gens)
      if (fc.g->conj_idx(x, pg) != pg) {
        cent = false;
        break;
      }
    if (cent) elems.push_back(x);
  }
  return subgroup_from_elems(fc.g, std::move(elems));
}

// Z(P) = C_S(P) with a GF(p) basis and a discrete-log table. Demands the
// local centricity C_S(P) <= P (which makes conjugation well defined on it)
// and elementary abelian structure.
struct CenterData {
  Subgroup zp;
  std::vector<ElemIdx> basis;
  std::unordered_map<ElemIdx, std::vector<uint8_t>> coord;
};

CenterData center_data(const FusionContext& fc, const Subgroup& p) {
  const auto& g = *fc.g;
  CenterData cd;
  cd.zp = cs_of(fc, p);
  for (ElemIdx z : cd.zp.elems)
    require(p.contains(z), "center_data: C_S(P) is not inside P");
  for (ElemIdx z : cd.zp.elems) {
    ElemIdx zp = z;
    for (int k = 1; k < fc.p; ++k) zp = g.mul_idx(zp, z);
    require(zp == g.identity_index(),
            "center_data: Z(P) is not elementary abelian (outside accepted scope)");
    for (ElemIdx w : cd.zp.elems)
      require(g.mul_idx(z, w) == g.mul_idx(w, z),
              "center_data: Z(P) is not abelian (outside accepted scope)");
  }
  std::vector<ElemIdx> span_gens;
  Subgroup cur = trivial_subgroup(fc.g);
  for (ElemIdx z : cd.zp.elems) {
    if (!cur.contains(z)) {
      cd.basis.push_back(z);
      span_gens.push_back(z);
      cur = generated_subgroup_idx(fc.g, span_gens);
    }
  }
  require(cur.elems == cd.zp.elems, "center_data: basis span mismatch");
  cd.coord[g.identity_index()] = std::vector<uint8_t>(cd.basis.size(), 0);
  for (size_t j = 0; j < cd.basis.size(); ++j) {
    std::vector<std::pair<ElemIdx, std::vector<uint8_t>>> snap(cd.coord.begin(),
                                                               cd.coord.end());
    ElemIdx power = cd.basis[j];
    for (int k = 1; k < fc.p; ++k) {
      for (const auto& [e, v] : snap) {
        std::vector<uint8_t> w = v;
        w[j] = uint8_t(k);
        cd.coord[g.mul_idx(e, power)] = std::move(w);
      }
      power = g.mul_idx(power, cd.basis[j]);
    }
  }
  require(cd.coord.size() == cd.zp.elems.size(), "center_data: coordinate table mismatch");
  return cd;
}

RepHoms rep_homs_impl(const ConcreteGroup& g, const Subgroup& p, const Subgroup& q,
                      const std::vector<ElemIdx>& cgens) {
  RepHoms rh;
  rh.telems = transporter(p, q);
  rh.cls.assign(rh.telems.size(), UINT32_MAX);
  auto pos_of = [&](ElemIdx e) {
    auto it = std::lower_bound(rh.telems.begin(), rh.telems.end(), e);
    require(it != rh.telems.end() && *it == e, "rep_homs: coset escaped the transporter");
    return size_t(it - rh.telems.begin());
  };
  std::vector<size_t> stack;
  for (size_t i = 0; i < rh.telems.size(); ++i) {
    if (rh.cls[i] != UINT32_MAX) continue;
    const uint32_t id = uint32_t(rh.rep.size());
    rh.rep.push_back(rh.telems[i]);
    rh.cls[i] = id;
    stack.assign(1, i);
    while (!stack.empty()) {
      const ElemIdx t = rh.telems[stack.back()];
      stack.pop_back();
      auto visit = [&](ElemIdx u) {
        const size_t k = pos_of(u);
        if (rh.cls[k] == UINT32_MAX) {
          rh.cls[k] = id;
          stack.push_back(k);
        }
      };
      for (ElemIdx qg : q.gens) visit(g.mul_idx(qg, t));
      for (ElemIdx cg : cgens) visit(g.mul_idx(t, cg));
    }
  }
  return rh;
}

}  // namespace

FusionContext fusion_context(GroupPtr g, int p, std::string group_spec) {
  FusionContext fc;
  fc.p = p;
  fc.g = std::move(g);
  fc.s = sylow(fc.g, p);
  fc.group_spec = std::move(group_spec);
  return fc;
}

FusionContext fusion_context_semidirect(const GModule& m, std::string group_spec,
                                        std::string module_spec) {
  FusionContext fc;
  fc.p = m.p;
  fc.g = semidirect_product(m);
  fc.s = sylow(fc.g, m.p);
  fc.gamma = m.owner;
  fc.m = m;
  fc.group_spec = std::move(group_spec);
  fc.module_spec = std::move(module_spec);
  return fc;
}

Subgroup module_subgroup(const FusionContext& fc) {
  require(fc.gamma && fc.m.has_value(), "module_subgroup: not a semidirect context");
  const auto& sg = std::get<SemiGround>(fc.g->ground());
  std::vector<ElemIdx> gens;
  for (int i = 0; i < sg.dim; ++i) {
    Elem e;
    e.data.assign(size_t(sg.dim), 0);
    e.data[size_t(i)] = 1;
    e.aux = sg.gamma->identity_index();
    gens.push_back(fc.g->index_of(e));
  }
  return generated_subgroup_idx(fc.g, std::move(gens));
}

bool f_centric(const FusionContext& fc, const Subgroup& p) {
  require(p.parent == fc.g, "f_centric: foreign subgroup");
  require(subgroup_of(p, fc.s), "f_centric: P is not inside S");
  for (const Subgroup& q : conjugation_orbit(p)) {
    if (!subgroup_of(q, fc.s)) continue;
    if (!cs_inside(*fc.g, fc.s, q)) return false;
  }
  return true;
}

bool p_centric(const FusionContext& fc, const Subgroup& p) {
  require(p.parent == fc.g, "p_centric: foreign subgroup");
  Subgroup c = centralizer(p);
  std::vector<ElemIdx> z;
  std::set_intersection(c.elems.begin(), c.elems.end(), p.elems.begin(), p.elems.end(),
                        std::back_inserter(z));
  return z.size() == p_part(c.elems.size(), fc.p);
}

std::vector<Subgroup> centric_set(const FusionContext& fc, uint64_t lattice_budget) {
  std::vector<Subgroup> out;
  for (Subgroup& p : all_subgroups(fc.s, lattice_budget)) {
    if (!f_centric(fc, p)) continue;
    require(p_centric(fc, p), "centric_set: centricity cross-check failed");
    out.push_back(std::move(p));
  }
  return out;
}

TheoremSets theorem_sets(const FusionContext& fc) {
  require(fc.gamma && fc.m.has_value(), "theorem_sets: needs a semidirect context");
  GroupPtr g = fc.g;
  Subgroup m = module_subgroup(fc);
  require(subgroup_of(m, fc.s), "theorem_sets: M is not inside S");

  // Every H with M <= H <= S is reachable from M by adjoining one element at
  // a time; candidates collapse to one representative per coset of H.
  auto s_pos = [&](ElemIdx e) {
    auto it = std::lower_bound(fc.s.elems.begin(), fc.s.elems.end(), e);
    require(it != fc.s.elems.end() && *it == e, "theorem_sets: product escaped S");
    return size_t(it - fc.s.elems.begin());
  };
  std::unordered_map<std::vector<ElemIdx>, int, IdxVecHash> pos{{m.elems, 0}};
  std::vector<Subgroup> x{m};
  for (size_t i = 0; i < x.size(); ++i) {
    std::vector<char> covered(fc.s.elems.size(), 0);
    for (size_t j = 0; j < fc.s.elems.size(); ++j) {
      if (covered[j]) continue;
      const ElemIdx t = fc.s.elems[j];
      for (ElemIdx h : x[i].elems) covered[s_pos(g->mul_idx(h, t))] = 1;
      if (x[i].contains(t)) continue;
      std::vector<ElemIdx> gens = x[i].gens;
      gens.push_back(t);
      Subgroup k = generated_subgroup_idx(g, std::move(gens));
      if (!pos.count(k.elems)) {
        pos[k.elems] = int(x.size());
        x.push_back(std::move(k));
      }
    }
  }
  std::sort(x.begin(), x.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.elems.size() != b.elems.size()) return a.elems.size() < b.elems.size();
    return a.elems < b.elems;
  });
  pos.clear();
  for (size_t i = 0; i < x.size(); ++i) pos[x[i].elems] = int(i);

  TheoremSets ts;
  ts.x = std::move(x);
  ts.m_index = pos.at(m.elems);

  // Closure under F-conjugacy plus centricity (checked both ways), one
  // conjugation orbit per class.
  std::vector<char> done(ts.x.size(), 0);
  std::vector<std::vector<int>> classes;
  for (size_t i = 0; i < ts.x.size(); ++i) {
    if (done[i]) continue;
    std::vector<int> cls;
    for (const Subgroup& q : conjugation_orbit(ts.x[i])) {
      if (!subgroup_of(q, fc.s)) continue;
      require(cs_inside(*fc.g, fc.s, q), "theorem_sets: member is not F-centric");
      auto it = pos.find(q.elems);
      require(it != pos.end(), "theorem_sets: X is not closed under F-conjugacy");
      if (!done[it->second]) {
        done[it->second] = 1;
        cls.push_back(it->second);
      }
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  for (const Subgroup& p : ts.x)
    require(p_centric(fc, p), "theorem_sets: centricity cross-check failed");

  for (const auto& cls : classes) {
    if (std::find(cls.begin(), cls.end(), ts.m_index) != cls.end()) continue;
    ts.y.insert(ts.y.end(), cls.begin(), cls.end());
  }
  std::sort(ts.y.begin(), ts.y.end());
  return ts;
}

uint32_t RepHoms::class_of(ElemIdx t) const {
  auto it = std::lower_bound(telems.begin(), telems.end(), t);
  require(it != telems.end() && *it == t, "rep_homs: element is not in the transporter");
  return cls[size_t(it - telems.begin())];
}

RepHoms rep_homs(const FusionContext& fc, const Subgroup& p, const Subgroup& q) {
  require(p.parent == fc.g && q.parent == fc.g, "rep_homs: foreign subgroup");
  return rep_homs_impl(*fc.g, p, q, centralizer(p).gens);
}

FOrbitCategory f_orbit_category(const FusionContext& fc, std::vector<Subgroup> objects) {
  const auto& g = *fc.g;
  const int n = int(objects.size());
  {
    std::unordered_set<std::vector<ElemIdx>, IdxVecHash> seen;
    for (const Subgroup& o : objects) {
      require(o.parent == fc.g, "f_orbit_category: foreign subgroup");
      require(subgroup_of(o, fc.s), "f_orbit_category: object is not inside S");
      require(seen.insert(o.elems).second, "f_orbit_category: duplicate object");
    }
  }
  FOrbitCategory oc;
  oc.g = fc.g;
  oc.objects = std::move(objects);
  std::vector<std::vector<ElemIdx>> cgens(static_cast<size_t>(n));
  for (int a = 0; a < n; ++a) cgens[size_t(a)] = centralizer(oc.objects[size_t(a)]).gens;
  oc.homs.resize(size_t(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      oc.homs[size_t(a) * n + b] =
          rep_homs_impl(g, oc.objects[size_t(a)], oc.objects[size_t(b)], cgens[size_t(a)]);

  FiniteCategory& c = oc.cat;
  c.n = n;
  c.mor_count.resize(size_t(n) * n);
  for (size_t ab = 0; ab < c.mor_count.size(); ++ab)
    c.mor_count[ab] = uint32_t(oc.homs[ab].rep.size());
  c.identity_id.resize(size_t(n));
  for (int a = 0; a < n; ++a)
    c.identity_id[size_t(a)] = oc.homs[size_t(a) * n + a].class_of(g.identity_index());
  c.comp.resize(size_t(n) * n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int cc = 0; cc < n; ++cc) {
        const RepHoms& hab = oc.homs[size_t(a) * n + b];
        const RepHoms& hbc = oc.homs[size_t(b) * n + cc];
        const RepHoms& hac = oc.homs[size_t(a) * n + cc];
        auto& table = c.comp[(size_t(a) * n + b) * n + cc];
        table.resize(hab.rep.size() * hbc.rep.size());
        for (size_t h = 0; h < hbc.rep.size(); ++h)
          for (size_t f = 0; f < hab.rep.size(); ++f)
            table[h * hab.rep.size() + f] =
                hac.class_of(g.mul_idx(hbc.rep[h], hab.rep[f]));
      }
  return oc;
}

ClassLocalData out_f(const FusionContext& fc, const Subgroup& p) {
  require(p.parent == fc.g, "out_f: foreign subgroup");
  const auto& g = *fc.g;
  CenterData cd = center_data(fc, p);

  Subgroup n = normalizer(p);
  Subgroup c = centralizer(p);
  std::vector<ElemIdx> pc_gens = p.gens;
  pc_gens.insert(pc_gens.end(), c.gens.begin(), c.gens.end());
  Subgroup pc = generated_subgroup_idx(fc.g, std::move(pc_gens));
  Quotient q = quotient_group(n, pc);

  const int dim = int(cd.basis.size());
  std::vector<Mat> gmats;
  for (ElemIdx qg : q.group->generators()) {
    const ElemIdx r = q.rep[qg];
    Mat mat(uint8_t(fc.p), dim, dim);
    for (int j = 0; j < dim; ++j) {
      auto it = cd.coord.find(g.conj_idx(r, cd.basis[size_t(j)]));
      require(it != cd.coord.end(), "out_f: conjugation does not preserve Z(P)");
      for (int i = 0; i < dim; ++i) mat.at(i, j) = it->second[size_t(i)];
    }
    gmats.push_back(std::move(mat));
  }

  ClassLocalData d;
  d.rep = p;
  d.zp = std::move(cd.zp);
  d.out = q.group;
  d.out_rep = std::move(q.rep);
  d.zbasis = std::move(cd.basis);
  d.zmod = make_module(d.out, std::move(gmats), uint8_t(fc.p), dim);
  return d;
}

LambdaResult class_local_lambda(const FusionContext& fc, const Subgroup& p, int i_max,
                                const Budgets& budgets) {
  ClassLocalData d = out_f(fc, p);
  return lambda_poset(d.out, fc.p, d.zmod, i_max, budgets);
}

ClassifyReport classify_linking_systems(const FusionContext& fc, const Budgets& budgets) {
  require(fc.gamma && fc.m.has_value(), "classify: needs a semidirect context");
  ClassifyReport rep;
  rep.prime = fc.p;
  rep.group_spec = fc.group_spec;
  rep.module_spec = fc.module_spec;
  rep.lambda_dims = lambda_poset(fc.gamma, fc.p, *fc.m, 3, budgets).dims;
  rep.x_classes = 1;
  rep.y_classes = 1;
  for (int i = 0; i < rep.lambda_dims[3]; ++i) rep.y_classes *= fc.p;
  rep.note = "exactly one Y-class extends to an X-linking system";

  TheoremSets ts = theorem_sets(fc);
  for (const auto& cls : f_conjugacy_classes(fc, ts.x)) {
    const int i = cls.front();
    ClassifyReport::Row row;
    row.rep = "X[" + std::to_string(i) + "]";
    row.order = ts.x[size_t(i)].order();
    ClassLocalData d = out_f(fc, ts.x[size_t(i)]);
    row.out_f_order = d.out->order();
    row.zp_dim = d.zmod.dim;
    row.lambda_dims = lambda_poset(d.out, fc.p, d.zmod, 4, budgets).dims;
    rep.per_class_table.push_back(std::move(row));
  }
  return rep;
}

std::vector<std::vector<int>> f_conjugacy_classes(const FusionContext& fc,
                                                  const std::vector<Subgroup>& objects) {
  std::unordered_map<std::vector<ElemIdx>, int, IdxVecHash> pos;
  for (size_t i = 0; i < objects.size(); ++i) {
    require(objects[i].parent == fc.g, "f_conjugacy_classes: foreign subgroup");
    pos[objects[i].elems] = int(i);
  }
  require(pos.size() == objects.size(), "f_conjugacy_classes: duplicate object");
  std::vector<char> done(objects.size(), 0);
  std::vector<std::vector<int>> out;
  for (size_t i = 0; i < objects.size(); ++i) {
    if (done[i]) continue;
    std::vector<int> cls;
    for (const Subgroup& q : conjugation_orbit(objects[i])) {
      auto it = pos.find(q.elems);
      if (it != pos.end() && !done[it->second]) {
        done[it->second] = 1;
        cls.push_back(it->second);
      }
    }
    std::sort(cls.begin(), cls.end());
    out.push_back(std::move(cls));
  }
  return out;
}

LambdaResult lim_z_direct(const FusionContext& fc, const std::vector<Subgroup>& objects,
                          int i_max, const Budgets& budgets) {
  const auto t0 = std::chrono::steady_clock::now();
  for (const Subgroup& p : objects)
    require(f_centric(fc, p), "lim_z_direct: object is not F-centric");
  FOrbitCategory oc = f_orbit_category(fc, objects);
  const auto& g = *fc.g;
  const int n = int(oc.objects.size());

  std::vector<CenterData> zd;
  for (const Subgroup& p : oc.objects) zd.push_back(center_data(fc, p));

  VecFunctor f;
  f.p = uint8_t(fc.p);
  f.dim.resize(size_t(n));
  for (int a = 0; a < n; ++a) f.dim[size_t(a)] = int(zd[size_t(a)].basis.size());
  f.mats.resize(size_t(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const RepHoms& h = oc.homs[size_t(a) * n + b];
      auto& mats = f.mats[size_t(a) * n + b];
      for (ElemIdx rep : h.rep) {
        const ElemIdx ginv = g.inv_idx(rep);
        Mat mat(f.p, f.dim[size_t(a)], f.dim[size_t(b)]);
        for (int j = 0; j < mat.cols; ++j) {
          auto it = zd[size_t(a)].coord.find(g.conj_idx(ginv, zd[size_t(b)].basis[size_t(j)]));
          require(it != zd[size_t(a)].coord.end(),
                  "lim_z_direct: center image escapes the source center");
          for (int i = 0; i < mat.rows; ++i) mat.at(i, j) = it->second[size_t(i)];
        }
        mats.push_back(std::move(mat));
      }
    }
  f.check_functorial(oc.cat);

  LambdaResult r;
  r.p = uint8_t(fc.p);
  r.dims = lim_dims(oc.cat, f, i_max, budgets.bar_chains);
  r.backend = "direct";
  r.seconds = seconds_between(t0, std::chrono::steady_clock::now());
  return r;
}

}  // namespace oblim
