#include "oblim/lambda.hpp"

#include <chrono>
#include <unordered_map>

#include "oblim/common.hpp"

namespace oblim {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Mat column_matrix(uint8_t p, int dim, const std::vector<std::vector<uint8_t>>& cols) {
  Mat b(p, dim, int(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j) {
    require(int(cols[j].size()) == dim, "column_matrix: length mismatch");
    for (int r = 0; r < dim; ++r) b.at(r, int(j)) = cols[j][r];
  }
  return b;
}

}  // namespace

OrbitCategory orbit_category(GroupPtr gamma, int p) {
  require(is_prime(p), "orbit_category: p must be prime");
  OrbitCategory oc;
  oc.gamma = gamma;
  oc.p = p;
  oc.t = sylow(gamma, p);
  oc.objects = all_subgroups(oc.t);
  const int n = int(oc.objects.size());
  require(n >= 1 && oc.objects[0].order() == 1,
          "orbit_category: trivial subgroup must come first");
  oc.trivial_object = 0;

  FiniteCategory& c = oc.cat;
  c.n = n;
  c.mor_count.assign(size_t(n) * n, 0);
  c.identity_id.assign(size_t(n), -1);
  c.comp.resize(size_t(n) * n * n);
  oc.rep.resize(size_t(n) * n);

  // mid[a*n+b]: group element -> local morphism id of its coset.
  std::vector<std::unordered_map<ElemIdx, uint32_t>> mid(size_t(n) * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const Subgroup& q = oc.objects[b];
      std::vector<ElemIdx> xs;
      for (ElemIdx t : transporter(oc.objects[a], q)) xs.push_back(gamma->inv_idx(t));
      std::sort(xs.begin(), xs.end());
      auto& ids = mid[size_t(a) * n + b];
      auto& reps = oc.rep[size_t(a) * n + b];
      for (ElemIdx x : xs) {
        if (ids.count(x)) continue;
        const uint32_t id = uint32_t(reps.size());
        reps.push_back(x);
        for (ElemIdx qe : q.elems) ids.emplace(gamma->mul_idx(x, qe), id);
      }
      c.mor_count[size_t(a) * n + b] = int(reps.size());
    }
  }
  for (int a = 0; a < n; ++a) {
    auto it = mid[size_t(a) * n + a].find(gamma->identity_index());
    require(it != mid[size_t(a) * n + a].end(), "orbit_category: missing identity");
    c.identity_id[a] = int(it->second);
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const int mab = c.morc(a, b);
      if (mab == 0) continue;
      for (int cc = 0; cc < n; ++cc) {
        const int mbc = c.morc(b, cc);
        if (mbc == 0) continue;
        auto& table = c.comp[(size_t(a) * n + b) * n + cc];
        table.resize(size_t(mab) * mbc);
        const auto& ids = mid[size_t(a) * n + cc];
        for (int g = 0; g < mbc; ++g) {
          const ElemIdx rg = oc.rep[size_t(b) * n + cc][g];
          for (int f = 0; f < mab; ++f) {
            const ElemIdx rf = oc.rep[size_t(a) * n + b][f];
            auto it = ids.find(gamma->mul_idx(rf, rg));
            require(it != ids.end(), "orbit_category: composite not in target");
            table[size_t(g) * mab + f] = it->second;
          }
        }
      }
    }
  }
  return oc;
}

VecFunctor atomic_functor(const OrbitCategory& oc, const GModule& m) {
  require(m.owner == oc.gamma, "atomic_functor: module/group mismatch");
  require(m.p == oc.p, "atomic_functor: characteristic mismatch");
  const int n = oc.cat.n;
  VecFunctor f;
  f.p = m.p;
  f.dim.assign(size_t(n), 0);
  f.dim[oc.trivial_object] = m.dim;
  f.mats.resize(size_t(n) * n);
  const size_t tt = size_t(oc.trivial_object) * n + oc.trivial_object;
  f.mats[tt].reserve(oc.rep[tt].size());
  for (ElemIdx x : oc.rep[tt]) f.mats[tt].push_back(m.action(x));
  return f;
}

LambdaResult lambda_bar(GroupPtr gamma, int p, const GModule& m, int i_max,
                        const Budgets& budgets) {
  require(m.owner == gamma, "lambda_bar: module/group mismatch");
  const auto t0 = std::chrono::steady_clock::now();
  OrbitCategory oc = orbit_category(gamma, p);
  VecFunctor f = atomic_functor(oc, m);
  LambdaResult r;
  r.p = uint8_t(p);
  r.dims = lim_dims(oc.cat, f, i_max, budgets.bar_chains);
  r.backend = "bar";
  r.seconds = seconds_since(t0);
  return r;
}

LambdaResult lambda_poset(GroupPtr gamma, int p, const GModule& m, int i_max,
                          const Budgets& budgets) {
  require(m.owner == gamma, "lambda_poset: module/group mismatch");
  require(m.p == p, "lambda_poset: characteristic mismatch");
  require(i_max >= 0, "lambda_poset: negative degree");
  const auto t0 = std::chrono::steady_clock::now();

  ChainTower tower(gamma, p, budgets.chain_orbits);
  tower.extend_to(i_max);

  // Per level: fixed-point basis of each orbit's stabilizer, with a solver for
  // coordinate extraction, and column offsets.
  struct LevelData {
    std::vector<Mat> basis;
    std::vector<std::optional<SpanSolver>> solver;
    std::vector<int> off;
    int total = 0;
  };
  std::vector<LevelData> lev(size_t(i_max) + 1);
  for (int k = 0; k <= i_max; ++k) {
    for (const ChainOrbit& o : tower.level(k)) {
      Mat b = column_matrix(m.p, m.dim, fixed_points(m, o.stab));
      lev[k].off.push_back(lev[k].total);
      lev[k].total += b.cols;
      if (b.cols > 0)
        lev[k].solver.emplace_back(SpanSolver(b));
      else
        lev[k].solver.emplace_back(std::nullopt);
      lev[k].basis.push_back(std::move(b));
    }
  }

  const std::vector<std::vector<uint8_t>> f0 =
      fixed_points(m, full_subgroup(gamma));

  CochainComplex cx;
  cx.p = m.p;
  cx.dims.assign(size_t(i_max) + 2, 0);
  cx.dims[0] = int(f0.size());
  for (int k = 0; k <= i_max; ++k) cx.dims[size_t(k) + 1] = lev[k].total;

  // d^0: the constant-function augmentation C_M(Gamma) -> D^1.
  {
    SparseMatrix d;
    d.p = m.p;
    d.rows = lev[0].total;
    d.cols = int(f0.size());
    for (size_t o = 0; o < tower.level(0).size(); ++o) {
      if (!lev[0].solver[o]) continue;
      for (size_t j = 0; j < f0.size(); ++j) {
        const std::vector<uint8_t> x = lev[0].solver[o]->coords(f0[j]);
        for (size_t r = 0; r < x.size(); ++r)
          if (x[r]) d.add(lev[0].off[o] + int(r), int(j), x[r]);
      }
    }
    cx.d.push_back(std::move(d));
  }
  // d^n, n >= 1: alternating face sum, transported to orbit representatives.
  for (int k = 1; k <= i_max; ++k) {
    SparseMatrix d;
    d.p = m.p;
    d.rows = lev[k].total;
    d.cols = lev[k - 1].total;
    const auto& orbits = tower.level(k);
    for (size_t t = 0; t < orbits.size(); ++t) {
      if (!lev[k].solver[t]) continue;
      const ChainOrbit& tau = orbits[t];
      for (size_t i = 0; i < tau.faces.size(); ++i) {
        const auto [oi, gi] = tau.faces[i];
        const Mat& b = lev[k - 1].basis[oi];
        if (b.cols == 0) continue;
        const Mat& act = m.action(gi);
        for (int j = 0; j < b.cols; ++j) {
          std::vector<uint8_t> col(size_t(m.dim));
          for (int r = 0; r < m.dim; ++r) col[r] = b.at(r, j);
          std::vector<uint8_t> v = act.apply(col);
          if (i % 2)
            for (auto& x : v) x = gf_neg(x, m.p);
          const std::vector<uint8_t> x = lev[k].solver[t]->coords(v);
          for (size_t r = 0; r < x.size(); ++r)
            if (x[r]) d.add(lev[k].off[t] + int(r), lev[k - 1].off[oi] + j, x[r]);
        }
      }
    }
    cx.d.push_back(std::move(d));
  }

  cx.validate();
  std::vector<int> h = cohomology_dims(cx);
  h.resize(size_t(i_max) + 1);

  LambdaResult r;
  r.p = uint8_t(p);
  r.dims = std::move(h);
  r.backend = "poset";
  r.seconds = seconds_since(t0);
  return r;
}

LambdaResult lambda_dims(GroupPtr gamma, int p, const GModule& m, int i_max,
                         const std::string& backend, const Budgets& budgets) {
  if (backend == "poset") return lambda_poset(gamma, p, m, i_max, budgets);
  if (backend == "bar") return lambda_bar(gamma, p, m, i_max, budgets);
  if (backend == "both") {
    const auto t0 = std::chrono::steady_clock::now();
    LambdaResult a = lambda_poset(gamma, p, m, i_max, budgets);
    LambdaResult b = lambda_bar(gamma, p, m, i_max, budgets);
    require(a.dims == b.dims, "lambda_dims: backend disagreement");
    a.backend = "both";
    a.seconds = seconds_since(t0);
    return a;
  }
  fail_parse("unknown backend (expected poset, bar or both)");
}

std::vector<int> lambda_closed_form_sylow_p(GroupPtr gamma, int p, const GModule& m,
                                            int i_max) {
  require(m.owner == gamma, "closed form: module/group mismatch");
  const Subgroup t = sylow(gamma, p);
  require(t.order() == uint64_t(p), "closed form: Sylow subgroup must have order p");
  const int fixed_norm = int(fixed_points(m, normalizer(t)).size());
  const int fixed_all = int(fixed_points(m, full_subgroup(gamma)).size());
  require(fixed_norm >= fixed_all, "closed form: fixed-point dimensions inconsistent");
  std::vector<int> dims(size_t(i_max) + 1, 0);
  if (i_max >= 1) dims[1] = fixed_norm - fixed_all;
  return dims;
}

std::vector<int> kunneth_combine(const std::vector<int>& a, const std::vector<int>& b,
                                 int i_max) {
  std::vector<int> out(size_t(i_max) + 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      if (!b[j]) continue;
      if (i + j <= size_t(i_max)) out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

Subgroup module_kernel(const GModule& m) {
  const ConcreteGroup& g = *m.owner;
  std::vector<ElemIdx> elems;
  for (ElemIdx i = 0; i < g.order(); ++i)
    if (m.action(i).is_identity()) elems.push_back(i);
  Subgroup s;
  s.parent = m.owner;
  s.elems = std::move(elems);  // already sorted: scan order is index order
  for (ElemIdx e : s.elems)
    if (e != g.identity_index()) s.gens.push_back(e);
  return s;
}

std::optional<std::string> vanishing_preflight(GroupPtr gamma, int p, const GModule& m) {
  require(m.owner == gamma, "preflight: module/group mismatch");
  const Subgroup ker = module_kernel(m);
  if (ker.order() % uint64_t(p) == 0) return "p divides |C_Gamma(M)|";
  if (p_core(gamma, p).order() > 1) return "O_p(Gamma) != 1";
  return std::nullopt;
}

}  // namespace oblim
