#include "oblim/group.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

namespace oblim {

namespace {

constexpr uint64_t kMaxGroupOrder = 20'000'000;  // hard enumeration ceiling
constexpr uint64_t kMulTableLimit = 1024;        // full table when |G| <= this

Elem perm_identity(int n) {
  Elem e;
  e.data.resize(n);
  for (int i = 0; i < n; ++i) e.data[i] = uint8_t(i);
  return e;
}

uint64_t p_part(uint64_t n, int p) {
  uint64_t q = 1;
  while (n % p == 0) {
    n /= p;
    q *= p;
  }
  return q;
}

}  // namespace

// --- ConcreteGroup ----------------------------------------------------------

Elem ConcreteGroup::identity() const {
  if (std::holds_alternative<PermGround>(ground_))
    return perm_identity(std::get<PermGround>(ground_).points);
  const auto& sg = std::get<SemiGround>(ground_);
  Elem e;
  e.data.assign(sg.dim, 0);
  e.aux = sg.gamma->identity_index();
  return e;
}

Elem ConcreteGroup::mul(const Elem& a, const Elem& b) const {
  if (std::holds_alternative<PermGround>(ground_)) {
    Elem r;
    r.data.resize(a.data.size());
    for (size_t i = 0; i < a.data.size(); ++i) r.data[i] = a.data[b.data[i]];
    return r;
  }
  const auto& sg = std::get<SemiGround>(ground_);
  const Mat& act = (*sg.action)[a.aux];
  Elem r;
  r.data = act.apply(b.data);
  for (int i = 0; i < sg.dim; ++i) r.data[i] = gf_add(r.data[i], a.data[i], sg.p);
  r.aux = sg.gamma->mul_idx(a.aux, b.aux);
  return r;
}

Elem ConcreteGroup::inv(const Elem& a) const {
  if (std::holds_alternative<PermGround>(ground_)) {
    Elem r;
    r.data.resize(a.data.size());
    for (size_t i = 0; i < a.data.size(); ++i) r.data[a.data[i]] = uint8_t(i);
    return r;
  }
  const auto& sg = std::get<SemiGround>(ground_);
  Elem r;
  r.aux = sg.gamma->inv_idx(a.aux);
  const Mat& act = (*sg.action)[r.aux];
  r.data = act.apply(a.data);
  for (int i = 0; i < sg.dim; ++i) r.data[i] = gf_neg(r.data[i], sg.p);
  return r;
}

ElemIdx ConcreteGroup::index_of(const Elem& e) const {
  auto it = index_.find(e);
  require(it != index_.end(), "ConcreteGroup: element not in group");
  return it->second;
}

std::optional<ElemIdx> ConcreteGroup::find(const Elem& e) const {
  auto it = index_.find(e);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

ElemIdx ConcreteGroup::mul_idx(ElemIdx a, ElemIdx b) const {
  if (!mul_table_.empty()) return mul_table_[size_t(a) * elems_.size() + b];
  if (packed_) {
    const auto& sg = std::get<SemiGround>(ground_);
    const int dim = sg.dim;
    uint32_t ua = unpack_[a], ub = unpack_[b];
    uint32_t ga = ua >> dim, gb = ub >> dim;
    uint32_t ma = ua & ((1u << dim) - 1), mb = ub & ((1u << dim) - 1);
    uint32_t acted = 0;
    const uint16_t* cm = &act_colmask_[size_t(ga) * dim];
    while (mb) {
      int j = __builtin_ctz(mb);
      acted ^= cm[j];
      mb &= mb - 1;
    }
    uint32_t g = sg.gamma->mul_idx(ga, gb);
    return pack_index_[(size_t(g) << dim) | (ma ^ acted)];
  }
  return index_of(mul(elems_[a], elems_[b]));
}

int ConcreteGroup::elem_order(ElemIdx i) const {
  int n = 1;
  ElemIdx x = i;
  while (x != id_idx_) {
    x = mul_idx(x, i);
    ++n;
    require(n <= int(order()), "elem_order: runaway");
  }
  return n;
}

bool ConcreteGroup::is_p_element(ElemIdx i, int p) const {
  int n = elem_order(i);
  while (n % p == 0) n /= p;
  return n == 1;
}

GroupPtr ConcreteGroup::make(Ground ground, std::vector<Elem> gens, BuildTag tag) {
  auto g = std::shared_ptr<ConcreteGroup>(new ConcreteGroup());
  g->ground_ = std::move(ground);
  g->tag_ = std::move(tag);

  Elem id = g->identity();
  std::unordered_set<Elem, ElemHash> seen;
  std::deque<Elem> queue;
  seen.insert(id);
  queue.push_back(id);
  while (!queue.empty()) {
    Elem cur = std::move(queue.front());
    queue.pop_front();
    for (const Elem& s : gens) {
      Elem nxt = g->mul(cur, s);
      if (seen.insert(nxt).second) {
        if (seen.size() > kMaxGroupOrder) fail_budget("group enumeration exceeds ceiling");
        queue.push_back(nxt);
      }
    }
  }
  g->elems_.assign(seen.begin(), seen.end());
  std::sort(g->elems_.begin(), g->elems_.end());
  g->index_.reserve(g->elems_.size() * 2);
  for (ElemIdx i = 0; i < g->elems_.size(); ++i) g->index_[g->elems_[i]] = i;
  g->id_idx_ = g->index_.at(id);
  for (const Elem& s : gens) {
    ElemIdx i = g->index_.at(s);
    if (i != g->id_idx_ &&
        std::find(g->gens_.begin(), g->gens_.end(), i) == g->gens_.end())
      g->gens_.push_back(i);
  }

  const uint64_t n = g->order();
  // Packed fast path before anything that calls mul_idx.
  if (auto* sg = std::get_if<SemiGround>(&g->ground_)) {
    if (sg->p == 2 && sg->dim <= 16 && sg->gamma->order() <= kMulTableLimit &&
        (sg->gamma->order() << sg->dim) <= (1u << 24)) {
      const int dim = sg->dim;
      const uint32_t ng = uint32_t(sg->gamma->order());
      g->pack_index_.assign(size_t(ng) << dim, UINT32_MAX);
      g->unpack_.resize(n);
      g->act_colmask_.assign(size_t(ng) * dim, 0);
      for (ElemIdx i = 0; i < n; ++i) {
        uint32_t bits = 0;
        for (int j = 0; j < dim; ++j)
          if (g->elems_[i].data[j]) bits |= 1u << j;
        uint32_t code = (g->elems_[i].aux << dim) | bits;
        g->unpack_[i] = code;
        g->pack_index_[code] = i;
      }
      for (uint32_t gi = 0; gi < ng; ++gi) {
        const Mat& m = (*sg->action)[gi];
        for (int j = 0; j < dim; ++j) {
          uint16_t mask = 0;
          for (int i = 0; i < dim; ++i)
            if (m.at(i, j)) mask |= uint16_t(1u << i);
          g->act_colmask_[size_t(gi) * dim + j] = mask;
        }
      }
      require(std::find(g->pack_index_.begin(), g->pack_index_.end(), UINT32_MAX) ==
                  g->pack_index_.end(),
              "semidirect enumeration is not all pairs");
      g->packed_ = true;
    }
  }

  g->inv_table_.resize(n);
  for (ElemIdx i = 0; i < n; ++i) g->inv_table_[i] = g->index_.at(g->inv(g->elems_[i]));

  if (n <= kMulTableLimit) {
    g->mul_table_.resize(n * n);
    for (ElemIdx a = 0; a < n; ++a)
      for (ElemIdx b = 0; b < n; ++b)
        g->mul_table_[size_t(a) * n + b] = g->index_.at(g->mul(g->elems_[a], g->elems_[b]));
  }
  return g;
}

// --- constructions ----------------------------------------------------------

GroupPtr symmetric_group(int n) {
  if (n < 1 || n > 250) fail_parse("Sym(n): n out of range");
  uint64_t fact = 1;
  for (int i = 2; i <= n; ++i) {
    fact *= uint64_t(i);
    if (fact > kMaxGroupOrder) fail_budget("Sym(n) too large to enumerate");
  }
  std::vector<Elem> gens;
  if (n >= 2) {
    Elem t = perm_identity(n);
    std::swap(t.data[0], t.data[1]);
    gens.push_back(t);
  }
  if (n >= 3) {
    Elem c = perm_identity(n);
    for (int i = 0; i < n; ++i) c.data[i] = uint8_t((i + 1) % n);
    gens.push_back(c);
  }
  auto g = ConcreteGroup::make(PermGround{n}, gens, SymTag{n});
  require(g->order() == fact, "Sym(n): order mismatch");
  return g;
}

GroupPtr cyclic_group(int n) {
  if (n < 1 || n > 250) fail_parse("C(n): n out of range");
  std::vector<Elem> gens;
  if (n >= 2) {
    Elem c = perm_identity(n);
    for (int i = 0; i < n; ++i) c.data[i] = uint8_t((i + 1) % n);
    gens.push_back(c);
  }
  auto g = ConcreteGroup::make(PermGround{n}, gens, CycTag{n});
  require(g->order() == uint64_t(n), "C(n): order mismatch");
  return g;
}

Elem product_embed(const ConcreteGroup& prod, int factor, const Elem& e) {
  const auto& tag = std::get<ProdTag>(prod.build_tag());
  const int points = std::get<PermGround>(prod.ground()).points;
  Elem r = perm_identity(points);
  int off = tag.offsets[factor];
  for (size_t i = 0; i < e.data.size(); ++i) r.data[off + i] = uint8_t(off + e.data[i]);
  return r;
}

GroupPtr direct_product(const std::vector<GroupPtr>& factors) {
  if (factors.empty()) fail_parse("prod: needs at least one factor");
  uint64_t ord = 1;
  int points = 0;
  std::vector<int> offsets;
  for (const auto& f : factors) {
    if (!std::holds_alternative<PermGround>(f->ground()))
      fail_parse("prod: factors must be permutation groups");
    offsets.push_back(points);
    points += std::get<PermGround>(f->ground()).points;
    ord *= f->order();
    if (points > 250 || ord > kMaxGroupOrder) fail_budget("prod: too large");
  }
  ProdTag tag{factors, offsets};
  std::vector<Elem> gens;
  for (size_t k = 0; k < factors.size(); ++k) {
    for (ElemIdx gi : factors[k]->generators()) {
      Elem e = perm_identity(points);
      int off = offsets[k];
      const Elem& fe = factors[k]->elem(gi);
      for (size_t i = 0; i < fe.data.size(); ++i)
        e.data[off + i] = uint8_t(off + fe.data[i]);
      gens.push_back(e);
    }
  }
  auto g = ConcreteGroup::make(PermGround{points}, gens, tag);
  require(g->order() == ord, "prod: order mismatch");
  return g;
}

Elem wreath_embed(const ConcreteGroup& wreath, const Elem& base_elem, int copy) {
  const auto& tag = std::get<WreathTag>(wreath.build_tag());
  const int bn = std::get<PermGround>(tag.base->ground()).points;
  const int points = std::get<PermGround>(wreath.ground()).points;
  Elem r = perm_identity(points);
  for (int v = 0; v < bn; ++v) r.data[copy * bn + v] = uint8_t(copy * bn + base_elem.data[v]);
  return r;
}

GroupPtr wreath_cyclic(GroupPtr base, int p) {
  if (!is_prime(p)) fail_parse("wreath(G,p): p must be prime");
  if (!std::holds_alternative<PermGround>(base->ground()))
    fail_parse("wreath: base must be a permutation group");
  const int bn = std::get<PermGround>(base->ground()).points;
  const int points = bn * p;
  if (points > 250) fail_budget("wreath: too many points");
  uint64_t ord = uint64_t(p);
  for (int i = 0; i < p; ++i) {
    ord *= base->order();
    if (ord > kMaxGroupOrder) fail_budget("wreath: too large");
  }
  WreathTag tag{base, p};
  std::vector<Elem> gens;
  for (ElemIdx gi : base->generators()) {
    Elem e = perm_identity(points);
    const Elem& fe = base->elem(gi);
    for (int v = 0; v < bn; ++v) e.data[v] = fe.data[v];
    gens.push_back(e);
  }
  // Rotation x with x(g_1,...,g_p)x^{-1} = (g_2,...,g_p,g_1): copy c -> c-1.
  Elem x = perm_identity(points);
  for (int c = 0; c < p; ++c)
    for (int v = 0; v < bn; ++v) x.data[c * bn + v] = uint8_t(((c + p - 1) % p) * bn + v);
  gens.push_back(x);
  auto g = ConcreteGroup::make(PermGround{points}, gens, tag);
  require(g->order() == ord, "wreath: order mismatch");
  return g;
}

GroupPtr semidirect_pairs(uint8_t p, int dim, GroupPtr gamma,
                          std::shared_ptr<const std::vector<Mat>> action) {
  require(action->size() == gamma->order(), "semidirect: action table size mismatch");
  uint64_t ord = gamma->order();
  for (int i = 0; i < dim; ++i) {
    ord *= p;
    if (ord > kMaxGroupOrder) fail_budget("semidirect: too large");
  }
  SemiGround ground{p, dim, gamma, action};
  std::vector<Elem> gens;
  for (int i = 0; i < dim; ++i) {
    Elem e;
    e.data.assign(dim, 0);
    e.data[i] = 1;
    e.aux = gamma->identity_index();
    gens.push_back(e);
  }
  for (ElemIdx gi : gamma->generators()) {
    Elem e;
    e.data.assign(dim, 0);
    e.aux = gi;
    gens.push_back(e);
  }
  auto g = ConcreteGroup::make(ground, gens, SemiTag{});
  require(g->order() == ord, "semidirect: closure is not all pairs");
  return g;
}

// --- subgroup-level queries --------------------------------------------------

bool Subgroup::contains(ElemIdx i) const {
  return std::binary_search(elems.begin(), elems.end(), i);
}

Subgroup trivial_subgroup(GroupPtr G) {
  return Subgroup{G, {G->identity_index()}, {}};
}

Subgroup full_subgroup(GroupPtr G) {
  Subgroup s;
  s.parent = G;
  s.elems.resize(G->order());
  for (ElemIdx i = 0; i < G->order(); ++i) s.elems[i] = i;
  for (ElemIdx g : G->generators()) s.gens.push_back(g);
  return s;
}

Subgroup generated_subgroup_idx(GroupPtr G, std::vector<ElemIdx> gens) {
  std::unordered_set<ElemIdx> seen;
  std::deque<ElemIdx> queue;
  ElemIdx id = G->identity_index();
  seen.insert(id);
  queue.push_back(id);
  while (!queue.empty()) {
    ElemIdx cur = queue.front();
    queue.pop_front();
    for (ElemIdx s : gens) {
      ElemIdx nxt = G->mul_idx(cur, s);
      if (seen.insert(nxt).second) queue.push_back(nxt);
    }
  }
  Subgroup r;
  r.parent = G;
  r.elems.assign(seen.begin(), seen.end());
  std::sort(r.elems.begin(), r.elems.end());
  for (ElemIdx s : gens)
    if (s != id && std::find(r.gens.begin(), r.gens.end(), s) == r.gens.end())
      r.gens.push_back(s);
  return r;
}

Subgroup generated_subgroup(GroupPtr G, const std::vector<Elem>& gens) {
  std::vector<ElemIdx> idx;
  for (const Elem& e : gens) idx.push_back(G->index_of(e));
  return generated_subgroup_idx(G, std::move(idx));
}

Subgroup conjugate_subgroup(const Subgroup& P, ElemIdx g) {
  const auto& G = *P.parent;
  Subgroup r;
  r.parent = P.parent;
  r.elems.resize(P.elems.size());
  for (size_t i = 0; i < P.elems.size(); ++i) r.elems[i] = G.conj_idx(g, P.elems[i]);
  std::sort(r.elems.begin(), r.elems.end());
  for (ElemIdx s : P.gens) r.gens.push_back(G.conj_idx(g, s));
  return r;
}

namespace {

// g P g^{-1} <= Q, decided on generators of P.
bool conj_into(const ConcreteGroup& G, const Subgroup& P, ElemIdx g, const Subgroup& Q) {
  if (P.gens.empty()) return Q.contains(G.identity_index());
  for (ElemIdx s : P.gens)
    if (!Q.contains(G.conj_idx(g, s))) return false;
  return true;
}

}  // namespace

Subgroup subgroup_from_elems(GroupPtr G, std::vector<ElemIdx> elems) {
  std::sort(elems.begin(), elems.end());
  Subgroup cur = trivial_subgroup(G);
  for (ElemIdx g : elems) {
    if (cur.elems.size() == elems.size()) break;
    if (!cur.contains(g)) {
      cur.gens.push_back(g);
      cur = generated_subgroup_idx(G, cur.gens);
    }
  }
  require(cur.elems == elems, "subgroup_from_elems: set is not closed");
  return cur;
}

Subgroup normalizer(const Subgroup& P) {
  const auto& G = *P.parent;
  std::vector<ElemIdx> elems;
  for (ElemIdx g = 0; g < G.order(); ++g)
    if (conj_into(G, P, g, P)) elems.push_back(g);
  return subgroup_from_elems(P.parent, std::move(elems));
}

Subgroup centralizer(const Subgroup& P) {
  const auto& G = *P.parent;
  std::vector<ElemIdx> elems;
  for (ElemIdx g = 0; g < G.order(); ++g) {
    bool ok = true;
    for (ElemIdx s : P.gens)
      if (G.conj_idx(g, s) != s) {
        ok = false;
        break;
      }
    if (ok) elems.push_back(g);
  }
  return subgroup_from_elems(P.parent, std::move(elems));
}

std::vector<Subgroup> conjugation_orbit(const Subgroup& P) {
  GroupPtr g = P.parent;
  std::unordered_set<std::vector<ElemIdx>, IdxVecHash> seen{P.elems};
  std::vector<Subgroup> out{P};
  for (size_t i = 0; i < out.size(); ++i)
    for (ElemIdx x : g->generators()) {
      Subgroup c = conjugate_subgroup(out[i], x);
      if (seen.insert(c.elems).second) out.push_back(std::move(c));
    }
  return out;
}

std::vector<ElemIdx> transporter(const Subgroup& P, const Subgroup& Q) {
  require(P.parent == Q.parent, "transporter: parent mismatch");
  const auto& G = *P.parent;
  std::vector<ElemIdx> r;
  for (ElemIdx g = 0; g < G.order(); ++g)
    if (conj_into(G, P, g, Q)) r.push_back(g);
  return r;
}

Subgroup p_core(GroupPtr G, int p) {
  Subgroup T = sylow(G, p);
  if (T.is_trivial()) return T;
  // Orbit of T under conjugation; intersect along the way.
  std::vector<ElemIdx> core = T.elems;
  std::unordered_set<std::vector<ElemIdx>, IdxVecHash> seen;
  std::deque<Subgroup> queue;
  seen.insert(T.elems);
  queue.push_back(T);
  while (!queue.empty() && core.size() > 1) {
    Subgroup cur = std::move(queue.front());
    queue.pop_front();
    for (ElemIdx g : G->generators()) {
      Subgroup nxt = conjugate_subgroup(cur, g);
      if (seen.insert(nxt.elems).second) {
        std::vector<ElemIdx> merged;
        std::set_intersection(core.begin(), core.end(), nxt.elems.begin(),
                              nxt.elems.end(), std::back_inserter(merged));
        core = std::move(merged);
        queue.push_back(std::move(nxt));
      }
    }
  }
  // Regenerate as a subgroup (the intersection is one).
  Subgroup r;
  r.parent = G;
  r.elems = std::move(core);
  Subgroup cur = trivial_subgroup(G);
  for (ElemIdx g : r.elems) {
    if (cur.elems.size() == r.elems.size()) break;
    if (!cur.contains(g)) {
      cur.gens.push_back(g);
      cur = generated_subgroup_idx(G, cur.gens);
    }
  }
  require(cur.elems == r.elems, "p_core: intersection not a subgroup");
  r.gens = cur.gens;
  return r;
}

namespace {

// Generators of Syl_p(Sym on points [base, base + p^k)), recursive wreath tower.
void sym_block_sylow(int base, int k, int p, int points, std::vector<Elem>* out) {
  if (k == 0) return;
  int sub = 1;
  for (int i = 1; i < k; ++i) sub *= p;  // p^{k-1}
  sym_block_sylow(base, k - 1, p, points, out);
  Elem x = perm_identity(points);
  for (int j = 0; j < p; ++j)
    for (int r = 0; r < sub; ++r)
      x.data[base + j * sub + r] = uint8_t(base + ((j + 1) % p) * sub + r);
  out->push_back(x);
}

std::vector<Elem> sym_sylow_gens(int n, int p) {
  std::vector<Elem> out;
  // Greedy p-adic block decomposition of the point set.
  int rest = n, base = 0;
  while (rest >= p) {
    int k = 0, size = 1;
    while (size * p <= rest) {
      size *= p;
      ++k;
    }
    sym_block_sylow(base, k, p, n, &out);
    base += size;
    rest -= size;
  }
  return out;
}

Subgroup greedy_sylow(GroupPtr G, int p) {
  Subgroup P = trivial_subgroup(G);
  for (;;) {
    Subgroup N = normalizer(P);
    bool grew = false;
    for (ElemIdx g : N.elems) {
      if (P.contains(g) || !G->is_p_element(g, p)) continue;
      std::vector<ElemIdx> gens = P.gens;
      gens.push_back(g);
      P = generated_subgroup_idx(G, std::move(gens));
      grew = true;
      break;
    }
    if (!grew) return P;
  }
}

}  // namespace

Subgroup sylow(GroupPtr G, int p) {
  if (!is_prime(p)) fail_parse("sylow: p must be prime");
  const uint64_t target = p_part(G->order(), p);
  Subgroup result;

  if (const auto* sym = std::get_if<SymTag>(&G->build_tag())) {
    result = generated_subgroup(G, sym_sylow_gens(sym->n, p));
  } else if (std::holds_alternative<CycTag>(G->build_tag())) {
    const auto& cyc = std::get<CycTag>(G->build_tag());
    std::vector<ElemIdx> gens;
    if (target > 1) {
      ElemIdx c = G->generators().at(0);
      uint64_t e = uint64_t(cyc.n) / target;
      ElemIdx x = G->identity_index();
      for (uint64_t i = 0; i < e; ++i) x = G->mul_idx(x, c);
      gens.push_back(x);
    }
    result = generated_subgroup_idx(G, gens);
  } else if (const auto* prod = std::get_if<ProdTag>(&G->build_tag())) {
    std::vector<Elem> gens;
    for (size_t k = 0; k < prod->factors.size(); ++k) {
      Subgroup fs = sylow(prod->factors[k], p);
      for (ElemIdx gi : fs.gens)
        gens.push_back(product_embed(*G, int(k), prod->factors[k]->elem(gi)));
    }
    result = generated_subgroup(G, gens);
  } else if (const auto* wr = std::get_if<WreathTag>(&G->build_tag())) {
    Subgroup bs = sylow(wr->base, p);
    std::vector<Elem> gens;
    if (p == wr->p) {
      for (ElemIdx gi : bs.gens) gens.push_back(wreath_embed(*G, wr->base->elem(gi), 0));
      const int bn = std::get<PermGround>(wr->base->ground()).points;
      const int points = bn * wr->p;
      Elem x = perm_identity(points);
      for (int c = 0; c < wr->p; ++c)
        for (int v = 0; v < bn; ++v)
          x.data[c * bn + v] = uint8_t(((c + wr->p - 1) % wr->p) * bn + v);
      gens.push_back(x);
    } else {
      for (int c = 0; c < wr->p; ++c)
        for (ElemIdx gi : bs.gens) gens.push_back(wreath_embed(*G, wr->base->elem(gi), c));
    }
    result = generated_subgroup(G, gens);
  } else if (std::holds_alternative<SemiTag>(G->build_tag())) {
    const auto& sg = std::get<SemiGround>(G->ground());
    Subgroup gs = sylow(sg.gamma, p);
    std::vector<Elem> gens;
    if (int(sg.p) == p) {
      for (int i = 0; i < sg.dim; ++i) {
        Elem e;
        e.data.assign(sg.dim, 0);
        e.data[i] = 1;
        e.aux = sg.gamma->identity_index();
        gens.push_back(e);
      }
    }
    for (ElemIdx gi : gs.gens) {
      Elem e;
      e.data.assign(sg.dim, 0);
      e.aux = gi;
      gens.push_back(e);
    }
    result = generated_subgroup(G, gens);
  } else {
    result = greedy_sylow(G, p);
  }

  if (result.order() != target) result = greedy_sylow(G, p);
  require(result.order() == target, "sylow: certification failed");
  return result;
}

std::vector<Subgroup> all_subgroups(const Subgroup& P, uint64_t budget) {
  GroupPtr G = P.parent;
  std::unordered_map<std::vector<ElemIdx>, size_t, IdxVecHash> seen;
  std::vector<Subgroup> out;
  auto add = [&](Subgroup s) -> bool {
    if (seen.count(s.elems)) return false;
    if (out.size() >= budget) fail_budget("all_subgroups: budget exceeded");
    seen[s.elems] = out.size();
    out.push_back(std::move(s));
    return true;
  };
  add(trivial_subgroup(G));
  size_t layer_begin = 0;
  while (layer_begin < out.size()) {
    size_t layer_end = out.size();
    for (size_t i = layer_begin; i < layer_end; ++i) {
      for (ElemIdx x : P.elems) {
        if (out[i].contains(x)) continue;
        std::vector<ElemIdx> gens = out[i].gens;
        gens.push_back(x);
        add(generated_subgroup_idx(G, std::move(gens)));
      }
    }
    layer_begin = layer_end;
  }
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.elems.size() != b.elems.size()) return a.elems.size() < b.elems.size();
    return a.elems < b.elems;
  });
  return out;
}

Quotient quotient_group(const Subgroup& N, const Subgroup& K) {
  require(N.parent == K.parent, "quotient: parent mismatch");
  GroupPtr G = N.parent;
  for (ElemIdx k : K.elems)
    require(N.contains(k), "quotient: K not inside N");
  for (ElemIdx n : N.gens)
    for (ElemIdx k : K.gens)
      require(K.contains(G->conj_idx(n, k)), "quotient: K not normal in N");

  const size_t ncosets = N.elems.size() / K.elems.size();
  require(ncosets <= 250, "quotient: too many cosets for a permutation rep");

  // Coset ids in canonical (minimum-representative) order.
  std::unordered_map<ElemIdx, uint32_t> coset_of;
  std::vector<ElemIdx> coset_rep;
  for (ElemIdx n : N.elems) {
    if (coset_of.count(n)) continue;
    uint32_t id = uint32_t(coset_rep.size());
    coset_rep.push_back(n);
    for (ElemIdx k : K.elems) coset_of[G->mul_idx(n, k)] = id;
  }
  require(coset_rep.size() == ncosets, "quotient: coset count mismatch");

  // Left-multiplication permutation of each coset; regular action, faithful.
  std::unordered_map<Elem, ElemIdx, ElemHash> rep_of_perm;
  std::vector<Elem> all_perms(ncosets);
  for (size_t i = 0; i < ncosets; ++i) {
    Elem perm;
    perm.data.resize(ncosets);
    for (size_t j = 0; j < ncosets; ++j)
      perm.data[j] = uint8_t(coset_of.at(G->mul_idx(coset_rep[i], coset_rep[j])));
    rep_of_perm[perm] = coset_rep[i];
    all_perms[i] = std::move(perm);
  }
  std::vector<Elem> gens;
  for (ElemIdx n : N.gens) {
    Elem perm;
    perm.data.resize(ncosets);
    for (size_t j = 0; j < ncosets; ++j)
      perm.data[j] = uint8_t(coset_of.at(G->mul_idx(n, coset_rep[j])));
    gens.push_back(std::move(perm));
  }
  auto Q = ConcreteGroup::make(PermGround{int(ncosets)}, gens, PlainTag{});
  require(Q->order() == ncosets, "quotient: regular action order mismatch");

  Quotient out;
  out.group = Q;
  out.rep.resize(ncosets);
  for (ElemIdx i = 0; i < Q->order(); ++i) out.rep[i] = rep_of_perm.at(Q->elem(i));
  return out;
}

}  // namespace oblim
