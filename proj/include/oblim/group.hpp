#pragma once

// Concrete finite groups: permutation groups and module-semidirect products,
// with eager element enumeration (desk scale), exact subgroup-level queries,
// and constructively propagated Sylow witnesses.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <unordered_map>
#include <variant>
#include <vector>

#include "oblim/common.hpp"
#include "oblim/gf.hpp"

namespace oblim {

class ConcreteGroup;
using GroupPtr = std::shared_ptr<const ConcreteGroup>;
using ElemIdx = uint32_t;

// data: permutation images, or the module vector of a semidirect pair.
// aux:  index of the acting element in the complement group (semidirect only).
struct Elem {
  std::vector<uint8_t> data;
  uint32_t aux = 0;

  bool operator==(const Elem&) const = default;
  auto operator<=>(const Elem& o) const {
    if (auto c = data <=> o.data; c != 0) return c;
    return aux <=> o.aux;
  }
};

struct ElemHash {
  size_t operator()(const Elem& e) const {
    uint64_t h = 1469598103934665603ull;
    for (uint8_t b : e.data) h = (h ^ b) * 1099511628211ull;
    h = (h ^ e.aux) * 1099511628211ull;
    h = (h ^ (e.aux >> 16)) * 1099511628211ull;
    return size_t(h);
  }
};

struct PermGround {
  int points = 0;
};
struct SemiGround {
  uint8_t p = 2;
  int dim = 0;
  GroupPtr gamma;
  // Action matrix per gamma element index (the full action table of the module).
  std::shared_ptr<const std::vector<Mat>> action;
};
using Ground = std::variant<PermGround, SemiGround>;

// Construction pedigree; carries exactly the structure needed to write down a
// Sylow witness without searching.
struct SymTag {
  int n = 0;
};
struct CycTag {
  int n = 0;
};
struct ProdTag {
  std::vector<GroupPtr> factors;
  std::vector<int> offsets;  // point offset of each factor
};
struct WreathTag {
  GroupPtr base;
  int p = 0;
};
struct SemiTag {};
struct PlainTag {};  // quotient groups and other ad-hoc permutation groups
using BuildTag = std::variant<SymTag, CycTag, ProdTag, WreathTag, SemiTag, PlainTag>;

class ConcreteGroup : public std::enable_shared_from_this<ConcreteGroup> {
 public:
  // Enumerates the closure of `gens`, sorts it canonically and indexes it.
  static GroupPtr make(Ground ground, std::vector<Elem> gens, BuildTag tag);

  uint64_t order() const { return elems_.size(); }
  const std::vector<Elem>& elements() const { return elems_; }
  const Elem& elem(ElemIdx i) const { return elems_[i]; }
  const std::vector<ElemIdx>& generators() const { return gens_; }
  const Ground& ground() const { return ground_; }
  const BuildTag& build_tag() const { return tag_; }

  Elem identity() const;
  ElemIdx identity_index() const { return id_idx_; }

  Elem mul(const Elem& a, const Elem& b) const;
  Elem inv(const Elem& a) const;
  ElemIdx index_of(const Elem& e) const;
  std::optional<ElemIdx> find(const Elem& e) const;

  ElemIdx mul_idx(ElemIdx a, ElemIdx b) const;
  ElemIdx inv_idx(ElemIdx a) const { return inv_table_[a]; }
  // g x g^{-1} at index level.
  ElemIdx conj_idx(ElemIdx g, ElemIdx x) const {
    return mul_idx(mul_idx(g, x), inv_table_[g]);
  }

  int elem_order(ElemIdx i) const;
  bool is_p_element(ElemIdx i, int p) const;

 private:
  ConcreteGroup() = default;

  Ground ground_;
  BuildTag tag_;
  std::vector<Elem> elems_;  // sorted canonically
  std::vector<ElemIdx> gens_;
  std::unordered_map<Elem, ElemIdx, ElemHash> index_;
  std::vector<ElemIdx> inv_table_;
  ElemIdx id_idx_ = 0;

  // |G|^2 multiplication table for small groups (complement groups of
  // semidirect products hit this constantly).
  std::vector<ElemIdx> mul_table_;

  // Packed fast path for semidirect grounds at p = 2 with small complement:
  // element <-> (gamma index, module bits).
  bool packed_ = false;
  std::vector<ElemIdx> pack_index_;     // [gamma_idx << dim | bits] -> index
  std::vector<uint32_t> unpack_;        // index -> gamma_idx << dim | bits
  std::vector<uint16_t> act_colmask_;   // [gamma_idx * dim + j] -> column j mask
};

struct Subgroup {
  GroupPtr parent;
  std::vector<ElemIdx> elems;  // sorted
  std::vector<ElemIdx> gens;

  uint64_t order() const { return elems.size(); }
  bool contains(ElemIdx i) const;
  bool is_trivial() const { return elems.size() == 1; }
  // Equality is by element set within the same parent.
  bool same(const Subgroup& o) const {
    return parent == o.parent && elems == o.elems;
  }
};

// --- constructions ---------------------------------------------------------

GroupPtr symmetric_group(int n);
GroupPtr cyclic_group(int n);
GroupPtr direct_product(const std::vector<GroupPtr>& factors);
GroupPtr wreath_cyclic(GroupPtr base, int p);
// G = M x| Gamma for a module given by its full action table over gamma.
GroupPtr semidirect_pairs(uint8_t p, int dim, GroupPtr gamma,
                          std::shared_ptr<const std::vector<Mat>> action);

// Embeds a base-group element into copy `i` of the wreath base, or a factor
// element into a product; used by Sylow propagation and tests.
Elem wreath_embed(const ConcreteGroup& wreath, const Elem& base_elem, int copy);
Elem product_embed(const ConcreteGroup& prod, int factor, const Elem& e);

// --- subgroup-level queries ------------------------------------------------

Subgroup trivial_subgroup(GroupPtr G);
Subgroup full_subgroup(GroupPtr G);
Subgroup generated_subgroup(GroupPtr G, const std::vector<Elem>& gens);
Subgroup generated_subgroup_idx(GroupPtr G, std::vector<ElemIdx> gens);
Subgroup conjugate_subgroup(const Subgroup& P, ElemIdx g);
// Wraps an already-closed element set with a greedy minimal generator list;
// CheckError if the set is not a subgroup.
Subgroup subgroup_from_elems(GroupPtr G, std::vector<ElemIdx> elems);

Subgroup normalizer(const Subgroup& P);
Subgroup centralizer(const Subgroup& P);
// All distinct conjugates g P g^{-1}, g in the parent group; P itself first.
std::vector<Subgroup> conjugation_orbit(const Subgroup& P);
// {g in G : g P g^{-1} <= Q}, membership decided on generators of P.
std::vector<ElemIdx> transporter(const Subgroup& P, const Subgroup& Q);
// Intersection of the conjugates of a Sylow p-subgroup.
Subgroup p_core(GroupPtr G, int p);
// Designated witness via the construction pedigree; greedy search + order
// certification as fallback. CheckError if the order is not the exact p-part.
Subgroup sylow(GroupPtr G, int p);

std::vector<Subgroup> all_subgroups(const Subgroup& P, uint64_t budget = 1 << 14);

struct Quotient {
  GroupPtr group;
  // rep[i] = parent element index representing quotient element i.
  std::vector<ElemIdx> rep;
};
// N/K with K normal in N, as the faithful permutation action on cosets.
Quotient quotient_group(const Subgroup& N, const Subgroup& K);

// Canonical sorted index vector used as a hash key for subgroup dedup.
struct IdxVecHash {
  size_t operator()(const std::vector<ElemIdx>& v) const {
    uint64_t h = 1469598103934665603ull;
    for (ElemIdx x : v) {
      h = (h ^ (x & 0xff)) * 1099511628211ull;
      h = (h ^ ((x >> 8) & 0xff)) * 1099511628211ull;
      h = (h ^ ((x >> 16) & 0xff)) * 1099511628211ull;
      h = (h ^ (x >> 24)) * 1099511628211ull;
    }
    return size_t(h);
  }
};

}  // namespace oblim
