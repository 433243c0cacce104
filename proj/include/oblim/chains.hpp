#pragma once

// Gamma-conjugacy orbits of nontrivial p-subgroups and of strict subgroup
// chains, with stabilizers and face-transport data. Every chain is conjugate
// to one whose members lie in a fixed Sylow subgroup T, so representatives are
// drawn from the subgroup lattice of T; chains grow at the bottom, so each
// stabilizer is computed inside the previous one.

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "oblim/group.hpp"

namespace oblim {

struct ChainOrbit {
  std::vector<uint32_t> subs;  // registry ids, strictly increasing subgroups
  Subgroup stab;               // Stab_Gamma(chain), fixes each member
  uint64_t orbit_size = 0;
  // faces[i] = (orbit id at the previous level, g) for the chain with member i
  // dropped, where dropped_chain = g . rep(that orbit) memberwise.
  std::vector<std::pair<uint32_t, ElemIdx>> faces;
};

class ChainTower {
 public:
  ChainTower(GroupPtr gamma, int p, uint64_t orbit_budget = 100000);

  // Ensures levels 0..k exist (level k holds orbits of (k+1)-member chains).
  void extend_to(int k);

  GroupPtr gamma() const { return gamma_; }
  const Subgroup& sylow_witness() const { return T_; }
  const std::vector<Subgroup>& registry() const { return registry_; }
  int levels_built() const { return int(level_.size()) - 1; }
  const std::vector<ChainOrbit>& level(int k) const;

 private:
  std::pair<uint32_t, ElemIdx> locate(const std::vector<uint32_t>& ids) const;
  void build_level0();
  void build_next_level();
  Subgroup span_of(std::vector<ElemIdx> sorted_elems) const;

  GroupPtr gamma_;
  int p_;
  uint64_t budget_;
  uint64_t total_orbits_ = 0;
  Subgroup T_;
  std::vector<Subgroup> registry_;  // nontrivial subgroups of T, canonical order
  std::unordered_map<std::vector<ElemIdx>, uint32_t, IdxVecHash> reg_id_;
  std::vector<std::vector<uint32_t>> sub_of_;  // proper nontrivial subgroups
  std::vector<std::vector<ChainOrbit>> level_;
  // class0_[rid] = (level-0 orbit, g) with registry[rid] = g . rep.
  std::vector<std::pair<uint32_t, ElemIdx>> class0_;
  // ext_[k][o][rid] = (level-k+1 orbit, h): the orbit of chain (rid, rep_o).
  std::vector<std::vector<std::unordered_map<uint32_t, std::pair<uint32_t, ElemIdx>>>>
      ext_;
};

struct PClass {
  Subgroup rep;
  Subgroup norm;
  uint64_t count = 0;  // orbit size
};

std::vector<PClass> p_subgroup_orbits(GroupPtr gamma, int p, uint64_t budget = 100000);
std::vector<ChainOrbit> chain_orbits(GroupPtr gamma, int p, int k,
                                     uint64_t budget = 100000);

}  // namespace oblim
