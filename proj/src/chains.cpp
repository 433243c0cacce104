#include "oblim/chains.hpp"

#include <algorithm>
#include <deque>

namespace oblim {

ChainTower::ChainTower(GroupPtr gamma, int p, uint64_t orbit_budget)
    : gamma_(std::move(gamma)), p_(p), budget_(orbit_budget) {
  T_ = sylow(gamma_, p_);
  for (Subgroup& s : all_subgroups(T_)) {
    if (s.is_trivial()) continue;
    reg_id_[s.elems] = uint32_t(registry_.size());
    registry_.push_back(std::move(s));
  }
  sub_of_.resize(registry_.size());
  for (uint32_t a = 0; a < registry_.size(); ++a)
    for (uint32_t b = 0; b < registry_.size(); ++b) {
      if (registry_[b].order() >= registry_[a].order()) continue;
      if (std::includes(registry_[a].elems.begin(), registry_[a].elems.end(),
                        registry_[b].elems.begin(), registry_[b].elems.end()))
        sub_of_[a].push_back(b);
    }
  build_level0();
}

const std::vector<ChainOrbit>& ChainTower::level(int k) const {
  require(k >= 0 && k < int(level_.size()), "ChainTower: level not built");
  return level_[k];
}

void ChainTower::extend_to(int k) {
  while (int(level_.size()) <= k) build_next_level();
}

// Smallest generator set found by greedy closure over the sorted element list.
Subgroup ChainTower::span_of(std::vector<ElemIdx> sorted_elems) const {
  Subgroup cur = trivial_subgroup(gamma_);
  for (ElemIdx g : sorted_elems) {
    if (cur.elems.size() == sorted_elems.size()) break;
    if (!cur.contains(g)) {
      cur.gens.push_back(g);
      cur = generated_subgroup_idx(gamma_, cur.gens);
    }
  }
  require(cur.elems == sorted_elems, "span_of: element set is not a subgroup");
  return cur;
}

void ChainTower::build_level0() {
  class0_.assign(registry_.size(), {UINT32_MAX, 0});
  level_.emplace_back();
  auto& lvl = level_.front();
  const ElemIdx id = gamma_->identity_index();

  for (uint32_t rid = 0; rid < registry_.size(); ++rid) {
    if (class0_[rid].first != UINT32_MAX) continue;
    uint32_t orbit_id = uint32_t(lvl.size());
    if (++total_orbits_ > budget_) fail_budget("chain orbits: budget exceeded");

    // Orbit of the subgroup under conjugation by all of Gamma.
    std::unordered_map<std::vector<ElemIdx>, ElemIdx, IdxVecHash> visited;
    std::deque<std::pair<Subgroup, ElemIdx>> queue;
    visited[registry_[rid].elems] = id;
    queue.push_back({registry_[rid], id});
    class0_[rid] = {orbit_id, id};
    while (!queue.empty()) {
      auto [cur, t] = std::move(queue.front());
      queue.pop_front();
      for (ElemIdx g : gamma_->generators()) {
        Subgroup nxt = conjugate_subgroup(cur, g);
        ElemIdx tn = gamma_->mul_idx(g, t);
        auto [it, fresh] = visited.try_emplace(nxt.elems, tn);
        if (!fresh) continue;
        auto reg_it = reg_id_.find(nxt.elems);
        if (reg_it != reg_id_.end()) class0_[reg_it->second] = {orbit_id, tn};
        queue.push_back({std::move(nxt), tn});
      }
    }

    ChainOrbit co;
    co.subs = {rid};
    co.stab = normalizer(registry_[rid]);
    co.orbit_size = visited.size();
    require(co.orbit_size * co.stab.order() == gamma_->order(),
            "chain orbit: orbit-stabilizer mismatch at level 0");
    lvl.push_back(std::move(co));
  }
}

std::pair<uint32_t, ElemIdx> ChainTower::locate(
    const std::vector<uint32_t>& ids) const {
  require(!ids.empty(), "locate: empty chain");
  if (ids.size() == 1) {
    auto r = class0_[ids[0]];
    require(r.first != UINT32_MAX, "locate: unclassified subgroup");
    return r;
  }
  std::vector<uint32_t> tail(ids.begin() + 1, ids.end());
  auto [o_tail, g_tail] = locate(tail);
  Subgroup moved =
      conjugate_subgroup(registry_[ids[0]], gamma_->inv_idx(g_tail));
  auto rit = reg_id_.find(moved.elems);
  require(rit != reg_id_.end(), "locate: transported bottom left the Sylow lattice");
  const size_t k_tail = tail.size() - 1;
  const auto& m = ext_.at(k_tail).at(o_tail);
  auto eit = m.find(rit->second);
  require(eit != m.end(), "locate: missing extension record");
  auto [o, h] = eit->second;
  return {o, gamma_->mul_idx(g_tail, h)};
}

void ChainTower::build_next_level() {
  const size_t k_prev = level_.size() - 1;
  level_.emplace_back();  // may reallocate; take references only afterwards
  const auto& prev = level_[k_prev];
  auto& lvl = level_.back();
  ext_.resize(level_.size() - 1);
  auto& ext_here = ext_[k_prev];
  ext_here.resize(prev.size());

  for (uint32_t o_prev = 0; o_prev < prev.size(); ++o_prev) {
    const ChainOrbit& base = prev[o_prev];
    uint32_t bottom = base.subs[0];
    auto& ext_map = ext_here[o_prev];
    for (uint32_t cand : sub_of_[bottom]) {
      if (ext_map.count(cand)) continue;
      uint32_t orbit_id = uint32_t(lvl.size());
      if (++total_orbits_ > budget_) fail_budget("chain orbits: budget exceeded");

      // One pass over the stabilizer marks the whole H-orbit of the candidate
      // and collects the new stabilizer.
      std::vector<ElemIdx> stab_elems;
      for (ElemIdx h : base.stab.elems) {
        Subgroup moved = conjugate_subgroup(registry_[cand], h);
        auto rit = reg_id_.find(moved.elems);
        require(rit != reg_id_.end(), "chain extension left the Sylow lattice");
        if (rit->second == cand) stab_elems.push_back(h);
        ext_map.try_emplace(rit->second, orbit_id, h);
      }
      std::sort(stab_elems.begin(), stab_elems.end());

      ChainOrbit co;
      co.subs.reserve(base.subs.size() + 1);
      co.subs.push_back(cand);
      co.subs.insert(co.subs.end(), base.subs.begin(), base.subs.end());
      co.stab = span_of(std::move(stab_elems));
      require(gamma_->order() % co.stab.order() == 0,
              "chain orbit: stabilizer order does not divide |Gamma|");
      co.orbit_size = gamma_->order() / co.stab.order();
      co.faces.resize(co.subs.size());
      co.faces[0] = {o_prev, gamma_->identity_index()};
      for (size_t i = 1; i < co.subs.size(); ++i) {
        std::vector<uint32_t> face = co.subs;
        face.erase(face.begin() + i);
        co.faces[i] = locate(face);
      }
      lvl.push_back(std::move(co));
    }
  }
}

std::vector<PClass> p_subgroup_orbits(GroupPtr gamma, int p, uint64_t budget) {
  ChainTower tower(std::move(gamma), p, budget);
  std::vector<PClass> out;
  for (const ChainOrbit& co : tower.level(0))
    out.push_back({tower.registry()[co.subs[0]], co.stab, co.orbit_size});
  return out;
}

std::vector<ChainOrbit> chain_orbits(GroupPtr gamma, int p, int k, uint64_t budget) {
  ChainTower tower(std::move(gamma), p, budget);
  tower.extend_to(k);
  return tower.level(k);
}

}  // namespace oblim
