#include <doctest.h>

#include <algorithm>

#include "oblim/chains.hpp"

using namespace oblim;

namespace {

bool is_p_power(uint64_t n, int p) {
  while (n % p == 0) n /= p;
  return n == 1;
}

// All nontrivial p-subgroups of G, by brute force over the subgroup lattice.
std::vector<Subgroup> brute_p_subgroups(GroupPtr g, int p) {
  std::vector<Subgroup> out;
  for (auto& s : all_subgroups(full_subgroup(g), 1 << 16))
    if (s.order() > 1 && is_p_power(s.order(), p)) out.push_back(s);
  return out;
}

bool strictly_contains(const Subgroup& big, const Subgroup& small) {
  if (big.order() <= small.order()) return false;
  return std::includes(big.elems.begin(), big.elems.end(), small.elems.begin(),
                       small.elems.end());
}

}  // namespace

TEST_CASE("p-subgroup orbit counts") {
  auto s3 = symmetric_group(3);
  auto cls = p_subgroup_orbits(s3, 2);
  REQUIRE(cls.size() == 1);
  CHECK(cls[0].rep.order() == 2);
  CHECK(cls[0].count == 3);
  CHECK(cls[0].norm.order() == 2);

  auto v4 = direct_product({cyclic_group(2), cyclic_group(2)});
  CHECK(p_subgroup_orbits(v4, 2).size() == 4);

  auto s4 = symmetric_group(4);
  auto cls4 = p_subgroup_orbits(s4, 2);
  CHECK(cls4.size() == 6);
  uint64_t covered = 0;
  for (const auto& c : cls4) {
    CHECK(c.count * c.norm.order() == s4->order());
    covered += c.count;
  }
  CHECK(covered == brute_p_subgroups(s4, 2).size());

  CHECK(p_subgroup_orbits(s3, 3).size() == 1);
  CHECK(p_subgroup_orbits(cyclic_group(5), 2).empty());
}

TEST_CASE("chain orbit counts") {
  auto s3 = symmetric_group(3);
  CHECK(chain_orbits(s3, 2, 0).size() == 1);
  CHECK(chain_orbits(s3, 2, 1).empty());

  auto v4 = direct_product({cyclic_group(2), cyclic_group(2)});
  CHECK(chain_orbits(v4, 2, 1).size() == 3);
}

TEST_CASE("chain orbits cover all chains, with exact stabilizers") {
  auto s4 = symmetric_group(4);
  auto subs = brute_p_subgroups(s4, 2);
  // brute chain counts per level
  uint64_t n0 = subs.size(), n1 = 0, n2 = 0;
  for (const auto& a : subs)
    for (const auto& b : subs) {
      if (!strictly_contains(b, a)) continue;
      ++n1;
      for (const auto& c : subs)
        if (strictly_contains(c, b)) ++n2;
    }

  ChainTower tower(s4, 2);
  tower.extend_to(2);
  const uint64_t expected[3] = {n0, n1, n2};
  for (int k = 0; k <= 2; ++k) {
    uint64_t total = 0;
    for (const auto& o : tower.level(k)) {
      CHECK(o.orbit_size * o.stab.order() == s4->order());
      total += o.orbit_size;
    }
    CHECK(total == expected[k]);
  }
}

TEST_CASE("face transport data is exact") {
  auto s4 = symmetric_group(4);
  ChainTower tower(s4, 2);
  tower.extend_to(2);
  const auto& reg = tower.registry();
  for (int k = 1; k <= 2; ++k) {
    for (const auto& tau : tower.level(k)) {
      REQUIRE(tau.faces.size() == tau.subs.size());
      // stabilizer fixes every member
      for (ElemIdx h : tau.stab.gens)
        for (uint32_t rid : tau.subs)
          CHECK(conjugate_subgroup(reg[rid], h).elems == reg[rid].elems);
      for (size_t i = 0; i < tau.faces.size(); ++i) {
        auto [oi, gi] = tau.faces[i];
        const auto& src = tower.level(k - 1)[oi];
        size_t jj = 0;
        for (size_t j = 0; j < tau.subs.size(); ++j) {
          if (j == i) continue;
          CHECK(conjugate_subgroup(reg[src.subs[jj]], gi).elems ==
                reg[tau.subs[j]].elems);
          ++jj;
        }
      }
    }
  }
}

TEST_CASE("chain budget") {
  auto s4 = symmetric_group(4);
  CHECK_THROWS_AS(ChainTower(s4, 2, 2), BudgetError);
}
