#pragma once

// Shared helpers for the test suites: fixture loading, brute-force order
// oracles and a seeded random lattice generator.

#include <cstdint>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "serrelab/lattice.hpp"
#include "serrelab/lattice_io.hpp"

namespace testsupport {

inline std::string fixture(const std::string& name) { return std::string(SERRELAB_FIXTURE_DIR) + "/" + name; }

inline serrelab::LatticePtr load(const std::string& name) {
  return std::make_shared<const serrelab::Lattice>(serrelab::load_lattice(fixture(name)));
}

inline serrelab::LatticePtr share(serrelab::Lattice l) {
  return std::make_shared<const serrelab::Lattice>(std::move(l));
}

/// Reflexive-transitive closure of the covers by Floyd-Warshall.
inline std::vector<std::vector<bool>> naive_order(const serrelab::Poset& p) {
  const std::size_t n = p.size();
  std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) le[i][i] = true;
  for (const auto& c : p.covers()) le[c.lo][c.hi] = true;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (le[i][k] && le[k][j]) le[i][j] = true;
      }
    }
  }
  return le;
}

/// Greatest common lower bound by scanning, or -1.
inline int naive_meet(const std::vector<std::vector<bool>>& le, int a, int b) {
  const int n = static_cast<int>(le.size());
  int best = -1;
  for (int x = 0; x < n; ++x) {
    if (!le[x][a] || !le[x][b]) continue;
    bool above_all = true;
    for (int y = 0; y < n; ++y) {
      if (le[y][a] && le[y][b] && !le[y][x]) above_all = false;
    }
    if (above_all) best = x;
  }
  return best;
}

inline int naive_join(const std::vector<std::vector<bool>>& le, int a, int b) {
  const int n = static_cast<int>(le.size());
  int best = -1;
  for (int x = 0; x < n; ++x) {
    if (!le[a][x] || !le[b][x]) continue;
    bool below_all = true;
    for (int y = 0; y < n; ++y) {
      if (le[a][y] && le[b][y] && !le[x][y]) below_all = false;
    }
    if (below_all) best = x;
  }
  return best;
}

/// Lattice of a random intersection-closed family of subsets of a small
/// ground set (always containing the full set), ordered by inclusion.
inline serrelab::Lattice random_lattice(std::mt19937& rng, int ground, int draws) {
  const std::uint32_t full = (1u << ground) - 1;
  std::set<std::uint32_t> family{full};
  std::uniform_int_distribution<std::uint32_t> pick(0, full);
  for (int i = 0; i < draws; ++i) family.insert(pick(rng));
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::uint32_t> cur(family.begin(), family.end());
    for (auto a : cur) {
      for (auto b : cur) {
        if (family.insert(a & b).second) grew = true;
      }
    }
  }
  std::vector<std::uint32_t> sets(family.begin(), family.end());
  std::vector<std::string> labels;
  for (auto s : sets) labels.push_back("s" + std::to_string(s));
  auto subset = [](std::uint32_t a, std::uint32_t b) { return (a & b) == a; };
  std::vector<serrelab::Cover> covers;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t j = 0; j < sets.size(); ++j) {
      if (i == j || !subset(sets[i], sets[j])) continue;
      bool between = false;
      for (std::size_t k = 0; k < sets.size() && !between; ++k) {
        if (k != i && k != j && subset(sets[i], sets[k]) && subset(sets[k], sets[j])) between = true;
      }
      if (!between) covers.push_back({static_cast<int>(i), static_cast<int>(j)});
    }
  }
  return serrelab::Lattice::from_covers(labels, covers);
}

inline serrelab::Lattice boolean_lattice(int k) {
  serrelab::Lattice acc = serrelab::chain_lattice(2);
  for (int i = 1; i < k; ++i) acc = serrelab::product(acc, serrelab::chain_lattice(2));
  return k == 0 ? serrelab::chain_lattice(1) : acc;
}

}  // namespace testsupport
