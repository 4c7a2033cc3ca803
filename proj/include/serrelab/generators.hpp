#pragma once

// Named lattice families: Tamari, type I(m), boolean lattices, chain products.

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "serrelab/errors.hpp"
#include "serrelab/lattice.hpp"
#include "serrelab/typea.hpp"

namespace serrelab {

namespace detail {

struct BinaryTree {
  std::shared_ptr<const BinaryTree> left, right;
};
using TreePtr = std::shared_ptr<const BinaryTree>;

inline TreePtr node(TreePtr l, TreePtr r) { return std::make_shared<const BinaryTree>(BinaryTree{std::move(l), std::move(r)}); }

inline std::string encode(const TreePtr& t) { return t ? "(" + encode(t->left) + ")(" + encode(t->right) + ")" : ""; }

inline std::vector<TreePtr> binary_trees(int nodes) {
  if (nodes == 0) return {nullptr};
  std::vector<TreePtr> out;
  for (int k = 0; k < nodes; ++k) {
    for (const auto& l : binary_trees(k)) {
      for (const auto& r : binary_trees(nodes - 1 - k)) out.push_back(node(l, r));
    }
  }
  return out;
}

/// Trees reached by one right rotation ((A B) C) -> (A (B C)) anywhere.
inline std::vector<TreePtr> right_rotations(const TreePtr& t) {
  std::vector<TreePtr> out;
  if (!t) return out;
  if (t->left) out.push_back(node(t->left->left, node(t->left->right, t->right)));
  for (const auto& l : right_rotations(t->left)) out.push_back(node(l, t->right));
  for (const auto& r : right_rotations(t->right)) out.push_back(node(t->left, r));
  return out;
}

}  // namespace detail

/// Tamari lattice on binary trees with the given number of nodes, ordered by right rotation.
inline Lattice tamari_by_rotation(int nodes) {
  std::vector<std::string> labels;
  std::vector<std::pair<std::string, std::string>> covers;
  for (const auto& t : detail::binary_trees(nodes)) {
    labels.push_back(detail::encode(t));
    for (const auto& u : detail::right_rotations(t)) covers.emplace_back(detail::encode(t), detail::encode(u));
  }
  return build_lattice(labels, covers);
}

/// Tamari lattice with Catalan(n) elements, computed as torsion classes of
/// the linear A_{n-1} quiver and compared against the rotation order.
inline LatticePtr gen_tamari(int n) {
  if (n < 1) throw invalid_input("tamari needs n >= 1");
  if (n == 1) return std::make_shared<const Lattice>(build_lattice({"{}"}, {}));
  if (n - 1 > typea::kMaxRank) throw guardrail_exceeded("tamari is limited to n <= " + std::to_string(typea::kMaxRank + 1));
  const typea::TypeA t(typea::QuiverA::linear(n - 1));
  if (!is_isomorphic(*t.tors_lattice(), tamari_by_rotation(n))) {
    throw verification_failure("torsion classes of linear A_" + std::to_string(n - 1) + " do not form the Tamari lattice");
  }
  return t.tors_lattice();
}

/// bottom < L < top and bottom < R1 < ... < R(m-1) < top.
inline LatticePtr gen_type_i(int m) {
  if (m < 2) throw invalid_input("type I needs m >= 2");
  std::vector<std::string> labels{"bottom", "L"};
  std::vector<std::pair<std::string, std::string>> covers{{"bottom", "L"}, {"L", "top"}};
  std::string prev = "bottom";
  for (int i = 1; i < m; ++i) {
    const std::string r = "R" + std::to_string(i);
    labels.push_back(r);
    covers.emplace_back(prev, r);
    prev = r;
  }
  covers.emplace_back(prev, "top");
  labels.push_back("top");
  return std::make_shared<const Lattice>(build_lattice(labels, covers));
}

inline LatticePtr gen_boolean(int k) {
  if (k < 0 || k > 10) throw invalid_input("boolean lattice rank must be in 0..10");
  Lattice acc = chain_lattice(1);
  for (int i = 0; i < k; ++i) acc = product(acc, chain_lattice(2));
  return std::make_shared<const Lattice>(std::move(acc));
}

inline LatticePtr gen_chain_product(int a, int b) {
  if (a < 1 || b < 1) throw invalid_input("chain lengths must be positive");
  if (static_cast<std::size_t>(a) * static_cast<std::size_t>(b) > kMaxLatticeSize) throw guardrail_exceeded("chain product too large");
  return std::make_shared<const Lattice>(product(chain_lattice(a), chain_lattice(b)));
}

}  // namespace serrelab
