#pragma once

#include <string>
#include <utility>
#include <vector>

#include "chowgamma/chow.hpp"

namespace chowgamma {

Matroid make_uniform(int r, int n);
Matroid make_boolean(int n);
/// Cycle matroid of a graph on `vertices` vertices; edges become elements in the given order.
Matroid make_graphic(int vertices, const std::vector<std::pair<int, int>>& edges);
/// Cycle matroid of K_n with edges ordered lexicographically, so its lattice is the partition lattice.
Matroid make_partition(int n);
/// Element index of the edge {i, j} (0-based, i < j) in make_partition(n).
int partition_edge(int n, int i, int j);

/// Dual of the free extension of the dual; the new element has index n.
Matroid free_coextension(const Matroid& m);
/// Free coextension with the building set {F + e : F a flat} plus the atoms; e comes first in the order.
BuiltMatroid augmented_built_matroid(const Matroid& m);

/// Prefix-closed building sets on the Boolean lattice of rank n, in a deterministic order.
std::vector<BuildingSet> chordal_building_sets(const GeomLattice& boolean, int n);

// ---------------------------------------------------------------- Binary trees

struct LabeledBinaryTree {
  struct Node {
    int left = -1, right = -1;  // both -1 for a leaf
    int parent = -1;
    int leaf = -1;              // label 1..n for leaves
    Mask leaves = 0;            // bit (label - 1)
    int min_leaf = 0;
  };
  std::vector<Node> nodes;
  int root = -1;

  bool is_leaf(int v) const { return nodes[v].left < 0; }
  /// max(min Leaf(left), min Leaf(right)) for internal vertices.
  int label(int v) const;
  std::vector<int> internal_vertices() const;
  std::string to_string() const;
};

/// All (2n-3)!! trees, by leaf insertion.
std::vector<LabeledBinaryTree> binary_trees(int n);

enum class TreeDescentRule {
  Literal,          // double descent: both children are descents (a leaf never is)
  NestedConsistent  // double descent: every internal child is a descent
};

struct TreeDescents {
  std::vector<int> descents;
  bool has_bottom_descent = false;
  bool has_double_descent = false;
  bool stable() const { return !has_bottom_descent && !has_double_descent; }
};

TreeDescents tree_descents(const LabeledBinaryTree& t, TreeDescentRule rule);
std::vector<LabeledBinaryTree> stable_trees(int n, TreeDescentRule rule);
Polynomial m0n_gamma(int n, TreeDescentRule rule);

/// Leaf sets of the non-root internal vertices as flats of make_partition(n).
NestedSet tree_nested_set(const GeomLattice& partition_lattice, int n, const LabeledBinaryTree& t);

}  // namespace chowgamma
