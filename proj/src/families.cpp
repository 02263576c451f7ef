#include "chowgamma/families.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace chowgamma {

Matroid make_uniform(int r, int n) {
  if (n < 0 || n > 64 || r < 0 || r > n || (n > 0 && r < 1))
    throw Error(ErrorKind::BadParameters, "uniform matroid needs 1 <= r <= n <= 64");
  return Matroid(n, [r](Mask s) { return std::min(popcount(s), r); },
                 "U(" + std::to_string(r) + "," + std::to_string(n) + ")");
}

Matroid make_boolean(int n) {
  Matroid u = make_uniform(n, n);
  return Matroid(n, [u](Mask s) { return u.rank(s); }, "B" + std::to_string(n));
}

Matroid make_graphic(int vertices, const std::vector<std::pair<int, int>>& edges) {
  if (vertices < 1 || edges.size() > 64) throw Error(ErrorKind::BadParameters, "graph too large or empty");
  for (auto [u, v] : edges)
    if (u < 0 || v < 0 || u >= vertices || v >= vertices || u == v)
      throw Error(ErrorKind::BadParameters, "edge (" + std::to_string(u) + "," + std::to_string(v) + ") is invalid");
  return Matroid(static_cast<int>(edges.size()), [vertices, edges](Mask s) {
    std::vector<int> parent(vertices);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    int rank = 0;
    for_each_element(s, [&](int e) {
      int a = find(edges[e].first), b = find(edges[e].second);
      if (a != b) {
        parent[a] = b;
        ++rank;
      }
    });
    return rank;
  });
}

Matroid make_partition(int n) {
  if (n < 1 || n * (n - 1) / 2 > 64) throw Error(ErrorKind::BadParameters, "partition lattice needs 1 <= n <= 11");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  if (edges.empty()) return Matroid(0, [](Mask) { return 0; }, "Pi1");
  Matroid g = make_graphic(n, edges);
  return Matroid(g.size(), [g](Mask s) { return g.rank(s); }, "Pi" + std::to_string(n));
}

int partition_edge(int n, int i, int j) {
  if (i > j) std::swap(i, j);
  return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

Matroid free_coextension(const Matroid& m) {
  const int n = m.size();
  if (n >= 64) throw Error(ErrorKind::BadParameters, "ground set too large for a coextension");
  const Mask ground = m.ground();
  const int r = m.rank();
  // Dual rank, then the free extension of the dual, then dualize back.
  auto dual_rank = [m, ground, r](Mask s) { return popcount(s) - r + m.rank(ground & ~s); };
  const int dual_total = n - r;
  auto ext_rank = [dual_rank, dual_total, n](Mask s) {
    if (!(s & bit(n))) return dual_rank(s);
    return std::min(dual_rank(s & ~bit(n)) + 1, dual_total);
  };
  const Mask big = low_bits(n + 1);
  return Matroid(n + 1, [ext_rank, big, dual_total](Mask s) { return popcount(s) - dual_total + ext_rank(big & ~s); },
                 m.name().empty() ? std::string() : m.name() + "+coext");
}

BuiltMatroid augmented_built_matroid(const Matroid& m) {
  const int n = m.size();
  GeomLattice base = lattice_of_flats(m);
  auto lp = std::make_shared<const GeomLattice>(lattice_of_flats(free_coextension(m)));
  std::vector<Flat> g(lp->atoms().begin(), lp->atoms().end());
  for (Flat f : base.flats()) {
    Flat fe{f.bits | bit(n)};
    if (!lp->is_flat(fe)) throw Error(ErrorKind::Internal, to_string(fe) + " is not a flat of the coextension", {fe});
    if (std::find(g.begin(), g.end(), fe) == g.end()) g.push_back(fe);
  }
  BuildingSet b = validate_building_set(*lp, std::move(g));
  std::vector<int> seq{n};
  for (int i = 0; i < n; ++i) seq.push_back(i);
  return BuiltMatroid(lp, std::move(b), GroundOrder(std::move(seq)));
}

std::vector<BuildingSet> chordal_building_sets(const GeomLattice& boolean, int n) {
  if (boolean.ground_size() != n || boolean.size() != (std::size_t{1} << n))
    throw Error(ErrorKind::BadParameters, "expected the Boolean lattice of rank " + std::to_string(n));
  std::vector<Mask> candidates;
  for (Mask s = 1; s < (Mask{1} << n); ++s)
    if (popcount(s) >= 2) candidates.push_back(s);
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](Mask a, Mask b) { return popcount(a) != popcount(b) ? popcount(a) < popcount(b) : a < b; });
  std::vector<char> in(Mask{1} << n, 0);
  for (int i = 0; i < n; ++i) in[bit(i)] = 1;
  std::vector<BuildingSet> out;
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == candidates.size()) {
      std::vector<Flat> g;
      for (Mask s = 1; s < (Mask{1} << n); ++s)
        if (in[s]) g.push_back(Flat{s});
      if (is_building_set(boolean, g)) out.push_back(validate_building_set(boolean, std::move(g), false));
      return;
    }
    const Mask s = candidates[k];
    const Mask prefix = s & ~bit(63 - __builtin_clzll(s));
    rec(k + 1);
    if (in[prefix]) {
      in[s] = 1;
      rec(k + 1);
      in[s] = 0;
    }
  };
  rec(0);
  return out;
}

// ---------------------------------------------------------------- Binary trees

int LabeledBinaryTree::label(int v) const {
  const Node& x = nodes[v];
  return std::max(nodes[x.left].min_leaf, nodes[x.right].min_leaf);
}

std::vector<int> LabeledBinaryTree::internal_vertices() const {
  std::vector<int> out;
  for (int v = 0; v < static_cast<int>(nodes.size()); ++v)
    if (!is_leaf(v)) out.push_back(v);
  return out;
}

std::string LabeledBinaryTree::to_string() const {
  std::function<std::string(int)> rec = [&](int v) -> std::string {
    if (is_leaf(v)) return std::to_string(nodes[v].leaf);
    int a = nodes[v].left, b = nodes[v].right;
    if (nodes[a].min_leaf > nodes[b].min_leaf) std::swap(a, b);
    return "(" + rec(a) + "," + rec(b) + ")";
  };
  return root < 0 ? std::string() : rec(root);
}

namespace {

void refresh(LabeledBinaryTree& t, int v) {
  auto& x = t.nodes[v];
  if (x.left < 0) {
    x.leaves = bit(x.leaf - 1);
    x.min_leaf = x.leaf;
    return;
  }
  refresh(t, x.left);
  refresh(t, x.right);
  x.leaves = t.nodes[x.left].leaves | t.nodes[x.right].leaves;
  x.min_leaf = std::min(t.nodes[x.left].min_leaf, t.nodes[x.right].min_leaf);
}

}  // namespace

std::vector<LabeledBinaryTree> binary_trees(int n) {
  if (n < 1 || n > 12) throw Error(ErrorKind::BadParameters, "tree enumeration needs 1 <= n <= 12");
  LabeledBinaryTree seed;
  seed.nodes.push_back({-1, -1, -1, 1, bit(0), 1});
  seed.root = 0;
  std::vector<LabeledBinaryTree> level{seed};
  for (int k = 2; k <= n; ++k) {
    std::vector<LabeledBinaryTree> next;
    for (const auto& t : level) {
      // Graft leaf k onto the edge above every vertex (above the root included).
      for (int v = 0; v < static_cast<int>(t.nodes.size()); ++v) {
        LabeledBinaryTree u = t;
        const int leaf = static_cast<int>(u.nodes.size());
        u.nodes.push_back({-1, -1, -1, k, 0, 0});
        const int mid = static_cast<int>(u.nodes.size());
        const int p = u.nodes[v].parent;
        u.nodes.push_back({v, leaf, p, -1, 0, 0});
        u.nodes[v].parent = mid;
        u.nodes[leaf].parent = mid;
        if (p < 0) {
          u.root = mid;
        } else if (u.nodes[p].left == v) {
          u.nodes[p].left = mid;
        } else {
          u.nodes[p].right = mid;
        }
        refresh(u, u.root);
        next.push_back(std::move(u));
      }
    }
    level = std::move(next);
  }
  return level;
}

TreeDescents tree_descents(const LabeledBinaryTree& t, TreeDescentRule rule) {
  const int size = static_cast<int>(t.nodes.size());
  std::vector<char> desc(size, 0);
  for (int v : t.internal_vertices()) {
    const int p = t.nodes[v].parent;
    desc[v] = p >= 0 && t.label(v) > t.label(p);
  }
  TreeDescents d;
  for (int v : t.internal_vertices()) {
    if (!desc[v]) continue;
    d.descents.push_back(v);
    const int a = t.nodes[v].left, b = t.nodes[v].right;
    if (t.is_leaf(a) && t.is_leaf(b)) {
      d.has_bottom_descent = true;
    } else if (rule == TreeDescentRule::Literal) {
      if (desc[a] && desc[b]) d.has_double_descent = true;
    } else {
      if ((t.is_leaf(a) || desc[a]) && (t.is_leaf(b) || desc[b])) d.has_double_descent = true;
    }
  }
  return d;
}

std::vector<LabeledBinaryTree> stable_trees(int n, TreeDescentRule rule) {
  std::vector<LabeledBinaryTree> out;
  for (auto& t : binary_trees(n))
    if (tree_descents(t, rule).stable()) out.push_back(std::move(t));
  return out;
}

Polynomial m0n_gamma(int n, TreeDescentRule rule) {
  Polynomial g;
  for (const auto& t : stable_trees(n, rule))
    g += Polynomial::monomial(static_cast<int>(tree_descents(t, rule).descents.size()));
  return g;
}

NestedSet tree_nested_set(const GeomLattice& partition_lattice, int n, const LabeledBinaryTree& t) {
  std::vector<Flat> els;
  for (int v : t.internal_vertices()) {
    if (v == t.root) continue;
    Mask edges = 0;
    std::vector<int> block = elements_of(t.nodes[v].leaves);
    for (std::size_t a = 0; a < block.size(); ++a)
      for (std::size_t b = a + 1; b < block.size(); ++b) edges |= bit(partition_edge(n, block[a], block[b]));
    els.push_back(Flat{edges});
  }
  return NestedSet::from_elements(partition_lattice, std::move(els));
}

}  // namespace chowgamma
