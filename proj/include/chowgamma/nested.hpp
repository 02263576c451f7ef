#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "chowgamma/built_matroid.hpp"

namespace chowgamma {

bool is_nested(const BuiltMatroid& bm, std::span<const Flat> s);
/// Assuming s is nested and v is not in s: is s + v nested?
bool is_nested_with(const GeomLattice& l, const BuildingSet& bset, std::span<const Flat> s, Flat v);

/// A nested set with its forest structure. Elements are kept in lattice order.
class NestedSet {
 public:
  NestedSet() = default;
  /// Builds parents and local bottoms; nestedness is the caller's responsibility.
  static NestedSet from_elements(const GeomLattice& l, std::vector<Flat> elements);

  const std::vector<Flat>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  bool contains(Flat f) const;
  int index_of(Flat f) const;

  /// Index of min S_{>G}, or -1 when nothing in S lies above.
  int parent(std::size_t i) const { return parent_[i]; }
  /// J^G = join of S_{<G}.
  Flat jbottom(std::size_t i) const { return jbottom_[i]; }
  /// Join of the members strictly below an arbitrary flat g.
  Flat bottom_below(const GeomLattice& l, Flat g) const;
  std::vector<std::size_t> children(std::size_t i) const;
  bool is_minimal(std::size_t i) const;

  friend bool operator==(const NestedSet& a, const NestedSet& b) { return a.elements_ == b.elements_; }
  friend bool operator<(const NestedSet& a, const NestedSet& b) { return a.elements_ < b.elements_; }

 private:
  std::vector<Flat> elements_;
  std::vector<int> parent_;
  std::vector<Flat> jbottom_;
};

NestedSet make_nested(const BuiltMatroid& bm, std::vector<Flat> elements);

enum class ComplexVariant { Cone, Reduced };

struct SimplicialComplex {
  std::vector<Flat> vertices;
  std::vector<std::vector<int>> faces;  // sorted index lists, lexicographically sorted, with the empty face

  bool contains(const std::vector<int>& face) const;
  void normalize();
};

SimplicialComplex nested_complex(const BuiltMatroid& bm, ComplexVariant variant);

/// Facets of N by descending through rank-one local intervals. Irreducible inputs only.
std::vector<NestedSet> maximal_nested_sets(const BuiltMatroid& bm);
/// Facets by filtering all nested subsets; small instances only.
std::vector<NestedSet> maximal_nested_sets_brute_force(const BuiltMatroid& bm);

Flat new_factor(const BuiltMatroid& bm, Flat g, Flat f);

struct LocalInterval {
  Flat bottom;
  Flat top;
  std::vector<Flat> bset;  // in the coordinates of the parent lattice
  BuiltMatroid built;      // relabeled onto top - bottom

  Flat to_parent(Flat local) const { return Flat{bottom.bits | expand(local.bits, top.bits & ~bottom.bits)}; }
  Flat from_parent(Flat f) const { return Flat{squeeze(f.bits & ~bottom.bits, top.bits & ~bottom.bits)}; }
  int rank() const { return built.rank(); }
};

LocalInterval local_interval(const BuiltMatroid& bm, Flat bottom, Flat top);
/// Tops are S together with the maximal elements of the building set.
std::vector<Flat> link_tops(const BuiltMatroid& bm, const NestedSet& s);
std::vector<LocalInterval> link_decomposition(const BuiltMatroid& bm, const NestedSet& s);

/// locals are keyed by the tops of link_tops(s) and given in parent coordinates.
NestedSet compose(const BuiltMatroid& bm, const NestedSet& s, const std::map<Flat, std::vector<Flat>>& locals);
NestedSet completion(const BuiltMatroid& bm, const NestedSet& s);

int lambda_label(const BuiltMatroid& bm, const NestedSet& s, Flat g);

struct DescentInfo {
  std::vector<Flat> descents;
  int des = 0;
  bool has_bottom_descent = false;
  bool has_double_descent = false;
  bool stable() const { return !has_bottom_descent && !has_double_descent; }
};

DescentInfo descent_set(const BuiltMatroid& bm, const NestedSet& s);
std::vector<NestedSet> stable_maximal_nested_sets(const BuiltMatroid& bm);

struct GammaComplex {
  SimplicialComplex complex;
  bool complete = false;
  bool downward_closed = true;
  std::vector<std::vector<int>> closure_violations;
  std::vector<int> unused_vertices;
  std::size_t stable_facets = 0;
};

GammaComplex gamma_complex(const BuiltMatroid& bm);

/// Coloring by floor(rank / 2). Gamma complexes need not be pure, so purity is reported on its own.
struct BalanceReport {
  bool proper_coloring = true;
  bool pure = true;
  bool balanced() const { return proper_coloring; }
};
BalanceReport balanced_check(const BuiltMatroid& bm, const SimplicialComplex& c);

struct ComplexStats {
  std::vector<std::int64_t> f;
  std::vector<std::int64_t> h;
  bool flag = true;
  int dim = -1;
};
ComplexStats complex_stats(const SimplicialComplex& c);

}  // namespace chowgamma
