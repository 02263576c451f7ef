#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "chowgamma/lattice.hpp"

namespace chowgamma {

/// A set of nonzero flats; only produced by validation or by operations that preserve the axioms.
class BuildingSet {
 public:
  BuildingSet() = default;
  /// No checks: callers guarantee the building-set axioms.
  static BuildingSet trusted(const GeomLattice& l, std::vector<Flat> elements);

  /// Lattice order (rank, then bit pattern).
  const std::vector<Flat>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool contains(Flat f) const;

  BuildingSet without(const GeomLattice& l, Flat f) const;
  BuildingSet with(const GeomLattice& l, Flat f) const;
  bool subset_of(const BuildingSet& other) const;

  friend bool operator==(const BuildingSet& a, const BuildingSet& b) { return a.elements_ == b.elements_; }

 private:
  std::vector<Flat> elements_;
  std::vector<Flat> by_bits_;
};

/// The characterization check, non-throwing.
bool is_building_set(const GeomLattice& l, const std::vector<Flat>& s);
/// The product-decomposition definition: every lower interval splits over its maximal members.
bool is_building_set_structural(const GeomLattice& l, const std::vector<Flat>& s);

/// Throws MissingIrreducible / JoinClosureViolation. With cross_check on lattices of at most
/// 2000 flats, the structural definition is evaluated too and must agree.
BuildingSet validate_building_set(const GeomLattice& l, std::vector<Flat> s, bool cross_check = true);

BuildingSet g_min(const GeomLattice& l);
BuildingSet g_max(const GeomLattice& l);

/// Maximal members of `set` below f.
std::vector<Flat> factors_in(std::span<const Flat> set, Flat f);

class BuiltMatroid {
 public:
  BuiltMatroid(std::shared_ptr<const GeomLattice> lattice, BuildingSet bset, GroundOrder order);
  BuiltMatroid(std::shared_ptr<const GeomLattice> lattice, BuildingSet bset);

  const GeomLattice& lattice() const { return *lattice_; }
  const std::shared_ptr<const GeomLattice>& lattice_ptr() const { return lattice_; }
  const BuildingSet& bset() const { return bset_; }
  const GroundOrder& order() const { return order_; }
  const std::vector<Flat>& maximal_elements() const { return maximal_; }

  int ground_size() const { return lattice_->ground_size(); }
  int rank() const { return lattice_->rank(); }
  bool is_irreducible() const { return maximal_.size() == 1 && maximal_.front() == lattice_->top(); }
  bool in_bset(Flat f) const { return bset_.contains(f); }
  bool is_maximal(Flat f) const;

  BuiltMatroid with_order(GroundOrder order) const;
  BuiltMatroid with_bset(BuildingSet bset) const;

 private:
  std::shared_ptr<const GeomLattice> lattice_;
  BuildingSet bset_;
  GroundOrder order_;
  std::vector<Flat> maximal_;
};

BuiltMatroid make_built(GeomLattice l, std::vector<Flat> bset);
BuiltMatroid make_built_min(GeomLattice l);
BuiltMatroid make_built_max(GeomLattice l);

std::vector<Flat> factors(const BuiltMatroid& bm, Flat f);

BuiltMatroid restrict(const BuiltMatroid& bm, Flat f);
BuiltMatroid contract(const BuiltMatroid& bm, Flat f);
/// Requires a simple matroid; elements above e shift down by one.
BuiltMatroid delete_element(const BuiltMatroid& bm, int e);
/// New element gets index n and is the maximum of the order.
BuiltMatroid extend(const BuiltMatroid& bm, const ModularCut& cut);
BuiltMatroid truncate(const BuiltMatroid& bm, const ModularCut& cut);

struct Simplification {
  BuiltMatroid built;
  std::vector<Flat> atoms;  // new element i stands for atoms[i]
};
/// Elements become atoms, ordered by the smallest original element of each atom.
Simplification simplify(const BuiltMatroid& bm);

/// True iff every minimal member of the cut lies in the building set.
bool is_g_compatible(const BuiltMatroid& bm, const ModularCut& cut);

std::vector<Flat> tl_chain(const BuiltMatroid& bm, Flat f, Flat g);

struct CompletenessViolation {
  Flat from;
  Flat to;
  Flat offending;
};

/// Sufficient criterion: the chain from the bottom to every member stays in the building set.
bool is_complete_fast(const BuiltMatroid& bm);
/// Full two-parameter definition for the stored order.
std::optional<CompletenessViolation> completeness_violation(const BuiltMatroid& bm);
bool is_complete(const BuiltMatroid& bm);
/// Lexicographically least order witnessing completeness, if any (n <= max_n).
std::optional<GroundOrder> find_complete_order(const BuiltMatroid& bm, int max_n = 8);

struct FlagReport {
  bool flag = true;
  std::vector<std::vector<Flat>> witnesses;  // minimal non-faces of size >= 3
};
FlagReport flag_report(const BuiltMatroid& bm, std::size_t max_witnesses = 64);
bool is_flag(const BuiltMatroid& bm);

struct Filtration {
  std::vector<BuildingSet> steps;  // steps.front() = small, steps.back() = big
  std::vector<Flat> added;         // added[k] turns steps[k] into steps[k+1]
  std::vector<bool> binary;
  std::size_t length() const { return added.size(); }
};

Filtration filtration(const GeomLattice& l, const BuildingSet& small, const BuildingSet& big);
/// Greedy removal of a maximal removable flat; requires a flag target.
Filtration binary_filtration(const BuiltMatroid& big, const BuildingSet& small);
/// Same greedy without the flag requirement; throws NoBinaryFiltration on a non-binary step.
Filtration greedy_binary_filtration(const GeomLattice& l, const BuildingSet& small, const BuildingSet& big);

bool is_removable(const BuiltMatroid& bm, Flat g);

}  // namespace chowgamma
