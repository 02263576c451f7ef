#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "chowgamma/error.hpp"
#include "chowgamma/flat.hpp"

namespace chowgamma {

/// Total order on the ground set {0..n-1}: sequence()[k] is the k-th smallest element.
class GroundOrder {
 public:
  GroundOrder() = default;
  explicit GroundOrder(int n);
  explicit GroundOrder(std::vector<int> sequence);

  int size() const { return static_cast<int>(sequence_.size()); }
  int position(int e) const { return position_[e]; }
  int at(int pos) const { return sequence_[pos]; }
  bool less(int a, int b) const { return position_[a] < position_[b]; }
  const std::vector<int>& sequence() const { return sequence_; }

  /// Smallest / largest element of m under the order, -1 when m is empty.
  int min_of(Mask m) const;
  int max_of(Mask m) const;
  std::vector<int> sorted(Mask m) const;

  /// Order on the elements of `keep`, relabeled 0..|keep|-1 by increasing index.
  GroundOrder induced(Mask keep) const;
  /// Adds element n as the new maximum.
  GroundOrder with_new_max() const;

  friend bool operator==(const GroundOrder&, const GroundOrder&) = default;

 private:
  std::vector<int> sequence_;
  std::vector<int> position_;
};

/// A matroid given by a rank oracle on subsets of {0..n-1}.
class Matroid {
 public:
  using RankFn = std::function<int(Mask)>;

  Matroid(int n, RankFn rank, std::string name = {});
  static Matroid from_rank_table(int n, std::vector<int> table, std::string name = {});

  int size() const { return n_; }
  Mask ground() const { return low_bits(n_); }
  int rank(Mask s) const { return rank_(s); }
  int rank() const { return rank_(ground()); }
  Mask closure(Mask s) const;
  bool is_loopless() const;
  const std::string& name() const { return name_; }

  /// Checks the rank axioms; exhaustive for n <= max_exhaustive, sampled otherwise.
  void validate(int max_exhaustive = 16) const;

 private:
  int n_;
  RankFn rank_;
  std::string name_;
};

Matroid dual(const Matroid& m);
Flat closure(const Matroid& m, Mask s);

/// Fully materialized lattice of flats of a loopless matroid.
class GeomLattice {
 public:
  static GeomLattice from_matroid(const Matroid& m);
  /// Validates the flat axioms (intersection closed, covers partition the complement).
  static GeomLattice from_flats(int n, std::vector<Flat> flats);
  /// Trusted constructor: flats with their ranks, no checks beyond bookkeeping.
  static GeomLattice from_ranked_flats(int n, std::vector<std::pair<Flat, int>> flats);

  int ground_size() const { return n_; }
  Mask ground() const { return low_bits(n_); }
  int rank() const { return top_rank_; }
  std::size_t size() const { return flats_.size(); }

  /// Sorted by rank, then by bit pattern.
  const std::vector<Flat>& flats() const { return flats_; }
  std::span<const Flat> flats_of_rank(int k) const;
  std::span<const Flat> atoms() const { return flats_of_rank(1); }
  std::span<const Flat> coatoms() const { return flats_of_rank(top_rank_ - 1); }

  Flat bottom() const { return flats_.front(); }
  Flat top() const { return flats_.back(); }

  int index_of(Flat f) const;
  bool is_flat(Flat f) const { return index_of(f) >= 0; }
  int rank(Flat f) const;
  int rank_at(int index) const { return ranks_[index]; }
  int rank_of_set(Mask s) const { return rank(closure(s)); }

  Flat closure(Mask s) const;
  Flat join(Flat f, Flat g) const;
  Flat meet(Flat f, Flat g) const;

  bool is_simple() const;
  bool is_irreducible(Flat f) const;

 private:
  GeomLattice() = default;
  void index();

  struct IrreducibleCache;

  int n_ = 0;
  int top_rank_ = 0;
  std::vector<Flat> flats_;
  std::vector<int> ranks_;
  std::vector<std::size_t> rank_start_;
  std::unordered_map<Mask, int> index_;
  std::shared_ptr<IrreducibleCache> irreducible_;
};

GeomLattice lattice_of_flats(const Matroid& m);
Flat join(const GeomLattice& l, Flat f, Flat g);
Flat meet(const GeomLattice& l, Flat f, Flat g);

/// Rank oracle view of a lattice.
Matroid matroid_of(std::shared_ptr<const GeomLattice> l);

/// Finest product decomposition [0,f] = prod [0,F_i], sorted by bit pattern.
std::vector<Flat> interval_factors(const GeomLattice& l, Flat f);

bool is_modular_pair(const GeomLattice& l, Flat f, Flat g);

/// True iff the join map prod [0,parts_i] -> [0,f] is a poset isomorphism.
bool join_map_is_isomorphism(const GeomLattice& l, std::span<const Flat> parts, Flat f);

struct ModularCut {
  std::vector<Flat> members;  // lattice order
  bool proper = true;
  bool nonempty = false;
  bool atom_free = true;

  bool contains(Flat f) const;
  std::vector<Flat> minimal() const;
};

ModularCut validate_modular_cut(const GeomLattice& l, std::vector<Flat> cut);

/// Lattice of M\e; elements above e shift down by one.
GeomLattice delete_element(const GeomLattice& l, int e);

/// { F in L(M\e) : e in cl_M(F) }, expressed in the coordinates of delete_element(l, e).
ModularCut deletion_modular_cut(const GeomLattice& l, int e);

/// Every modular cut of l, by closure search. With atom_free_only, cuts holding an atom are skipped.
std::vector<ModularCut> all_modular_cuts(const GeomLattice& l, bool atom_free_only);

}  // namespace chowgamma
