#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chowgamma/families.hpp"

namespace chowgamma {

struct CorpusInstance {
  std::string name;
  std::string matroid;  // uniform | boolean | partition | graphic
  std::string kind;     // min | max | chordal | random
  BuiltMatroid built;
  bool complete = false;  // with respect to built.order()
};

struct CorpusOptions {
  int max_order_search = 7;  // ground sizes up to this get an exhaustive complete-order search
  int random_sets = 20;
  std::uint64_t seed = 20240607;
  int chordal_max_n = 4;
};

/// Uniform, Boolean, partition and connected graphic matroids crossed with g_min, g_max,
/// chordal sets and random building sets. Deterministic for fixed options.
std::vector<CorpusInstance> build_corpus(const CorpusOptions& options = {});

/// Connected simple graphs on exactly v vertices, one per isomorphism class, edges sorted.
std::vector<std::vector<std::pair<int, int>>> connected_graphs(int v);

/// Smallest building set containing g_min and `extra`: closes under joins of meeting pairs.
BuildingSet building_closure(const GeomLattice& l, const std::vector<Flat>& extra);

}  // namespace chowgamma
