#include "chowgamma/built_matroid.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_set>

#include "chowgamma/nested.hpp"

namespace chowgamma {

namespace {

void sort_lattice_order(const GeomLattice& l, std::vector<Flat>& v) {
  std::sort(v.begin(), v.end(), [&](Flat a, Flat b) { return l.index_of(a) < l.index_of(b); });
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::vector<Flat> maximal_of(const std::vector<Flat>& v) {
  std::vector<Flat> out;
  for (Flat f : v) {
    bool max = true;
    for (Flat g : v)
      if (f.strict_subset_of(g)) { max = false; break; }
    if (max) out.push_back(f);
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------- BuildingSet

BuildingSet BuildingSet::trusted(const GeomLattice& l, std::vector<Flat> elements) {
  BuildingSet b;
  sort_lattice_order(l, elements);
  b.by_bits_ = elements;
  std::sort(b.by_bits_.begin(), b.by_bits_.end());
  b.elements_ = std::move(elements);
  return b;
}

bool BuildingSet::contains(Flat f) const { return std::binary_search(by_bits_.begin(), by_bits_.end(), f); }

BuildingSet BuildingSet::without(const GeomLattice& l, Flat f) const {
  std::vector<Flat> v;
  for (Flat g : elements_)
    if (g != f) v.push_back(g);
  return trusted(l, std::move(v));
}

BuildingSet BuildingSet::with(const GeomLattice& l, Flat f) const {
  std::vector<Flat> v = elements_;
  v.push_back(f);
  return trusted(l, std::move(v));
}

bool BuildingSet::subset_of(const BuildingSet& other) const {
  return std::all_of(elements_.begin(), elements_.end(), [&](Flat f) { return other.contains(f); });
}

std::vector<Flat> factors_in(std::span<const Flat> set, Flat f) {
  std::vector<Flat> below;
  for (Flat g : set)
    if (g.subset_of(f)) below.push_back(g);
  return maximal_of(below);
}

namespace {

// Returns an error description instead of throwing so both checks can share it.
std::optional<Error> characterization_failure(const GeomLattice& l, const std::vector<Flat>& s) {
  std::unordered_set<Flat, FlatHash> members(s.begin(), s.end());
  for (Flat f : s) {
    if (!l.is_flat(f)) return Error(ErrorKind::NotAFlat, to_string(f) + " is not a flat", {f});
    if (f == l.bottom()) return Error(ErrorKind::InvalidInput, "the bottom flat cannot be in a building set", {f});
  }
  for (Flat f : l.flats())
    if (f != l.bottom() && !members.count(f) && l.is_irreducible(f))
      return Error(ErrorKind::MissingIrreducible, "irreducible flat " + to_string(f) + " is missing", {f});
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (s[i].meets(s[j]) && !members.count(l.closure(s[i].bits | s[j].bits)))
        return Error(ErrorKind::JoinClosureViolation,
                     "join of " + to_string(s[i]) + " and " + to_string(s[j]) + " is missing", {s[i], s[j]});
  return std::nullopt;
}

}  // namespace

bool is_building_set(const GeomLattice& l, const std::vector<Flat>& s) {
  return !characterization_failure(l, s).has_value();
}

bool is_building_set_structural(const GeomLattice& l, const std::vector<Flat>& s) {
  for (Flat f : s)
    if (!l.is_flat(f) || f == l.bottom()) return false;
  for (Flat f : l.flats()) {
    if (f == l.bottom()) continue;
    std::vector<Flat> parts = factors_in(s, f);
    if (parts.empty() || !join_map_is_isomorphism(l, parts, f)) return false;
  }
  return true;
}

BuildingSet validate_building_set(const GeomLattice& l, std::vector<Flat> s, bool cross_check) {
  sort_lattice_order(l, s);
  auto failure = characterization_failure(l, s);
  if (cross_check && l.size() <= 2000) {
    bool structural = is_building_set_structural(l, s);
    if (structural == failure.has_value())
      throw Error(ErrorKind::Internal, "building-set characterization disagrees with the product definition");
  }
  if (failure) throw *failure;
  return BuildingSet::trusted(l, std::move(s));
}

BuildingSet g_min(const GeomLattice& l) {
  std::vector<Flat> v;
  for (Flat f : l.flats())
    if (f != l.bottom() && l.is_irreducible(f)) v.push_back(f);
  return BuildingSet::trusted(l, std::move(v));
}

BuildingSet g_max(const GeomLattice& l) {
  std::vector<Flat> v(l.flats().begin() + 1, l.flats().end());
  return BuildingSet::trusted(l, std::move(v));
}

// ---------------------------------------------------------------- BuiltMatroid

BuiltMatroid::BuiltMatroid(std::shared_ptr<const GeomLattice> lattice, BuildingSet bset, GroundOrder order)
    : lattice_(std::move(lattice)), bset_(std::move(bset)), order_(std::move(order)) {
  if (order_.size() != lattice_->ground_size())
    throw Error(ErrorKind::InvalidInput, "order size does not match the ground set");
  maximal_ = maximal_of(bset_.elements());
}

BuiltMatroid::BuiltMatroid(std::shared_ptr<const GeomLattice> lattice, BuildingSet bset)
    : BuiltMatroid(lattice, std::move(bset), GroundOrder(lattice->ground_size())) {}

bool BuiltMatroid::is_maximal(Flat f) const { return std::find(maximal_.begin(), maximal_.end(), f) != maximal_.end(); }

BuiltMatroid BuiltMatroid::with_order(GroundOrder order) const { return BuiltMatroid(lattice_, bset_, std::move(order)); }
BuiltMatroid BuiltMatroid::with_bset(BuildingSet bset) const { return BuiltMatroid(lattice_, std::move(bset), order_); }

BuiltMatroid make_built(GeomLattice l, std::vector<Flat> bset) {
  auto lp = std::make_shared<const GeomLattice>(std::move(l));
  BuildingSet b = validate_building_set(*lp, std::move(bset));
  return BuiltMatroid(lp, std::move(b));
}

BuiltMatroid make_built_min(GeomLattice l) {
  auto lp = std::make_shared<const GeomLattice>(std::move(l));
  return BuiltMatroid(lp, g_min(*lp));
}

BuiltMatroid make_built_max(GeomLattice l) {
  auto lp = std::make_shared<const GeomLattice>(std::move(l));
  return BuiltMatroid(lp, g_max(*lp));
}

std::vector<Flat> factors(const BuiltMatroid& bm, Flat f) { return factors_in(bm.bset().elements(), f); }

// ---------------------------------------------------------------- Operations

BuiltMatroid restrict(const BuiltMatroid& bm, Flat f) {
  const GeomLattice& l = bm.lattice();
  if (!l.is_flat(f)) throw Error(ErrorKind::NotAFlat, to_string(f) + " is not a flat", {f});
  std::vector<std::pair<Flat, int>> flats;
  for (std::size_t i = 0; i < l.size(); ++i) {
    Flat g = l.flats()[i];
    if (g.subset_of(f)) flats.emplace_back(Flat{squeeze(g.bits, f.bits)}, l.rank_at(static_cast<int>(i)));
  }
  auto lp = std::make_shared<const GeomLattice>(GeomLattice::from_ranked_flats(f.size(), std::move(flats)));
  std::vector<Flat> b;
  for (Flat g : bm.bset().elements())
    if (g.subset_of(f)) b.push_back(Flat{squeeze(g.bits, f.bits)});
  return BuiltMatroid(lp, BuildingSet::trusted(*lp, std::move(b)), bm.order().induced(f.bits));
}

BuiltMatroid contract(const BuiltMatroid& bm, Flat f) {
  const GeomLattice& l = bm.lattice();
  const int rf = l.rank(f);
  const Mask keep = l.ground() & ~f.bits;
  std::vector<std::pair<Flat, int>> flats;
  for (std::size_t i = 0; i < l.size(); ++i) {
    Flat g = l.flats()[i];
    if (f.subset_of(g)) flats.emplace_back(Flat{squeeze(g.bits, keep)}, l.rank_at(static_cast<int>(i)) - rf);
  }
  auto lp = std::make_shared<const GeomLattice>(GeomLattice::from_ranked_flats(popcount(keep), std::move(flats)));
  std::vector<Flat> b;
  for (Flat g : bm.bset().elements()) {
    Flat j = l.closure(f.bits | g.bits);
    if (j != f) b.push_back(Flat{squeeze(j.bits, keep)});
  }
  return BuiltMatroid(lp, BuildingSet::trusted(*lp, std::move(b)), bm.order().induced(keep));
}

BuiltMatroid delete_element(const BuiltMatroid& bm, int e) {
  const GeomLattice& l = bm.lattice();
  if (!l.is_simple()) throw Error(ErrorKind::NotSimple, "element deletion needs a simple matroid");
  const Mask keep = l.ground() & ~bit(e);
  auto lp = std::make_shared<const GeomLattice>(delete_element(l, e));
  std::vector<Flat> b;
  for (Flat s : lp->flats()) {
    if (s.empty()) continue;
    if (bm.in_bset(l.closure(expand(s.bits, keep)))) b.push_back(s);
  }
  return BuiltMatroid(lp, BuildingSet::trusted(*lp, std::move(b)), bm.order().induced(keep));
}

bool is_g_compatible(const BuiltMatroid& bm, const ModularCut& cut) {
  for (Flat f : cut.minimal())
    if (!bm.in_bset(f)) return false;
  return true;
}

namespace {

void require_compatible(const BuiltMatroid& bm, const ModularCut& cut) {
  for (Flat f : cut.minimal())
    if (!bm.in_bset(f))
      throw Error(ErrorKind::NotGCompatible, "minimal cut member " + to_string(f) + " is not in the building set", {f});
}

}  // namespace

BuiltMatroid extend(const BuiltMatroid& bm, const ModularCut& cut) {
  const GeomLattice& l = bm.lattice();
  if (cut.members.empty() || cut.contains(l.bottom()))
    throw Error(ErrorKind::ImproperCut, "extension needs a proper nonempty modular cut");
  require_compatible(bm, cut);
  const int n = l.ground_size();
  if (n + 1 > kMaxGround) throw Error(ErrorKind::TooLarge, "ground set would exceed 64 elements");
  const Mask e = bit(n);
  auto in_cut = [&](Flat f) { return cut.contains(f); };
  // rank of the extension, from its definition
  auto rk = [&](Mask s) {
    Mask base = s & ~e;
    Flat c = l.closure(base);
    int r = l.rank(c);
    if (s & e) r += in_cut(c) ? 0 : 1;
    return r;
  };
  const Mask ground = l.ground() | e;
  std::vector<std::pair<Flat, int>> flats;
  auto consider = [&](Mask x) {
    const int rx = rk(x);
    Mask outside = ground & ~x;
    bool closed = true;
    for_each_element(outside, [&](int y) {
      if (closed && rk(x | bit(y)) == rx) closed = false;
    });
    if (closed) flats.emplace_back(Flat{x}, rx);
  };
  for (Flat f : l.flats()) {
    consider(f.bits);
    consider(f.bits | e);
  }
  auto lp = std::make_shared<const GeomLattice>(GeomLattice::from_ranked_flats(n + 1, std::move(flats)));
  std::vector<Flat> b;
  for (Flat g : bm.bset().elements()) b.push_back(in_cut(g) ? Flat{g.bits | e} : g);
  b.push_back(Flat{e});
  BuildingSet bs = validate_building_set(*lp, std::move(b), lp->size() <= 400);
  return BuiltMatroid(lp, std::move(bs), bm.order().with_new_max());
}

BuiltMatroid truncate(const BuiltMatroid& bm, const ModularCut& cut) {
  if (cut.members.empty()) return bm;
  const GeomLattice& l = bm.lattice();
  if (!cut.atom_free || cut.contains(l.bottom()))
    throw Error(ErrorKind::CutContainsAtom, "truncation needs an atom-free cut");
  require_compatible(bm, cut);
  std::vector<std::pair<Flat, int>> flats;
  for (std::size_t i = 0; i < l.size(); ++i) {
    Flat f = l.flats()[i];
    const int rf = l.rank_at(static_cast<int>(i));
    if (cut.contains(f)) {
      flats.emplace_back(f, rf - 1);
      continue;
    }
    bool collar = false;
    for (Flat g : cut.members)
      if (f.strict_subset_of(g) && l.rank(g) == rf + 1) { collar = true; break; }
    if (!collar) flats.emplace_back(f, rf);
  }
  auto lp = std::make_shared<const GeomLattice>(GeomLattice::from_ranked_flats(l.ground_size(), std::move(flats)));
  std::vector<Flat> b;
  for (Flat g : bm.bset().elements())
    if (lp->is_flat(g)) b.push_back(g);
  return BuiltMatroid(lp, BuildingSet::trusted(*lp, std::move(b)), bm.order());
}

Simplification simplify(const BuiltMatroid& bm) {
  const GeomLattice& l = bm.lattice();
  std::vector<Flat> atoms(l.atoms().begin(), l.atoms().end());
  const GroundOrder& ord = bm.order();
  std::sort(atoms.begin(), atoms.end(), [&](Flat a, Flat b) {
    return ord.position(ord.min_of(a.bits)) < ord.position(ord.min_of(b.bits));
  });
  auto relabel = [&](Flat g) {
    Mask m = 0;
    for (std::size_t i = 0; i < atoms.size(); ++i)
      if (atoms[i].subset_of(g)) m |= bit(static_cast<int>(i));
    return Flat{m};
  };
  std::vector<std::pair<Flat, int>> flats;
  for (std::size_t i = 0; i < l.size(); ++i) flats.emplace_back(relabel(l.flats()[i]), l.rank_at(static_cast<int>(i)));
  auto lp = std::make_shared<const GeomLattice>(
      GeomLattice::from_ranked_flats(static_cast<int>(atoms.size()), std::move(flats)));
  std::vector<Flat> b;
  for (Flat g : bm.bset().elements()) b.push_back(relabel(g));
  return {BuiltMatroid(lp, BuildingSet::trusted(*lp, std::move(b))), std::move(atoms)};
}

// ---------------------------------------------------------------- Chains and completeness

std::vector<Flat> tl_chain(const BuiltMatroid& bm, Flat f, Flat g) {
  if (!f.subset_of(g)) throw Error(ErrorKind::NotContained, "chain endpoints are not comparable", {f, g});
  const GeomLattice& l = bm.lattice();
  std::vector<Flat> chain{f};
  Flat cur = f;
  for (int e : bm.order().sorted(g.bits & ~f.bits)) {
    if (cur.contains(e)) continue;
    cur = l.closure(cur.bits | bit(e));
    chain.push_back(cur);
  }
  return chain;
}

bool is_complete_fast(const BuiltMatroid& bm) {
  const Flat bottom = bm.lattice().bottom();
  for (Flat g : bm.bset().elements())
    for (Flat x : tl_chain(bm, bottom, g))
      if (x != bottom && !bm.in_bset(x)) return false;
  return true;
}

std::optional<CompletenessViolation> completeness_violation(const BuiltMatroid& bm) {
  const GeomLattice& l = bm.lattice();
  for (Flat f : l.flats()) {
    std::unordered_set<Mask> localized;
    for (Flat h : bm.bset().elements()) localized.insert(l.closure(f.bits | h.bits).bits);
    for (Flat g : bm.bset().elements()) {
      if (!f.strict_subset_of(g)) continue;
      for (Flat x : tl_chain(bm, f, g))
        if (x != f && !localized.count(x.bits)) return CompletenessViolation{f, g, x};
    }
  }
  return std::nullopt;
}

bool is_complete(const BuiltMatroid& bm) {
  if (is_complete_fast(bm)) return true;
  return !completeness_violation(bm).has_value();
}

std::optional<GroundOrder> find_complete_order(const BuiltMatroid& bm, int max_n) {
  const int n = bm.ground_size();
  if (n > max_n) throw Error(ErrorKind::TooLarge, "order search is limited to small ground sets");
  std::vector<int> seq(n);
  std::iota(seq.begin(), seq.end(), 0);
  do {
    GroundOrder ord(seq);
    if (is_complete(bm.with_order(ord))) return ord;
  } while (std::next_permutation(seq.begin(), seq.end()));
  return std::nullopt;
}

// ---------------------------------------------------------------- Flagness

FlagReport flag_report(const BuiltMatroid& bm, std::size_t max_witnesses) {
  const GeomLattice& l = bm.lattice();
  std::vector<Flat> verts;
  for (Flat g : bm.bset().elements())
    if (!bm.is_maximal(g)) verts.push_back(g);
  const std::size_t v = verts.size();
  std::vector<std::vector<char>> adj(v, std::vector<char>(v, 0));
  for (std::size_t i = 0; i < v; ++i)
    for (std::size_t j = i + 1; j < v; ++j) {
      Flat a = verts[i], b = verts[j];
      bool comparable = a.subset_of(b) || b.subset_of(a);
      adj[i][j] = adj[j][i] = comparable || !bm.in_bset(l.closure(a.bits | b.bits));
    }
  FlagReport report;
  std::vector<Flat> clique;
  std::vector<std::size_t> idx;
  // Extend face-cliques in index order; a non-face clique whose facets are faces is a minimal non-face.
  auto dfs = [&](auto&& self, std::size_t start) -> void {
    for (std::size_t k = start; k < v; ++k) {
      if (report.witnesses.size() >= max_witnesses) return;
      bool ok = std::all_of(idx.begin(), idx.end(), [&](std::size_t i) { return adj[i][k]; });
      if (!ok) continue;
      if (is_nested_with(l, bm.bset(), clique, verts[k])) {
        clique.push_back(verts[k]);
        idx.push_back(k);
        self(self, k + 1);
        clique.pop_back();
        idx.pop_back();
      } else {
        std::vector<Flat> cand = clique;
        cand.push_back(verts[k]);
        bool minimal = true;
        for (std::size_t drop = 0; drop + 1 < cand.size() && minimal; ++drop) {
          std::vector<Flat> sub;
          for (std::size_t t = 0; t < cand.size(); ++t)
            if (t != drop) sub.push_back(cand[t]);
          minimal = is_nested(bm, sub);
        }
        if (minimal) {
          std::sort(cand.begin(), cand.end());
          report.witnesses.push_back(std::move(cand));
        }
        report.flag = false;
      }
    }
  };
  dfs(dfs, 0);
  return report;
}

bool is_flag(const BuiltMatroid& bm) { return flag_report(bm, 1).flag; }

// ---------------------------------------------------------------- Filtrations

namespace {

Filtration assemble(const GeomLattice& l, std::vector<BuildingSet> downward, std::vector<Flat> removed) {
  Filtration fl;
  fl.steps.assign(downward.rbegin(), downward.rend());
  fl.added.assign(removed.rbegin(), removed.rend());
  for (std::size_t k = 0; k < fl.added.size(); ++k)
    fl.binary.push_back(factors_in(fl.steps[k].elements(), fl.added[k]).size() == 2);
  (void)l;
  return fl;
}

void require_contained(const BuildingSet& small, const BuildingSet& big) {
  for (Flat f : small.elements())
    if (!big.contains(f)) throw Error(ErrorKind::NotContained, to_string(f) + " is not in the larger building set", {f});
}

}  // namespace

Filtration filtration(const GeomLattice& l, const BuildingSet& small, const BuildingSet& big) {
  require_contained(small, big);
  std::vector<BuildingSet> downward{big};
  std::vector<Flat> removed;
  BuildingSet cur = big;
  while (cur.size() > small.size()) {
    std::vector<Flat> extra;
    for (Flat f : cur.elements())
      if (!small.contains(f)) extra.push_back(f);
    std::vector<Flat> minimal;
    for (Flat f : extra)
      if (std::none_of(extra.begin(), extra.end(), [&](Flat g) { return g.strict_subset_of(f); })) minimal.push_back(f);
    std::sort(minimal.begin(), minimal.end());
    bool progressed = false;
    for (Flat f : minimal) {
      BuildingSet next = cur.without(l, f);
      if (!is_building_set(l, next.elements())) continue;
      cur = std::move(next);
      removed.push_back(f);
      downward.push_back(cur);
      progressed = true;
      break;
    }
    if (!progressed) throw Error(ErrorKind::Stuck, "no minimal flat can be removed", minimal);
  }
  return assemble(l, std::move(downward), std::move(removed));
}

Filtration greedy_binary_filtration(const GeomLattice& l, const BuildingSet& small, const BuildingSet& big) {
  require_contained(small, big);
  std::vector<BuildingSet> downward{big};
  std::vector<Flat> removed;
  BuildingSet cur = big;
  while (cur.size() > small.size()) {
    std::vector<Flat> removable;
    for (Flat f : cur.elements()) {
      if (small.contains(f)) continue;
      std::vector<Flat> rest;
      for (Flat g : cur.elements())
        if (g != f) rest.push_back(g);
      std::vector<Flat> parts = factors_in(rest, f);
      if (join_map_is_isomorphism(l, parts, f)) removable.push_back(f);
    }
    std::vector<Flat> maximal;
    for (Flat f : removable)
      if (std::none_of(removable.begin(), removable.end(), [&](Flat g) { return f.strict_subset_of(g); }))
        maximal.push_back(f);
    if (maximal.empty()) throw Error(ErrorKind::NoBinaryFiltration, "no removable flat left");
    Flat pick = *std::min_element(maximal.begin(), maximal.end());
    cur = cur.without(l, pick);
    if (factors_in(cur.elements(), pick).size() != 2)
      throw Error(ErrorKind::NoBinaryFiltration, "greedy step adding " + to_string(pick) + " is not binary", {pick});
    removed.push_back(pick);
    downward.push_back(cur);
  }
  return assemble(l, std::move(downward), std::move(removed));
}

Filtration binary_filtration(const BuiltMatroid& big, const BuildingSet& small) {
  if (!is_flag(big)) throw Error(ErrorKind::NotFlag, "binary filtrations are only guaranteed for flag targets");
  try {
    return greedy_binary_filtration(big.lattice(), small, big.bset());
  } catch (const Error& err) {
    if (err.kind() == ErrorKind::NoBinaryFiltration) throw Error(ErrorKind::Stuck, err.what(), err.witness());
    throw;
  }
}

bool is_removable(const BuiltMatroid& bm, Flat g) {
  std::vector<Flat> rest;
  for (Flat f : bm.bset().elements())
    if (f != g) rest.push_back(f);
  std::vector<Flat> parts = factors_in(rest, g);
  return !parts.empty() && join_map_is_isomorphism(bm.lattice(), parts, g);
}

}  // namespace chowgamma
