#include "chowgamma/lattice.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <set>

namespace chowgamma {

// ---------------------------------------------------------------- GroundOrder

GroundOrder::GroundOrder(int n) : sequence_(n), position_(n) {
  std::iota(sequence_.begin(), sequence_.end(), 0);
  std::iota(position_.begin(), position_.end(), 0);
}

GroundOrder::GroundOrder(std::vector<int> sequence)
    : sequence_(std::move(sequence)), position_(sequence_.size(), -1) {
  const int n = size();
  for (int k = 0; k < n; ++k) {
    int e = sequence_[k];
    if (e < 0 || e >= n || position_[e] != -1)
      throw Error(ErrorKind::InvalidInput, "order is not a permutation of 0..n-1");
    position_[e] = k;
  }
}

int GroundOrder::min_of(Mask m) const {
  int best = -1;
  for_each_element(m, [&](int e) {
    if (best < 0 || position_[e] < position_[best]) best = e;
  });
  return best;
}

int GroundOrder::max_of(Mask m) const {
  int best = -1;
  for_each_element(m, [&](int e) {
    if (best < 0 || position_[e] > position_[best]) best = e;
  });
  return best;
}

std::vector<int> GroundOrder::sorted(Mask m) const {
  std::vector<int> out = elements_of(m);
  std::sort(out.begin(), out.end(), [&](int a, int b) { return position_[a] < position_[b]; });
  return out;
}

GroundOrder GroundOrder::induced(Mask keep) const {
  std::vector<int> relabel(size(), -1);
  int next = 0;
  for_each_element(keep, [&](int e) { relabel[e] = next++; });
  std::vector<int> seq;
  seq.reserve(next);
  for (int e : sequence_)
    if (relabel[e] >= 0) seq.push_back(relabel[e]);
  return GroundOrder(std::move(seq));
}

GroundOrder GroundOrder::with_new_max() const {
  std::vector<int> seq = sequence_;
  seq.push_back(size());
  return GroundOrder(std::move(seq));
}

// ---------------------------------------------------------------- Matroid

Matroid::Matroid(int n, RankFn rank, std::string name) : n_(n), rank_(std::move(rank)), name_(std::move(name)) {
  if (n < 0 || n > kMaxGround) throw Error(ErrorKind::BadParameters, "ground set size out of range");
}

Matroid Matroid::from_rank_table(int n, std::vector<int> table, std::string name) {
  if (n < 0 || n > 20) throw Error(ErrorKind::TooLarge, "rank tables are limited to 20 elements");
  if (table.size() != (std::size_t{1} << n))
    throw Error(ErrorKind::InvalidMatroid, "rank table must have 2^n entries");
  auto shared = std::make_shared<std::vector<int>>(std::move(table));
  Matroid m(n, [shared](Mask s) { return (*shared)[s]; }, std::move(name));
  m.validate();
  return m;
}

Mask Matroid::closure(Mask s) const {
  const int r = rank(s);
  Mask c = s;
  for (int e = 0; e < n_; ++e)
    if (!((s >> e) & 1u) && rank(s | bit(e)) == r) c |= bit(e);
  return c;
}

bool Matroid::is_loopless() const {
  for (int e = 0; e < n_; ++e)
    if (rank(bit(e)) != 1) return false;
  return true;
}

void Matroid::validate(int max_exhaustive) const {
  auto fail = [](const std::string& why) { throw Error(ErrorKind::InvalidMatroid, why); };
  if (rank(0) != 0) fail("rank of the empty set is not 0");
  auto check_at = [&](Mask s) {
    const int rs = rank(s);
    if (rs < 0) fail("negative rank");
    for (int a = 0; a < n_; ++a) {
      if ((s >> a) & 1u) continue;
      const int ra = rank(s | bit(a));
      if (ra != rs && ra != rs + 1) fail("rank is not unit-increasing");
      for (int b = a + 1; b < n_; ++b) {
        if ((s >> b) & 1u) continue;
        if (ra + rank(s | bit(b)) < rank(s | bit(a) | bit(b)) + rs) fail("rank is not submodular");
      }
    }
  };
  if (n_ <= max_exhaustive) {
    const Mask limit = Mask{1} << n_;
    for (Mask s = 0; s < limit; ++s) check_at(s);
  } else {
    std::mt19937_64 rng(0x5eedULL + static_cast<unsigned>(n_));
    for (int i = 0; i < 256; ++i) check_at(rng() & ground());
  }
}

Matroid dual(const Matroid& m) {
  const int n = m.size();
  if (n > 20) throw Error(ErrorKind::TooLarge, "dual is limited to 20 elements");
  const Mask e = m.ground();
  const int r = m.rank();
  std::vector<int> table(std::size_t{1} << n);
  for (Mask s = 0; s <= e; ++s) table[s] = popcount(s) - r + m.rank(e & ~s);
  auto shared = std::make_shared<std::vector<int>>(std::move(table));
  return Matroid(n, [shared](Mask s) { return (*shared)[s]; }, m.name().empty() ? "" : m.name() + "*");
}

Flat closure(const Matroid& m, Mask s) { return Flat{m.closure(s)}; }

// ---------------------------------------------------------------- GeomLattice

struct GeomLattice::IrreducibleCache {
  std::once_flag once;
  std::vector<char> flags;
};

void GeomLattice::index() {
  std::vector<std::size_t> order(flats_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (ranks_[a] != ranks_[b]) return ranks_[a] < ranks_[b];
    return flats_[a].bits < flats_[b].bits;
  });
  std::vector<Flat> flats;
  std::vector<int> ranks;
  for (std::size_t i : order) {
    flats.push_back(flats_[i]);
    ranks.push_back(ranks_[i]);
  }
  flats_ = std::move(flats);
  ranks_ = std::move(ranks);
  top_rank_ = ranks_.empty() ? 0 : ranks_.back();
  rank_start_.assign(top_rank_ + 2, 0);
  for (int r : ranks_) ++rank_start_[r + 1];
  for (int k = 1; k <= top_rank_ + 1; ++k) rank_start_[k] += rank_start_[k - 1];
  index_.clear();
  index_.reserve(flats_.size() * 2);
  for (std::size_t i = 0; i < flats_.size(); ++i) index_.emplace(flats_[i].bits, static_cast<int>(i));
  irreducible_ = std::make_shared<IrreducibleCache>();
}

GeomLattice GeomLattice::from_matroid(const Matroid& m) { return lattice_of_flats(m); }

GeomLattice GeomLattice::from_ranked_flats(int n, std::vector<std::pair<Flat, int>> flats) {
  GeomLattice l;
  l.n_ = n;
  for (auto& [f, r] : flats) {
    l.flats_.push_back(f);
    l.ranks_.push_back(r);
  }
  l.index();
  return l;
}

GeomLattice GeomLattice::from_flats(int n, std::vector<Flat> flats) {
  auto fail = [](const std::string& why, std::vector<Flat> w = {}) {
    throw Error(ErrorKind::InvalidMatroid, why, std::move(w));
  };
  if (n < 0 || n > kMaxGround) throw Error(ErrorKind::BadParameters, "ground set size out of range");
  const Mask ground = low_bits(n);
  std::sort(flats.begin(), flats.end());
  flats.erase(std::unique(flats.begin(), flats.end()), flats.end());
  std::set<Mask> present;
  for (Flat f : flats) {
    if (f.bits & ~ground) fail("flat outside the ground set", {f});
    present.insert(f.bits);
  }
  if (!present.count(0)) fail("the empty set must be a flat (loopless matroid)");
  if (!present.count(ground)) fail("the ground set must be a flat");
  for (std::size_t i = 0; i < flats.size(); ++i)
    for (std::size_t j = i + 1; j < flats.size(); ++j)
      if (!present.count(flats[i].bits & flats[j].bits)) fail("flats are not closed under intersection", {flats[i], flats[j]});
  std::sort(flats.begin(), flats.end(), [](Flat a, Flat b) {
    return a.size() != b.size() ? a.size() < b.size() : a.bits < b.bits;
  });
  std::map<Mask, int> rank;
  rank[0] = 0;
  for (Flat f : flats) {
    if (!rank.count(f.bits)) fail("flat not reachable by covers", {f});
    std::vector<Flat> above;
    for (Flat g : flats)
      if (f.strict_subset_of(g)) above.push_back(g);
    Mask covered = 0;
    for (Flat g : above) {
      bool minimal = true;
      for (Flat h : above)
        if (h.strict_subset_of(g)) { minimal = false; break; }
      if (!minimal) continue;
      Mask extra = g.bits & ~f.bits;
      if (extra & covered) fail("covers of a flat do not partition its complement", {f, g});
      covered |= extra;
      auto it = rank.find(g.bits);
      if (it == rank.end()) rank[g.bits] = rank[f.bits] + 1;
      else if (it->second != rank[f.bits] + 1) fail("lattice is not graded", {g});
    }
    if (covered != (ground & ~f.bits)) fail("covers of a flat do not partition its complement", {f});
  }
  std::vector<std::pair<Flat, int>> ranked;
  for (auto [m, r] : rank) ranked.emplace_back(Flat{m}, r);
  return from_ranked_flats(n, std::move(ranked));
}

std::span<const Flat> GeomLattice::flats_of_rank(int k) const {
  if (k < 0 || k > top_rank_) return {};
  return std::span<const Flat>(flats_.data() + rank_start_[k], rank_start_[k + 1] - rank_start_[k]);
}

int GeomLattice::index_of(Flat f) const {
  auto it = index_.find(f.bits);
  return it == index_.end() ? -1 : it->second;
}

int GeomLattice::rank(Flat f) const {
  int i = index_of(f);
  if (i < 0) throw Error(ErrorKind::NotAFlat, to_string(f) + " is not a flat", {f});
  return ranks_[i];
}

Flat GeomLattice::closure(Mask s) const {
  if (top_rank_ == 0) return top();
  Mask c = top().bits;
  for (Flat h : coatoms())
    if ((s & ~h.bits) == 0) c &= h.bits;
  return Flat{c};
}

Flat GeomLattice::join(Flat f, Flat g) const {
  if (!is_flat(f)) throw Error(ErrorKind::NotAFlat, to_string(f) + " is not a flat", {f});
  if (!is_flat(g)) throw Error(ErrorKind::NotAFlat, to_string(g) + " is not a flat", {g});
  return closure(f.bits | g.bits);
}

Flat GeomLattice::meet(Flat f, Flat g) const {
  if (!is_flat(f)) throw Error(ErrorKind::NotAFlat, to_string(f) + " is not a flat", {f});
  if (!is_flat(g)) throw Error(ErrorKind::NotAFlat, to_string(g) + " is not a flat", {g});
  return f & g;
}

bool GeomLattice::is_simple() const {
  auto a = atoms();
  if (static_cast<int>(a.size()) != n_) return false;
  return std::all_of(a.begin(), a.end(), [](Flat f) { return f.size() == 1; });
}

bool GeomLattice::is_irreducible(Flat f) const {
  int i = index_of(f);
  if (i < 0) throw Error(ErrorKind::NotAFlat, to_string(f) + " is not a flat", {f});
  std::call_once(irreducible_->once, [this] {
    std::vector<char> flags(flats_.size(), 0);
    for (std::size_t k = 1; k < flats_.size(); ++k) flags[k] = interval_factors(*this, flats_[k]).size() == 1;
    irreducible_->flags = std::move(flags);
  });
  return irreducible_->flags[i];
}

GeomLattice lattice_of_flats(const Matroid& m) {
  const int n = m.size();
  if (!m.is_loopless()) throw Error(ErrorKind::InvalidMatroid, "matroid has a loop");
  if (n <= 10) m.validate();
  const Mask ground = m.ground();
  std::unordered_map<Mask, int> rank{{0, 0}};
  std::deque<Mask> queue{0};
  while (!queue.empty()) {
    Mask f = queue.front();
    queue.pop_front();
    const int rf = rank[f];
    Mask remaining = ground & ~f;
    while (remaining) {
      int e = lowest(remaining);
      Mask g = m.closure(f | bit(e));
      if ((g & ~f) & ~remaining)
        throw Error(ErrorKind::InvalidMatroid, "covers of a flat do not partition its complement", {Flat{f}});
      remaining &= ~g;
      if (m.rank(g) != rf + 1) throw Error(ErrorKind::InvalidMatroid, "cover does not raise rank by one", {Flat{g}});
      if (rank.emplace(g, rf + 1).second) queue.push_back(g);
    }
  }
  std::vector<std::pair<Flat, int>> ranked;
  ranked.reserve(rank.size());
  for (auto [f, r] : rank) ranked.emplace_back(Flat{f}, r);
  return GeomLattice::from_ranked_flats(n, std::move(ranked));
}

Flat join(const GeomLattice& l, Flat f, Flat g) { return l.join(f, g); }
Flat meet(const GeomLattice& l, Flat f, Flat g) { return l.meet(f, g); }

Matroid matroid_of(std::shared_ptr<const GeomLattice> l) {
  const int n = l->ground_size();
  return Matroid(n, [l](Mask s) { return l->rank_of_set(s); });
}

std::vector<Flat> interval_factors(const GeomLattice& l, Flat f) {
  if (f.empty()) return {};
  std::vector<int> els = elements_of(f.bits);
  Mask basis = 0;
  int r = 0;
  for (int e : els) {
    if (l.rank_of_set(basis | bit(e)) > r) {
      basis |= bit(e);
      ++r;
    }
  }
  std::vector<int> parent(l.ground_size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int x : els) {
    if ((basis >> x) & 1u) continue;
    for_each_element(basis, [&](int b) {
      if (l.rank_of_set((basis & ~bit(b)) | bit(x)) == r) parent[find(x)] = find(b);
    });
  }
  std::map<int, Mask> blocks;
  for (int x : els) blocks[find(x)] |= bit(x);
  std::vector<Flat> out;
  for (auto& [root, m] : blocks) out.push_back(Flat{m});
  std::sort(out.begin(), out.end());
  return out;
}

bool is_modular_pair(const GeomLattice& l, Flat f, Flat g) {
  return l.rank(l.join(f, g)) + l.rank(l.meet(f, g)) == l.rank(f) + l.rank(g);
}

bool join_map_is_isomorphism(const GeomLattice& l, std::span<const Flat> parts, Flat f) {
  Mask joined = 0;
  for (Flat p : parts) {
    if (!p.subset_of(f)) return false;
    joined |= p.bits;
  }
  if (l.closure(joined) != f) return false;
  std::size_t below_f = 0;
  std::vector<std::size_t> below_part(parts.size(), 0);
  for (Flat h : l.flats()) {
    if (!h.subset_of(f)) continue;
    ++below_f;
    for (std::size_t i = 0; i < parts.size(); ++i)
      if (h.subset_of(parts[i])) ++below_part[i];
  }
  std::size_t product = 1;
  for (std::size_t c : below_part) {
    product *= c;
    if (product > below_f) return false;
  }
  if (product != below_f) return false;
  // Equal sizes: surjectivity with the meet map as section gives the isomorphism.
  for (Flat h : l.flats()) {
    if (!h.subset_of(f)) continue;
    Mask u = 0;
    for (Flat p : parts) u |= (h & p).bits;
    if (l.closure(u) != h) return false;
  }
  return true;
}

// ---------------------------------------------------------------- Modular cuts

bool ModularCut::contains(Flat f) const { return std::find(members.begin(), members.end(), f) != members.end(); }

std::vector<Flat> ModularCut::minimal() const {
  std::vector<Flat> out;
  for (Flat f : members) {
    bool min = true;
    for (Flat g : members)
      if (g.strict_subset_of(f)) { min = false; break; }
    if (min) out.push_back(f);
  }
  return out;
}

namespace {

ModularCut make_cut(const GeomLattice& l, std::vector<Flat> members) {
  std::sort(members.begin(), members.end(), [&](Flat a, Flat b) { return l.index_of(a) < l.index_of(b); });
  members.erase(std::unique(members.begin(), members.end()), members.end());
  ModularCut cut;
  cut.members = std::move(members);
  cut.nonempty = !cut.members.empty();
  cut.proper = !cut.contains(l.bottom());
  cut.atom_free = std::none_of(cut.members.begin(), cut.members.end(), [&](Flat f) { return l.rank(f) == 1; });
  return cut;
}

}  // namespace

ModularCut validate_modular_cut(const GeomLattice& l, std::vector<Flat> cut) {
  for (Flat f : cut)
    if (!l.is_flat(f)) throw Error(ErrorKind::NotAFlat, to_string(f) + " is not a flat", {f});
  ModularCut mc = make_cut(l, std::move(cut));
  for (Flat f : mc.members)
    for (Flat g : l.flats())
      if (f.strict_subset_of(g) && !mc.contains(g))
        throw Error(ErrorKind::NotUpwardClosed, to_string(g) + " lies above " + to_string(f) + " but not in the cut", {f, g});
  for (std::size_t i = 0; i < mc.members.size(); ++i)
    for (std::size_t j = i + 1; j < mc.members.size(); ++j) {
      Flat f = mc.members[i], g = mc.members[j];
      if (is_modular_pair(l, f, g) && !mc.contains(f & g))
        throw Error(ErrorKind::NotMeetClosed, "meet of a modular pair is missing", {f, g});
    }
  return mc;
}

GeomLattice delete_element(const GeomLattice& l, int e) {
  if (e < 0 || e >= l.ground_size()) throw Error(ErrorKind::BadParameters, "element out of range");
  const Mask keep = l.ground() & ~bit(e);
  std::map<Mask, int> ranked;
  for (Flat g : l.flats()) {
    Mask x = g.bits & keep;
    ranked.emplace(squeeze(x, keep), l.rank_of_set(x));
  }
  std::vector<std::pair<Flat, int>> flats;
  for (auto [m, r] : ranked) flats.emplace_back(Flat{m}, r);
  return GeomLattice::from_ranked_flats(l.ground_size() - 1, std::move(flats));
}

ModularCut deletion_modular_cut(const GeomLattice& l, int e) {
  const Mask keep = l.ground() & ~bit(e);
  GeomLattice del = delete_element(l, e);
  std::vector<Flat> members;
  for (Flat f : del.flats())
    if (l.closure(expand(f.bits, keep)).contains(e)) members.push_back(f);
  return make_cut(del, std::move(members));
}

std::vector<ModularCut> all_modular_cuts(const GeomLattice& l, bool atom_free_only) {
  const std::size_t n = l.size();
  const auto& flats = l.flats();
  std::vector<std::vector<int>> up(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      if (flats[i].subset_of(flats[j])) up[i].push_back(static_cast<int>(j));
  // modular_meet[i][j] = index of the meet when (i,j) is a modular pair, else -1
  std::vector<std::vector<int>> modular_meet(n, std::vector<int>(n, -1));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Flat m = flats[i] & flats[j];
      int mi = l.index_of(m);
      int ji = l.index_of(l.closure(flats[i].bits | flats[j].bits));
      if (l.rank_at(ji) + l.rank_at(mi) == l.rank_at(i) + l.rank_at(j)) modular_meet[i][j] = modular_meet[j][i] = mi;
    }

  using State = std::vector<char>;
  auto close = [&](State& s, int seed) {
    for (int j : up[seed]) s[j] = 1;
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t a = 0; a < n; ++a) {
        if (!s[a]) continue;
        for (std::size_t b = a + 1; b < n; ++b) {
          if (!s[b]) continue;
          int m = modular_meet[a][b];
          if (m >= 0 && !s[m]) {
            for (int j : up[m]) s[j] = 1;
            changed = true;
          }
        }
      }
    }
  };
  auto has_atom = [&](const State& s) {
    for (std::size_t i = 0; i < n; ++i)
      if (s[i] && l.rank_at(static_cast<int>(i)) <= 1) return true;
    return false;
  };

  std::set<State> seen;
  std::deque<State> queue;
  State empty(n, 0);
  seen.insert(empty);
  queue.push_back(empty);
  while (!queue.empty()) {
    State s = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < n; ++i) {
      if (s[i]) continue;
      if (atom_free_only && l.rank_at(static_cast<int>(i)) <= 1) continue;
      State t = s;
      close(t, static_cast<int>(i));
      if (atom_free_only && has_atom(t)) continue;
      if (seen.insert(t).second) queue.push_back(std::move(t));
    }
  }
  std::vector<ModularCut> out;
  for (const State& s : seen) {
    std::vector<Flat> members;
    for (std::size_t i = 0; i < n; ++i)
      if (s[i]) members.push_back(flats[i]);
    out.push_back(make_cut(l, std::move(members)));
  }
  std::sort(out.begin(), out.end(), [&](const ModularCut& a, const ModularCut& b) {
    if (a.members.size() != b.members.size()) return a.members.size() < b.members.size();
    return std::lexicographical_compare(a.members.begin(), a.members.end(), b.members.begin(), b.members.end());
  });
  return out;
}

}  // namespace chowgamma
