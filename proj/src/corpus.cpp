#include "chowgamma/corpus.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

namespace chowgamma {

std::vector<std::vector<std::pair<int, int>>> connected_graphs(int v) {
  std::vector<std::pair<int, int>> all;
  for (int i = 0; i < v; ++i)
    for (int j = i + 1; j < v; ++j) all.emplace_back(i, j);
  const int m = static_cast<int>(all.size());
  std::vector<std::vector<int>> perms;
  std::vector<int> p(v);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));

  auto edge_index = [&](int a, int b) {
    if (a > b) std::swap(a, b);
    return static_cast<int>(std::find(all.begin(), all.end(), std::make_pair(a, b)) - all.begin());
  };
  std::set<Mask> seen;
  std::vector<std::vector<std::pair<int, int>>> out;
  for (Mask g = 0; g < (Mask{1} << m); ++g) {
    // connectivity
    Mask reach = 1;
    for (bool grew = true; grew;) {
      grew = false;
      for_each_element(g, [&](int e) {
        auto [a, b] = all[e];
        if (((reach >> a) & 1) != ((reach >> b) & 1)) {
          reach |= bit(a) | bit(b);
          grew = true;
        }
      });
    }
    if (reach != low_bits(v)) continue;
    Mask canon = g;
    for (const auto& q : perms) {
      Mask h = 0;
      for_each_element(g, [&](int e) { h |= bit(edge_index(q[all[e].first], q[all[e].second])); });
      canon = std::min(canon, h);
    }
    if (!seen.insert(canon).second) continue;
    std::vector<std::pair<int, int>> edges;
    for_each_element(canon, [&](int e) { edges.push_back(all[e]); });
    out.push_back(std::move(edges));
  }
  return out;
}

BuildingSet building_closure(const GeomLattice& l, const std::vector<Flat>& extra) {
  std::set<Flat> s;
  const BuildingSet base = g_min(l);
  for (Flat f : base.elements()) s.insert(f);
  for (Flat f : extra) s.insert(f);
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<Flat> cur(s.begin(), s.end());
    for (std::size_t i = 0; i < cur.size(); ++i)
      for (std::size_t j = i + 1; j < cur.size(); ++j)
        if (l.meet(cur[i], cur[j]) != l.bottom() && s.insert(l.join(cur[i], cur[j])).second) grew = true;
  }
  return validate_building_set(l, std::vector<Flat>(s.begin(), s.end()));
}

namespace {

struct Source {
  std::string name;
  std::string family;
  std::shared_ptr<const GeomLattice> lattice;
};

void add_instance(std::vector<CorpusInstance>& out, const Source& src, const std::string& kind, const std::string& tag,
                  BuildingSet b, const CorpusOptions& opt) {
  BuiltMatroid bm(src.lattice, std::move(b));
  bool complete = is_complete(bm);
  if (!complete && bm.ground_size() <= opt.max_order_search) {
    if (auto order = find_complete_order(bm, opt.max_order_search)) {
      bm = bm.with_order(*order);
      complete = true;
    }
  }
  out.push_back({src.name + "/" + kind + tag, src.family, kind, std::move(bm), complete});
}

}  // namespace

std::vector<CorpusInstance> build_corpus(const CorpusOptions& opt) {
  std::vector<Source> sources;
  auto lattice = [](const Matroid& m) { return std::make_shared<const GeomLattice>(lattice_of_flats(m)); };
  for (int n = 1; n <= 6; ++n)
    for (int r = 1; r <= n; ++r) sources.push_back({"U" + std::to_string(r) + "," + std::to_string(n), "uniform", lattice(make_uniform(r, n))});
  for (int n = 1; n <= 5; ++n) sources.push_back({"B" + std::to_string(n), "boolean", lattice(make_boolean(n))});
  for (int n = 3; n <= 5; ++n) sources.push_back({"Pi" + std::to_string(n), "partition", lattice(make_partition(n))});
  // Families overlap (trees are Boolean, cycles uniform, K_v partition lattices); each family is kept whole.
  for (int v = 2; v <= 5; ++v) {
    int k = 0;
    for (const auto& edges : connected_graphs(v))
      sources.push_back({"G" + std::to_string(v) + "." + std::to_string(k++), "graphic", lattice(make_graphic(v, edges))});
  }

  std::vector<CorpusInstance> out;
  for (const auto& src : sources) {
    const GeomLattice& l = *src.lattice;
    BuildingSet lo = g_min(l), hi = g_max(l);
    add_instance(out, src, "min", "", lo, opt);
    if (!(hi == lo)) add_instance(out, src, "max", "", hi, opt);
    if (src.family == "boolean" && l.ground_size() <= opt.chordal_max_n) {
      int k = 0;
      for (auto& b : chordal_building_sets(l, l.ground_size())) {
        const std::string tag = "." + std::to_string(k++);
        if (b == lo || b == hi) continue;
        add_instance(out, src, "chordal", tag, std::move(b), opt);
      }
    }
  }

  // Random building sets on the richer lattices, seeded and deduplicated.
  std::mt19937_64 rng(opt.seed);
  std::vector<const Source*> rich;
  for (const auto& s : sources)
    if (s.lattice->rank() >= 3 && g_max(*s.lattice).size() > g_min(*s.lattice).size() + 1) rich.push_back(&s);
  std::set<std::pair<std::string, std::vector<Flat>>> seen;
  int made = 0;
  for (int attempt = 0; made < opt.random_sets && attempt < 100 * opt.random_sets; ++attempt) {
    const Source& src = *rich[std::uniform_int_distribution<std::size_t>(0, rich.size() - 1)(rng)];
    const GeomLattice& l = *src.lattice;
    const BuildingSet lo = g_min(l), hi = g_max(l);
    std::vector<Flat> candidates;
    for (Flat f : hi.elements())
      if (!lo.contains(f)) candidates.push_back(f);
    std::shuffle(candidates.begin(), candidates.end(), rng);
    const std::size_t take = std::uniform_int_distribution<std::size_t>(1, std::max<std::size_t>(1, candidates.size() / 2))(rng);
    candidates.resize(std::min(take, candidates.size()));
    BuildingSet b = building_closure(l, candidates);
    if (b == lo || b == hi) continue;
    if (!seen.insert({src.name, b.elements()}).second) continue;
    add_instance(out, src, "random", "." + std::to_string(made++), std::move(b), opt);
  }
  return out;
}

}  // namespace chowgamma
