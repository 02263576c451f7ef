#include "chowgamma/nested.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace chowgamma {

// ---------------------------------------------------------------- Nestedness

bool is_nested_with(const GeomLattice& l, const BuildingSet& bset, std::span<const Flat> s, Flat v) {
  std::vector<Flat> cand;
  for (Flat g : s)
    if (!g.subset_of(v) && !v.subset_of(g)) cand.push_back(g);
  std::vector<Flat> chosen;
  // every antichain containing v must join outside the building set
  std::function<bool(std::size_t, Mask)> rec = [&](std::size_t start, Mask u) {
    for (std::size_t k = start; k < cand.size(); ++k) {
      Flat c = cand[k];
      bool comparable = std::any_of(chosen.begin(), chosen.end(),
                                    [&](Flat d) { return c.subset_of(d) || d.subset_of(c); });
      if (comparable) continue;
      Mask w = u | c.bits;
      if (bset.contains(l.closure(w))) return false;
      chosen.push_back(c);
      bool ok = rec(k + 1, w);
      chosen.pop_back();
      if (!ok) return false;
    }
    return true;
  };
  return rec(0, v.bits);
}

bool is_nested(const BuiltMatroid& bm, std::span<const Flat> s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!bm.in_bset(s[i])) return false;
    if (!is_nested_with(bm.lattice(), bm.bset(), s.subspan(0, i), s[i])) return false;
  }
  return true;
}

// ---------------------------------------------------------------- NestedSet

NestedSet NestedSet::from_elements(const GeomLattice& l, std::vector<Flat> elements) {
  std::sort(elements.begin(), elements.end(), [&](Flat a, Flat b) {
    int ra = a.size(), rb = b.size();
    int ia = l.index_of(a), ib = l.index_of(b);
    if (ia >= 0 && ib >= 0) return ia < ib;
    return ra != rb ? ra < rb : a.bits < b.bits;
  });
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  NestedSet s;
  s.elements_ = std::move(elements);
  const std::size_t n = s.elements_.size();
  s.parent_.assign(n, -1);
  s.jbottom_.assign(n, Flat{});
  for (std::size_t i = 0; i < n; ++i) {
    Flat g = s.elements_[i];
    int best = -1;
    Mask below = 0;
    for (std::size_t j = 0; j < n; ++j) {
      Flat h = s.elements_[j];
      if (g.strict_subset_of(h) && (best < 0 || h.size() < s.elements_[best].size())) best = static_cast<int>(j);
      if (h.strict_subset_of(g)) below |= h.bits;
    }
    s.parent_[i] = best;
    s.jbottom_[i] = l.closure(below);
  }
  return s;
}

NestedSet make_nested(const BuiltMatroid& bm, std::vector<Flat> elements) {
  if (!is_nested(bm, elements)) throw Error(ErrorKind::NotNested, "set is not nested", elements);
  return NestedSet::from_elements(bm.lattice(), std::move(elements));
}

bool NestedSet::contains(Flat f) const { return index_of(f) >= 0; }

int NestedSet::index_of(Flat f) const {
  auto it = std::find(elements_.begin(), elements_.end(), f);
  return it == elements_.end() ? -1 : static_cast<int>(it - elements_.begin());
}

Flat NestedSet::bottom_below(const GeomLattice& l, Flat g) const {
  Mask below = 0;
  for (Flat h : elements_)
    if (h.strict_subset_of(g)) below |= h.bits;
  return l.closure(below);
}

std::vector<std::size_t> NestedSet::children(std::size_t i) const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < elements_.size(); ++j)
    if (parent_[j] == static_cast<int>(i)) out.push_back(j);
  return out;
}

bool NestedSet::is_minimal(std::size_t i) const {
  for (Flat h : elements_)
    if (h.strict_subset_of(elements_[i])) return false;
  return true;
}

// ---------------------------------------------------------------- Complexes

bool SimplicialComplex::contains(const std::vector<int>& face) const {
  return std::binary_search(faces.begin(), faces.end(), face);
}

void SimplicialComplex::normalize() {
  for (auto& f : faces) std::sort(f.begin(), f.end());
  std::sort(faces.begin(), faces.end());
  faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
}

SimplicialComplex nested_complex(const BuiltMatroid& bm, ComplexVariant variant) {
  SimplicialComplex c;
  for (Flat g : bm.bset().elements())
    if (variant == ComplexVariant::Cone || !bm.is_maximal(g)) c.vertices.push_back(g);
  std::vector<Flat> cur;
  std::vector<int> idx;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    c.faces.push_back(idx);
    for (std::size_t k = start; k < c.vertices.size(); ++k) {
      if (!is_nested_with(bm.lattice(), bm.bset(), cur, c.vertices[k])) continue;
      cur.push_back(c.vertices[k]);
      idx.push_back(static_cast<int>(k));
      rec(k + 1);
      cur.pop_back();
      idx.pop_back();
    }
  };
  rec(0);
  c.normalize();
  return c;
}

std::vector<NestedSet> maximal_nested_sets(const BuiltMatroid& bm) {
  const GeomLattice& l = bm.lattice();
  const auto& bset = bm.bset().elements();
  std::map<Flat, std::vector<std::vector<Flat>>> memo;
  // All rank-one-descending families below t, each containing t itself.
  std::function<const std::vector<std::vector<Flat>>&(Flat)> rec = [&](Flat t) -> const std::vector<std::vector<Flat>>& {
    auto it = memo.find(t);
    if (it != memo.end()) return it->second;
    std::vector<std::vector<Flat>> out;
    const int rt = l.rank(t);
    if (rt == 1) {
      out.push_back({t});
    } else {
      for (Flat h : l.flats_of_rank(rt - 1)) {
        if (!h.subset_of(t)) continue;
        std::vector<Flat> parts = factors_in(bset, h);
        std::vector<std::vector<Flat>> acc{{}};
        for (Flat a : parts) {
          const auto& sub = rec(a);
          std::vector<std::vector<Flat>> next;
          next.reserve(acc.size() * sub.size());
          for (const auto& x : acc)
            for (const auto& y : sub) {
              std::vector<Flat> z = x;
              z.insert(z.end(), y.begin(), y.end());
              next.push_back(std::move(z));
            }
          acc = std::move(next);
        }
        for (auto& x : acc) {
          x.push_back(t);
          out.push_back(std::move(x));
        }
      }
    }
    return memo.emplace(t, std::move(out)).first->second;
  };
  std::vector<std::vector<Flat>> acc{{}};
  for (Flat m : bm.maximal_elements()) {
    const auto& sub = rec(m);
    std::vector<std::vector<Flat>> next;
    for (const auto& x : acc)
      for (const auto& y : sub) {
        std::vector<Flat> z = x;
        for (Flat f : y)
          if (f != m) z.push_back(f);
        next.push_back(std::move(z));
      }
    acc = std::move(next);
  }
  std::vector<NestedSet> out;
  out.reserve(acc.size());
  for (auto& x : acc) out.push_back(NestedSet::from_elements(l, std::move(x)));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<NestedSet> maximal_nested_sets_brute_force(const BuiltMatroid& bm) {
  SimplicialComplex c = nested_complex(bm, ComplexVariant::Reduced);
  std::vector<NestedSet> out;
  for (const auto& f : c.faces) {
    bool maximal = true;
    for (std::size_t v = 0; v < c.vertices.size() && maximal; ++v) {
      if (std::find(f.begin(), f.end(), static_cast<int>(v)) != f.end()) continue;
      std::vector<int> g = f;
      g.push_back(static_cast<int>(v));
      std::sort(g.begin(), g.end());
      if (c.contains(g)) maximal = false;
    }
    if (!maximal) continue;
    std::vector<Flat> els;
    for (int v : f) els.push_back(c.vertices[v]);
    out.push_back(NestedSet::from_elements(bm.lattice(), std::move(els)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------- Local structure

Flat new_factor(const BuiltMatroid& bm, Flat g, Flat f) {
  std::vector<Flat> fg = factors(bm, g);
  std::vector<Flat> ff = f.empty() ? std::vector<Flat>{} : factors(bm, f);
  std::vector<Flat> fresh;
  for (Flat x : fg)
    if (std::find(ff.begin(), ff.end(), x) == ff.end()) fresh.push_back(x);
  if (fresh.size() != 1)
    throw Error(ErrorKind::NotUnique, to_string(g) + " has no unique new factor over " + to_string(f), fresh);
  return fresh.front();
}

LocalInterval local_interval(const BuiltMatroid& bm, Flat bottom, Flat top) {
  if (!bottom.subset_of(top)) throw Error(ErrorKind::NotContained, "local interval endpoints are not comparable", {bottom, top});
  BuiltMatroid r = restrict(bm, top);
  BuiltMatroid built = contract(r, Flat{squeeze(bottom.bits, top.bits)});
  LocalInterval li{bottom, top, {}, std::move(built)};
  for (Flat g : li.built.bset().elements()) li.bset.push_back(li.to_parent(g));
  return li;
}

std::vector<Flat> link_tops(const BuiltMatroid& bm, const NestedSet& s) {
  std::vector<Flat> tops = s.elements();
  for (Flat m : bm.maximal_elements())
    if (!s.contains(m)) tops.push_back(m);
  const GeomLattice& l = bm.lattice();
  std::sort(tops.begin(), tops.end(), [&](Flat a, Flat b) { return l.index_of(a) < l.index_of(b); });
  return tops;
}

std::vector<LocalInterval> link_decomposition(const BuiltMatroid& bm, const NestedSet& s) {
  std::vector<LocalInterval> out;
  for (Flat t : link_tops(bm, s)) out.push_back(local_interval(bm, s.bottom_below(bm.lattice(), t), t));
  return out;
}

NestedSet compose(const BuiltMatroid& bm, const NestedSet& s, const std::map<Flat, std::vector<Flat>>& locals) {
  const GeomLattice& l = bm.lattice();
  std::vector<Flat> tops = link_tops(bm, s);
  std::vector<Flat> out = s.elements();
  for (const auto& [t, loc] : locals) {
    if (std::find(tops.begin(), tops.end(), t) == tops.end())
      throw Error(ErrorKind::InvalidInput, to_string(t) + " is not a top of the link decomposition", {t});
    if (loc.empty()) continue;
    Flat j = s.bottom_below(l, t);
    std::vector<Flat> local_bset;
    for (Flat k : bm.bset().elements())
      if (k.subset_of(t)) {
        Flat x = l.closure(j.bits | k.bits);
        if (x != j) local_bset.push_back(x);
      }
    BuildingSet lb = BuildingSet::trusted(l, std::move(local_bset));
    std::vector<Flat> seen;
    for (Flat h : loc) {
      if (!lb.contains(h) || h == t || !j.strict_subset_of(h) || !is_nested_with(l, lb, seen, h))
        throw Error(ErrorKind::NotNestedLocal, "local set at " + to_string(t) + " is not nested", loc);
      seen.push_back(h);
    }
    for (Flat h : loc) out.push_back(new_factor(bm, h, j));
  }
  return NestedSet::from_elements(l, std::move(out));
}

NestedSet completion(const BuiltMatroid& bm, const NestedSet& s) {
  const GeomLattice& l = bm.lattice();
  std::map<Flat, std::vector<Flat>> locals;
  for (Flat t : link_tops(bm, s)) {
    Flat j = s.bottom_below(l, t);
    std::vector<Flat> chain = tl_chain(bm, j, t);
    std::vector<Flat> inner;
    for (Flat x : chain)
      if (x != j && x != t) inner.push_back(x);
    locals[t] = std::move(inner);
  }
  return compose(bm, s, locals);
}

int lambda_label(const BuiltMatroid& bm, const NestedSet& s, Flat g) {
  const GeomLattice& l = bm.lattice();
  Flat j = s.bottom_below(l, g);
  if (l.rank(g) - l.rank(j) != 1)
    throw Error(ErrorKind::RankNotOne, "local interval at " + to_string(g) + " does not have rank one", {j, g});
  return bm.order().min_of(g.bits & ~j.bits);
}

DescentInfo descent_set(const BuiltMatroid& bm, const NestedSet& s) {
  if (!bm.is_irreducible()) throw Error(ErrorKind::NotIrreducible, "descents need an irreducible built matroid");
  const GeomLattice& l = bm.lattice();
  const Flat top = l.top();
  if (static_cast<int>(s.size()) != bm.rank() - 1 || s.contains(top))
    throw Error(ErrorKind::NotMaximal, "nested set is not a facet", s.elements());
  const int top_label = lambda_label(bm, s, top);
  const std::size_t n = s.size();
  std::vector<char> desc(n, 0);
  DescentInfo info;
  for (std::size_t i = 0; i < n; ++i) {
    int label = lambda_label(bm, s, s.elements()[i]);
    int p = s.parent(i);
    int parent_label = p < 0 ? top_label : lambda_label(bm, s, s.elements()[p]);
    desc[i] = bm.order().less(parent_label, label);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!desc[i]) continue;
    info.descents.push_back(s.elements()[i]);
    if (s.is_minimal(i)) {
      info.has_bottom_descent = true;
    } else {
      auto ch = s.children(i);
      if (std::all_of(ch.begin(), ch.end(), [&](std::size_t c) { return desc[c]; })) info.has_double_descent = true;
    }
  }
  info.des = static_cast<int>(info.descents.size());
  return info;
}

std::vector<NestedSet> stable_maximal_nested_sets(const BuiltMatroid& bm) {
  if (!bm.is_irreducible()) throw Error(ErrorKind::NotIrreducible, "stable facets need an irreducible built matroid");
  std::vector<NestedSet> out;
  for (auto& s : maximal_nested_sets(bm))
    if (descent_set(bm, s).stable()) out.push_back(std::move(s));
  return out;
}

// ---------------------------------------------------------------- Gamma complex

namespace {

struct RawGamma {
  std::vector<Flat> vertices;
  std::set<std::vector<Flat>> faces;
  std::size_t stable = 0;
};

RawGamma gamma_irreducible(const BuiltMatroid& bm) {
  const GeomLattice& l = bm.lattice();
  RawGamma g;
  std::vector<Flat> chain = tl_chain(bm, l.bottom(), l.top());
  for (Flat f : bm.bset().elements()) {
    if (l.rank(f) == 1) continue;
    if (std::find(chain.begin(), chain.end(), f) != chain.end()) continue;
    g.vertices.push_back(f);
  }
  for (const auto& s : maximal_nested_sets(bm)) {
    DescentInfo d = descent_set(bm, s);
    if (!d.stable()) continue;
    ++g.stable;
    std::vector<Flat> face = d.descents;
    std::sort(face.begin(), face.end());
    g.faces.insert(face);
  }
  return g;
}

}  // namespace

GammaComplex gamma_complex(const BuiltMatroid& bm) {
  RawGamma total;
  total.faces.insert(std::vector<Flat>{});
  for (Flat m : bm.maximal_elements()) {
    RawGamma part;
    if (bm.is_irreducible()) {
      part = gamma_irreducible(bm);
    } else {
      BuiltMatroid r = restrict(bm, m);
      RawGamma local = gamma_irreducible(r);
      part.stable = local.stable;
      for (Flat v : local.vertices) part.vertices.push_back(Flat{expand(v.bits, m.bits)});
      for (const auto& f : local.faces) {
        std::vector<Flat> g;
        for (Flat v : f) g.push_back(Flat{expand(v.bits, m.bits)});
        part.faces.insert(g);
      }
    }
    std::set<std::vector<Flat>> joined;
    for (const auto& a : total.faces)
      for (const auto& b : part.faces) {
        std::vector<Flat> c = a;
        c.insert(c.end(), b.begin(), b.end());
        std::sort(c.begin(), c.end());
        joined.insert(c);
      }
    total.faces = std::move(joined);
    total.vertices.insert(total.vertices.end(), part.vertices.begin(), part.vertices.end());
    total.stable = total.stable == 0 ? part.stable : total.stable * part.stable;
  }
  const GeomLattice& l = bm.lattice();
  std::sort(total.vertices.begin(), total.vertices.end(), [&](Flat a, Flat b) { return l.index_of(a) < l.index_of(b); });

  GammaComplex out;
  out.complete = is_complete(bm);
  out.stable_facets = total.stable;
  out.complex.vertices = total.vertices;
  auto vindex = [&](Flat f) {
    auto it = std::find(total.vertices.begin(), total.vertices.end(), f);
    return it == total.vertices.end() ? -1 : static_cast<int>(it - total.vertices.begin());
  };
  for (const auto& f : total.faces) {
    std::vector<int> face;
    for (Flat v : f) {
      int i = vindex(v);
      if (i < 0) throw Error(ErrorKind::Internal, "descent outside the gamma vertex set", {v});
      face.push_back(i);
    }
    out.complex.faces.push_back(std::move(face));
  }
  out.complex.normalize();
  std::vector<char> used(total.vertices.size(), 0);
  for (const auto& f : out.complex.faces) {
    for (int v : f) used[v] = 1;
    for (std::size_t drop = 0; drop < f.size(); ++drop) {
      std::vector<int> sub;
      for (std::size_t t = 0; t < f.size(); ++t)
        if (t != drop) sub.push_back(f[t]);
      if (!out.complex.contains(sub)) {
        out.downward_closed = false;
        out.closure_violations.push_back(sub);
      }
    }
  }
  for (std::size_t v = 0; v < used.size(); ++v)
    if (!used[v]) out.unused_vertices.push_back(static_cast<int>(v));
  return out;
}

BalanceReport balanced_check(const BuiltMatroid& bm, const SimplicialComplex& c) {
  BalanceReport r;
  const GeomLattice& l = bm.lattice();
  std::size_t max_size = 0;
  for (const auto& f : c.faces) max_size = std::max(max_size, f.size());
  for (const auto& f : c.faces) {
    std::set<int> colors;
    for (int v : f) colors.insert(l.rank(c.vertices[v]) / 2);
    if (colors.size() != f.size()) r.proper_coloring = false;
  }
  for (const auto& f : c.faces) {
    if (f.size() == max_size) continue;
    bool maximal = true;
    for (const auto& g : c.faces) {
      if (g.size() != f.size() + 1) continue;
      if (std::includes(g.begin(), g.end(), f.begin(), f.end())) { maximal = false; break; }
    }
    if (maximal) r.pure = false;
  }
  return r;
}

ComplexStats complex_stats(const SimplicialComplex& c) {
  ComplexStats st;
  std::size_t d = 0;
  for (const auto& f : c.faces) d = std::max(d, f.size());
  st.f.assign(d + 1, 0);
  for (const auto& f : c.faces) ++st.f[f.size()];
  st.dim = static_cast<int>(d) - 1;
  auto binom = [](std::int64_t n, std::int64_t k) {
    if (k < 0 || k > n) return std::int64_t{0};
    std::int64_t r = 1;
    for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
  };
  st.h.assign(d + 1, 0);
  for (std::size_t k = 0; k <= d; ++k)
    for (std::size_t i = 0; i <= k; ++i) {
      std::int64_t term = binom(static_cast<std::int64_t>(d - i), static_cast<std::int64_t>(k - i)) * st.f[i];
      st.h[k] += ((k - i) % 2 ? -term : term);
    }
  // flag: every clique of the 1-skeleton is a face
  std::set<int> verts;
  for (const auto& f : c.faces)
    if (f.size() == 1) verts.insert(f[0]);
  std::vector<int> vs(verts.begin(), verts.end());
  auto edge = [&](int a, int b) { return c.contains(a < b ? std::vector<int>{a, b} : std::vector<int>{b, a}); };
  std::vector<int> clique;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    for (std::size_t k = start; k < vs.size() && st.flag; ++k) {
      if (!std::all_of(clique.begin(), clique.end(), [&](int u) { return edge(u, vs[k]); })) continue;
      clique.push_back(vs[k]);
      if (!c.contains(clique)) st.flag = false;
      else rec(k + 1);
      clique.pop_back();
    }
  };
  rec(0);
  return st;
}

}  // namespace chowgamma
