#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "test_support.hpp"

#include <set>

using namespace chowgamma;
using namespace chowgamma::testing;

namespace {

const std::vector<Flat> kB4Bset = Fs({{1}, {2}, {3}, {4}, {1, 2}, {3, 4}, {1, 2, 3, 4}});

bool is_chain(const std::vector<Flat>& s) {
  for (Flat a : s)
    for (Flat b : s)
      if (!a.subset_of(b) && !b.subset_of(a)) return false;
  return true;
}

}  // namespace

TEST_CASE("nestedness") {
  auto mx = make_built_max(boolean(4));
  const auto& flats = mx.lattice().flats();
  for (Flat a : flats)
    for (Flat b : flats) {
      if (a == Flat{} || b == Flat{} || a == b) continue;
      std::vector<Flat> s{a, b};
      CHECK(is_nested(mx, s) == is_chain(s));
    }
  auto bm = make_built(boolean(4), kB4Bset);
  CHECK_FALSE(is_nested(bm, Fs({{1, 2}, {3, 4}})));
  CHECK(is_nested(bm, Fs({{1}, {3}})));
  CHECK(is_nested(bm, Fs({{1}, {1, 2}, {3}})));
  CHECK_ERROR(make_nested(bm, Fs({{1, 2}, {3, 4}})), ErrorKind::NotNested);

  auto un = make_built_min(boolean(4));
  CHECK(is_nested(un, Fs({{1}, {2}, {3}, {4}})));
  CHECK(is_nested_with(un.lattice(), un.bset(), Fs({{1}, {2}}), F({4})));
}

TEST_CASE("facet counts") {
  auto bm = make_built(boolean(4), kB4Bset);
  CHECK(maximal_nested_sets(bm).size() == 8);
  CHECK(maximal_nested_sets(make_built_max(boolean(3))).size() == 6);
  auto u23 = maximal_nested_sets(make_built_min(uniform(2, 3)));
  CHECK(u23.size() == 3);
  for (const auto& s : u23) CHECK(s.size() == 1);

  for (auto l : {boolean(4), uniform(3, 4), partition(4), uniform(2, 5)}) {
    for (auto b : {make_built_min(l), make_built_max(l)}) {
      auto fast = maximal_nested_sets(b);
      auto slow = maximal_nested_sets_brute_force(b);
      std::sort(fast.begin(), fast.end());
      std::sort(slow.begin(), slow.end());
      CHECK(fast == slow);
    }
  }
}

TEST_CASE("nested complexes") {
  auto bm = make_built_min(boolean(3));
  SimplicialComplex n = nested_complex(bm, ComplexVariant::Reduced);
  CHECK(n.vertices.empty());
  CHECK(n.faces.size() == 1);
  SimplicialComplex cone = nested_complex(bm, ComplexVariant::Cone);
  CHECK(cone.vertices.size() == 3);
  CHECK(cone.faces.size() == 8);
  SimplicialComplex c = nested_complex(make_built(boolean(4), kB4Bset), ComplexVariant::Cone);
  CHECK(std::find(c.vertices.begin(), c.vertices.end(), F({1, 2, 3, 4})) != c.vertices.end());

  auto mx = make_built_max(boolean(3));
  ComplexStats st = complex_stats(nested_complex(mx, ComplexVariant::Reduced));
  CHECK(st.f == std::vector<std::int64_t>({1, 6, 6}));
}

TEST_CASE("new factors") {
  auto u33 = make_built(boolean(3), Fs({{1}, {2}, {3}, {1, 2}, {1, 2, 3}}));
  CHECK(new_factor(u33, F({2, 3}), F({2})) == F({3}));
  auto mx = make_built_max(boolean(3));
  CHECK(new_factor(mx, F({1, 2}), F({1})) == F({1, 2}));
  auto bm = make_built(boolean(4), kB4Bset);
  CHECK(new_factor(bm, F({1, 2, 3, 4}), F({1, 2})) == F({1, 2, 3, 4}));
  CHECK(new_factor(bm, F({1, 2, 3}), F({1, 2})) == F({3}));
  CHECK_ERROR(new_factor(make_built_min(boolean(3)), F({1, 2, 3}), F({1})), ErrorKind::NotUnique);
}

TEST_CASE("composition") {
  auto u33 = make_built(boolean(3), Fs({{1}, {2}, {3}, {1, 2}, {1, 2, 3}}));
  NestedSet s = make_nested(u33, Fs({{2}}));
  CHECK(compose(u33, s, {{F({1, 2, 3}), Fs({{2, 3}})}}).elements() == Fs({{2}, {3}}));

  auto mx = make_built_max(boolean(4));
  NestedSet t = make_nested(mx, Fs({{1}, {1, 2}}));
  CHECK(compose(mx, t, {{F({1, 2, 3, 4}), Fs({{1, 2, 3}})}}).elements() == Fs({{1}, {1, 2}, {1, 2, 3}}));
  CHECK(compose(mx, t, {}).elements() == t.elements());
  CHECK_ERROR(compose(mx, t, {{F({3}), Fs({{3}})}}), ErrorKind::InvalidInput);
}

TEST_CASE("link decomposition") {
  auto mx = make_built_max(boolean(3));
  auto whole = link_decomposition(mx, NestedSet{});
  REQUIRE(whole.size() == 1);
  CHECK(whole[0].bottom == Flat{});
  CHECK(whole[0].top == F({1, 2, 3}));
  CHECK(whole[0].built.bset().size() == mx.bset().size());

  auto parts = link_decomposition(mx, make_nested(mx, Fs({{1}})));
  REQUIRE(parts.size() == 2);
  std::set<std::pair<Flat, Flat>> ends;
  for (const auto& p : parts) ends.insert({p.bottom, p.top});
  CHECK(ends == std::set<std::pair<Flat, Flat>>{{Flat{}, F({1})}, {F({1}), F({1, 2, 3})}});

  auto bm = make_built(boolean(4), kB4Bset);
  auto li = link_decomposition(bm, make_nested(bm, Fs({{1, 2}})));
  REQUIRE(li.size() == 2);
  for (const auto& p : li) {
    if (p.top == F({1, 2})) {
      CHECK(sorted(p.bset) == sorted(Fs({{1}, {2}, {1, 2}})));
    } else {
      CHECK(p.bottom == F({1, 2}));
      CHECK(sorted(p.bset) == sorted(Fs({{1, 2, 3}, {1, 2, 4}, {1, 2, 3, 4}})));
      CHECK(p.rank() == 2);
    }
  }
}

TEST_CASE("completion") {
  auto mx = make_built_max(boolean(3));
  NestedSet full = make_nested(mx, Fs({{1}, {1, 2}}));
  CHECK(completion(mx, full).elements() == full.elements());
  CHECK(completion(mx, make_nested(mx, Fs({{2}}))).elements() == Fs({{2}, {1, 2}}));
  CHECK(completion(mx, NestedSet{}).elements() == Fs({{1}, {1, 2}}));

  auto b8 = make_built_max(boolean(8));
  NestedSet s = make_nested(b8, Fs({{6, 7, 8}, {3, 4, 5, 6, 7, 8}}));
  CHECK(completion(b8, s).elements() ==
        Fs({{6}, {6, 7}, {6, 7, 8}, {3, 6, 7, 8}, {3, 4, 6, 7, 8}, {3, 4, 5, 6, 7, 8}, {1, 3, 4, 5, 6, 7, 8}}));
}

TEST_CASE("lambda labels") {
  auto mx = make_built_max(boolean(4));
  NestedSet chain = make_nested(mx, Fs({{2}, {2, 4}, {1, 2, 4}}));
  CHECK(lambda_label(mx, chain, F({2})) == 1);
  CHECK(lambda_label(mx, chain, F({2, 4})) == 3);
  CHECK(lambda_label(mx, chain, F({1, 2, 4})) == 0);
  CHECK(lambda_label(mx, chain, mx.lattice().top()) == 2);
  auto u23 = make_built_max(uniform(2, 3));
  CHECK_ERROR(lambda_label(u23, NestedSet{}, u23.lattice().top()), ErrorKind::RankNotOne);

  GeomLattice p3 = partition(3);
  auto pm = make_built_min(p3);
  // Atom |12| is edge 0; |13| is edge 1 and is the least element completing it to the top.
  NestedSet a = make_nested(pm, {p3.atoms()[0]});
  CHECK(lambda_label(pm, a, p3.top()) == 1);
}

TEST_CASE("descents") {
  auto b8 = make_built_max(boolean(8));
  NestedSet s = make_nested(b8, Fs({{6}, {6, 7}, {6, 7, 8}, {3, 6, 7, 8}, {3, 4, 6, 7, 8}, {3, 4, 5, 6, 7, 8},
                                    {1, 3, 4, 5, 6, 7, 8}}));
  DescentInfo d = descent_set(b8, s);
  CHECK(sorted(d.descents) == sorted(Fs({{6, 7, 8}, {3, 4, 5, 6, 7, 8}})));
  CHECK(d.des == 2);
  CHECK(d.stable());

  auto mx = make_built_max(boolean(4));
  CHECK(descent_set(mx, completion(mx, NestedSet{})).des == 0);

  auto bm = make_built(boolean(4), kB4Bset);
  auto stable = stable_maximal_nested_sets(bm);
  REQUIRE(stable.size() == 2);
  std::multiset<int> des;
  for (const auto& f : stable) des.insert(descent_set(bm, f).des);
  CHECK(des == std::multiset<int>({0, 1}));

  auto p3 = make_built_min(partition(3));
  auto sp = stable_maximal_nested_sets(p3);
  REQUIRE(sp.size() == 1);
  CHECK(descent_set(p3, sp[0]).des == 0);

  auto b3 = make_built_max(boolean(3));
  std::multiset<int> d3;
  for (const auto& f : stable_maximal_nested_sets(b3)) d3.insert(descent_set(b3, f).des);
  CHECK(d3 == std::multiset<int>({0, 1, 1}));

  CHECK_ERROR(descent_set(b3, make_nested(b3, Fs({{1}}))), ErrorKind::NotMaximal);
  CHECK_ERROR(descent_set(make_built_min(boolean(3)), NestedSet{}), ErrorKind::NotIrreducible);
}

TEST_CASE("gamma complexes") {
  GammaComplex g3 = gamma_complex(make_built_max(boolean(3)));
  CHECK(complex_stats(g3.complex).f == std::vector<std::int64_t>({1, 2}));
  CHECK(g3.complete);
  CHECK(g3.downward_closed);

  GammaComplex g2 = gamma_complex(make_built_max(uniform(2, 4)));
  CHECK(complex_stats(g2.complex).f == std::vector<std::int64_t>({1}));

  auto b7 = make_built_max(boolean(7));
  GammaComplex g7 = gamma_complex(b7);
  CHECK(balanced_check(b7, g7.complex).balanced());
  CHECK_FALSE(complex_stats(g7.complex).flag);

  for (auto l : {boolean(5), boolean(6), uniform(4, 5), partition(4), partition(5), uniform(3, 6)}) {
    auto mx = make_built_max(l);
    CHECK(balanced_check(mx, gamma_complex(mx).complex).balanced());
  }
  // Consecutive chain members cannot both be descents, so rank-3 vertices of B5 stay isolated.
  auto b5 = make_built_max(boolean(5));
  GammaComplex g5 = gamma_complex(b5);
  CHECK(complex_stats(g5.complex).f == std::vector<std::int64_t>({1, 22, 16}));
  CHECK_FALSE(balanced_check(b5, g5.complex).pure);
}

TEST_CASE("complex statistics") {
  SimplicialComplex triangle{Fs({{1}, {2}, {3}}), {{}, {0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}}};
  triangle.normalize();
  ComplexStats t = complex_stats(triangle);
  CHECK(t.f == std::vector<std::int64_t>({1, 3, 3}));
  CHECK(t.h == std::vector<std::int64_t>({1, 1, 1}));
  CHECK(t.dim == 1);
  CHECK_FALSE(t.flag);

  SimplicialComplex edge{Fs({{1}, {2}}), {{}, {0}, {1}, {0, 1}}};
  ComplexStats e = complex_stats(edge);
  CHECK(e.f == std::vector<std::int64_t>({1, 2, 1}));
  CHECK(e.h == std::vector<std::int64_t>({1, 0, 0}));
  CHECK(e.flag);

  SimplicialComplex point{Fs({{1}}), {{}, {0}}};
  auto b = make_built_max(boolean(2));
  CHECK(balanced_check(b, point).balanced());
}
