// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "chowgamma/corpus.hpp"

using namespace chowgamma;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  int checked = 0;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
  void expect(bool ok, const std::string& why) {
    ++checked;
    if (!ok) fail(why);
  }
};

Flat F(std::initializer_list<int> one_based) {
  Mask m = 0;
  for (int x : one_based) m |= bit(x - 1);
  return Flat{m};
}

bool same_built(const BuiltMatroid& a, const BuiltMatroid& b) {
  return a.ground_size() == b.ground_size() && a.lattice().flats() == b.lattice().flats() && a.bset() == b.bset();
}

const std::vector<CorpusInstance>& corpus() {
  static const std::vector<CorpusInstance> c = build_corpus();
  return c;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<ModularCut> compatible_cuts(const BuiltMatroid& bm) {
  std::vector<ModularCut> out;
  for (auto& cut : all_modular_cuts(bm.lattice(), true))
    if (cut.proper && cut.nonempty && is_g_compatible(bm, cut)) out.push_back(std::move(cut));
  return out;
}

// ---------------------------------------------------------------- 1

Outcome golden_values() {
  Outcome o;
  {
    auto u33 = make_built_max(lattice_of_flats(make_uniform(3, 3)));
    o.expect(chow_polynomial(u33) == Polynomial({1, 4, 1}), "U33 g_max");
    std::vector<Polynomial> inter;
    chow_by_filtration(u33, g_min(u33.lattice()), &inter);
    o.expect(inter.size() >= 3 && inter[1] == Polynomial({1, 1}) && inter[2] == Polynomial({1, 2, 1}),
             "U33 filtration intermediates");
  }
  for (int n = 3; n <= 7; ++n) {
    auto bm = make_built_min(lattice_of_flats(make_uniform(n - 1, n)));
    o.expect(chow_polynomial(bm) == Polynomial(std::vector<std::int64_t>(n - 1, 1)), "U(n-1,n) g_min, n=" + std::to_string(n));
  }
  {
    auto bm = make_built(lattice_of_flats(make_boolean(4)), {F({1}), F({2}), F({3}), F({4}), F({1, 2}), F({3, 4}), F({1, 2, 3, 4})});
    Polynomial h = chow_polynomial(bm);
    o.expect(h == Polynomial({1, 3, 3, 1}), "B4 non-complete: H");
    o.expect(gamma_expansion(h).as_polynomial() == Polynomial({1}), "B4 non-complete: gamma = [1,0]");
    o.expect(gamma_expansion(h).gammas == std::vector<std::int64_t>({1, 0}), "B4 non-complete: gamma vector length");
    Polynomial d = gamma_by_descents(bm);
    o.expect(d == Polynomial({1, 1}), "B4 non-complete: descent sum");
    o.expect(!(d == gamma_expansion(h).as_polynomial()), "B4 non-complete: mismatch reported");
    o.expect(maximal_nested_sets(bm).size() == 8, "B4 non-complete: 8 facets");
    std::multiset<int> des;
    for (const auto& s : stable_maximal_nested_sets(bm)) des.insert(descent_set(bm, s).des);
    o.expect(des == std::multiset<int>({0, 1}), "B4 non-complete: stable descent multiset");
  }
  {
    auto bm = make_built_max(lattice_of_flats(make_boolean(8)));
    NestedSet s = make_nested(bm, {F({6}), F({6, 7}), F({6, 7, 8}), F({3, 6, 7, 8}), F({3, 4, 6, 7, 8}),
                                   F({3, 4, 5, 6, 7, 8}), F({1, 3, 4, 5, 6, 7, 8})});
    DescentInfo d = descent_set(bm, s);
    o.expect(std::set<Flat>(d.descents.begin(), d.descents.end()) == std::set<Flat>({F({6, 7, 8}), F({3, 4, 5, 6, 7, 8})}),
             "B8 descent set");
    const Flat a = F({6, 7, 8}), b = F({3, 4, 5, 6, 7, 8}), top = bm.lattice().top();
    std::set<std::map<Flat, int>> expected = {
        {{a, 1}, {b, 1}},         {{a, 1}, {b, 1}, {top, 1}}, {{a, 2}, {b, 1}},         {{a, 1}, {b, 2}},
        {{a, 2}, {b, 1}, {top, 1}}, {{a, 1}, {b, 2}, {top, 1}}, {{a, 2}, {b, 2}},         {{a, 2}, {b, 2}, {top, 1}}};
    std::set<std::map<Flat, int>> got;
    std::multiset<int> degrees;
    for (const auto& m : psi_fiber(bm, s)) {
      std::map<Flat, int> x;
      for (std::size_t i = 0; i < m.support.size(); ++i) x[m.support[i]] = m.exponents[i];
      got.insert(x);
      degrees.insert(m.degree());
    }
    o.expect(got == expected, "B8 fiber monomials");
    o.expect(degrees == std::multiset<int>({2, 3, 3, 3, 4, 4, 4, 5}), "B8 fiber degrees");
  }
  {
    auto bm = make_built_max(lattice_of_flats(make_boolean(7)));
    GammaComplex g = gamma_complex(bm);
    auto has = [&](std::vector<Flat> face) {
      std::vector<int> idx;
      for (Flat f : face) {
        auto it = std::find(g.complex.vertices.begin(), g.complex.vertices.end(), f);
        if (it == g.complex.vertices.end()) return false;
        idx.push_back(static_cast<int>(it - g.complex.vertices.begin()));
      }
      std::sort(idx.begin(), idx.end());
      return g.complex.contains(idx);
    };
    const Flat x = F({6, 7}), y = F({2, 3, 6, 7}), z = F({2, 3, 4, 5, 6, 7});
    o.expect(has({x, z}) && has({y, z}) && has({x, y}), "B7 Gamma edges");
    o.expect(!has({x, y, z}), "B7 Gamma triangle absent");
  }
  if (o.pass) o.detail = std::to_string(o.checked) + " golden values";
  return o;
}

// ---------------------------------------------------------------- 2

Outcome three_way_agreement() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  int filtration = 0, oracle = 0;
  o.expect(corpus().size() >= 200, "corpus has fewer than 200 instances");
  for (const auto& x : corpus()) {
    const Polynomial h = chow_polynomial(x.built);
    o.expect(h == chow_by_deletion(x.built), x.name + ": deletion recursion disagrees");
    o.expect(h.is_palindromic() && h[0] == 1, x.name + ": not palindromic");
    o.expect(h.degree() == x.built.rank() - static_cast<int>(x.built.maximal_elements().size()), x.name + ": degree");
    try {
      Polynomial f = chow_by_filtration(x.built, g_min(x.built.lattice()));
      ++filtration;
      o.expect(f == h, x.name + ": filtration disagrees");
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NoBinaryFiltration && e.kind() != ErrorKind::MixedFactorStep) throw;
    }
    if (toric_oracle_applicable(x.built)) {
      ++oracle;
      o.expect(toric_hilbert_oracle(x.built, 6) == h, x.name + ": toric oracle disagrees");
    }
  }
  const double secs = seconds_since(t0);
  o.expect(secs <= 600, "over the 10 minute budget");
  o.detail = o.pass ? std::to_string(corpus().size()) + " instances, filtration on " + std::to_string(filtration) +
                          ", oracle on " + std::to_string(oracle) + ", " + std::to_string(secs).substr(0, 5) + "s"
                    : o.detail;
  return o;
}

// ---------------------------------------------------------------- 3, 4, 5, 8

std::vector<const BuiltMatroid*> complete_instances() {
  static std::vector<BuiltMatroid> extra;
  if (extra.empty()) {
    auto b5 = std::make_shared<const GeomLattice>(lattice_of_flats(make_boolean(5)));
    for (auto& b : chordal_building_sets(*b5, 5)) extra.emplace_back(b5, std::move(b));
  }
  std::vector<const BuiltMatroid*> out;
  for (const auto& x : corpus())
    if (x.complete) out.push_back(&x.built);
  for (const auto& bm : extra) out.push_back(&bm);
  return out;
}

Outcome descent_formula() {
  Outcome o;
  for (const BuiltMatroid* bm : complete_instances()) {
    if (!bm->is_irreducible()) continue;
    o.expect(is_complete(*bm), "instance marked complete fails the check");
    o.expect(gamma_by_descents(*bm) == gamma_expansion(chow_polynomial(*bm)).as_polynomial(),
             to_string(bm->bset().elements()) + ": descent formula");
  }
  for (int n = 3; n <= 5; ++n) {
    auto bm = make_built_min(lattice_of_flats(make_partition(n)));
    o.expect(is_complete(bm), "partition lattice not complete in the lexicographic edge order");
    o.expect(gamma_by_descents(bm) == gamma_expansion(chow_polynomial(bm)).as_polynomial(), "partition descent formula");
  }
  o.detail = o.pass ? std::to_string(o.checked) + " checks" : o.detail;
  return o;
}

Outcome gamma_complex_properties() {
  Outcome o;
  for (const BuiltMatroid* bm : complete_instances()) {
    GammaComplex g = gamma_complex(*bm);
    const std::string name = to_string(bm->bset().elements());
    o.expect(g.downward_closed, name + ": Gamma not downward closed");
    ComplexStats st = complex_stats(g.complex);
    GammaVector gv = gamma_expansion(chow_polynomial(*bm));
    std::vector<std::int64_t> f = st.f, gam = gv.gammas;
    while (!gam.empty() && gam.back() == 0) gam.pop_back();
    o.expect(f == gam, name + ": f(Gamma) != gamma");
  }
  int maximal = 0;
  for (const auto& x : corpus()) {
    if (x.kind != "max" && !(x.built.bset() == g_max(x.built.lattice()))) continue;
    ++maximal;
    GammaComplex g = gamma_complex(x.built);
    o.expect(balanced_check(x.built, g.complex).proper_coloring, x.name + ": coloring not proper");
  }
  o.detail = o.pass ? std::to_string(o.checked) + " checks, " + std::to_string(maximal) + " maximal instances" : o.detail;
  return o;
}

Outcome gamma_positivity() {
  Outcome o;
  for (const auto& x : corpus())
    if (x.complete || is_flag(x.built))
      o.expect(gamma_expansion(chow_polynomial(x.built)).is_positive(), x.name + ": negative gamma");
  for (const BuiltMatroid* bm : complete_instances())
    o.expect(gamma_expansion(chow_polynomial(*bm)).is_positive(), to_string(bm->bset().elements()) + ": negative gamma");
  o.detail = o.pass ? std::to_string(o.checked) + " instances" : o.detail;
  return o;
}

// ---------------------------------------------------------------- 6

Outcome maximal_real_rooted() {
  Outcome o;
  for (const auto& x : corpus()) {
    if (!(x.built.bset() == g_max(x.built.lattice())) || x.built.rank() > 6) continue;
    o.expect(is_real_rooted(chow_polynomial(x.built)), x.name + ": not real-rooted");
  }
  for (int n = 1; n <= 7; ++n)
    o.expect(is_real_rooted(chow_polynomial(make_built_max(lattice_of_flats(make_boolean(n))))), "Boolean g_max");
  o.detail = o.pass ? std::to_string(o.checked) + " instances" : o.detail;
  return o;
}

// ---------------------------------------------------------------- 7

Outcome extension_invariance() {
  Outcome o;
  int cuts = 0;
  for (const auto& x : corpus()) {
    const BuiltMatroid& bm = x.built;
    if (bm.lattice().size() > 200) continue;
    const Polynomial h = chow_polynomial(bm);
    const int n = bm.ground_size();
    for (const auto& cut : compatible_cuts(bm)) {
      ++cuts;
      BuiltMatroid ext = extend(bm, cut);
      o.expect(chow_polynomial(ext) == h, x.name + ": extension changes H");
      if (bm.lattice().is_simple()) o.expect(same_built(delete_element(ext, n), bm), x.name + ": extend then delete");
      o.expect(same_built(contract(ext, Flat{bit(n)}), truncate(bm, cut)), x.name + ": extend then contract");
    }
  }
  o.detail = o.pass ? std::to_string(cuts) + " cuts" : o.detail;
  return o;
}

// ---------------------------------------------------------------- 8

Outcome fiber_property() {
  Outcome o;
  int fibers = 0;
  for (const BuiltMatroid* bm : complete_instances()) {
    if (!bm->is_irreducible()) continue;
    try {
      auto fs = psi_fibers(*bm);
      fibers += static_cast<int>(fs.size());
      std::int64_t total = 0;
      for (const auto& f : fs) total += static_cast<std::int64_t>(f.size);
      o.expect(total == chow_polynomial(*bm).value_at_one(), "fiber sizes do not sum to H(1)");
    } catch (const Error& e) {
      o.expect(false, e.what());
    }
  }
  o.detail = o.pass ? std::to_string(o.checked) + " instances, " + std::to_string(fibers) + " fibers" : o.detail;
  return o;
}

// ---------------------------------------------------------------- 9

Outcome moduli_application() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  for (int n = 2; n <= 7; ++n) {
    auto l = std::make_shared<const GeomLattice>(lattice_of_flats(make_partition(n)));
    BuiltMatroid bm(l, g_min(*l));
    const std::string tag = "n=" + std::to_string(n);
    const Polynomial h = chow_polynomial(bm);
    o.expect(h == chow_by_deletion(bm), tag + ": deletion");
    const GammaVector gv = gamma_expansion(h);
    const Polynomial trees = m0n_gamma(n, TreeDescentRule::NestedConsistent);
    o.expect(trees == gv.as_polynomial(), tag + ": tree gamma");
    // Stable trees map onto stable facets with the same descent number.
    std::map<NestedSet, int> from_trees;
    for (const auto& t : stable_trees(n, TreeDescentRule::NestedConsistent))
      from_trees.emplace(tree_nested_set(*l, n, t), static_cast<int>(tree_descents(t, TreeDescentRule::NestedConsistent).descents.size()));
    std::map<NestedSet, int> from_facets;
    if (n >= 2 && bm.rank() >= 1)
      for (const auto& s : stable_maximal_nested_sets(bm)) from_facets.emplace(s, descent_set(bm, s).des);
    o.expect(from_trees == from_facets, tag + ": tree bijection");
    std::vector<std::int64_t> f = gv.gammas;
    while (f.size() > 1 && f.back() == 0) f.pop_back();
    o.expect(kruskal_katona_check(f), tag + ": Kruskal-Katona");
  }
  const double secs = seconds_since(t0);
  o.expect(secs <= 300, "over the 5 minute budget");
  o.detail = o.pass ? "n=2..7 in " + std::to_string(secs).substr(0, 5) + "s" : o.detail;
  return o;
}

// ---------------------------------------------------------------- 10

Outcome stability() {
  Outcome o;
  for (const auto& x : corpus()) {
    const BuiltMatroid& bm = x.built;
    const GeomLattice& l = bm.lattice();
    const bool flag = is_flag(bm);
    if (!x.complete && !flag) continue;
    for (Flat f : l.flats()) {
      if (f == l.bottom() || f == l.top()) continue;
      if (x.complete) {
        o.expect(is_complete(restrict(bm, f)), x.name + ": restriction loses completeness at " + to_string(f));
        o.expect(is_complete(contract(bm, f)), x.name + ": contraction loses completeness at " + to_string(f));
      }
      if (flag) {
        o.expect(is_flag(restrict(bm, f)), x.name + ": restriction loses flagness at " + to_string(f));
        o.expect(is_flag(contract(bm, f)), x.name + ": contraction loses flagness at " + to_string(f));
      }
    }
    if (l.is_simple()) {
      if (x.complete) {
        const int m = bm.order().max_of(l.ground());
        o.expect(is_complete(delete_element(bm, m)), x.name + ": deletion of the maximum loses completeness");
      }
      if (flag)
        for (int e = 0; e < bm.ground_size(); ++e)
          o.expect(is_flag(delete_element(bm, e)), x.name + ": deletion loses flagness");
    }
    if (x.complete && l.size() <= 200) {
      for (const auto& cut : all_modular_cuts(l, true)) {
        if (!is_g_compatible(bm, cut)) continue;
        if (!cut.proper || !cut.nonempty || !cut.atom_free) continue;
        o.expect(is_complete(truncate(bm, cut)), x.name + ": truncation loses completeness");
        o.expect(is_complete(extend(bm, cut)), x.name + ": extension loses completeness");
      }
    }
  }
  o.detail = o.pass ? std::to_string(o.checked) + " checks" : o.detail;
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"golden values", golden_values},
      {"three-way Chow agreement", three_way_agreement},
      {"descent formula on complete instances", descent_formula},
      {"Gamma complex: downward closed, f = gamma, balanced", gamma_complex_properties},
      {"gamma-positivity of flag and complete instances", gamma_positivity},
      {"real-rootedness for maximal building sets of rank <= 6", maximal_real_rooted},
      {"extension invariance and round trips", extension_invariance},
      {"Psi-fiber property", fiber_property},
      {"moduli space application n <= 7", moduli_application},
      {"stability under minors, truncation, extension, deletion", stability},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    if (!o.pass) ++failures;
    std::printf("[%s] %2zu %s (%s; %.2fs)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str(),
                seconds_since(t0));
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
