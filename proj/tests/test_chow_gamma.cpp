#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "test_support.hpp"

#include <set>

using namespace chowgamma;
using namespace chowgamma::testing;

namespace {

const std::vector<Flat> kB4Bset = Fs({{1}, {2}, {3}, {4}, {1, 2}, {3, 4}, {1, 2, 3, 4}});

std::multiset<int> degrees(const BuiltMatroid& bm) {
  std::multiset<int> out;
  for (const auto& m : fy_monomials(bm)) out.insert(m.degree());
  return out;
}

bool has_monomial(const BuiltMatroid& bm, const std::map<Flat, int>& want) {
  for (const auto& m : fy_monomials(bm)) {
    std::map<Flat, int> got;
    for (std::size_t i = 0; i < m.support.size(); ++i) got[m.support[i]] = m.exponents[i];
    if (got == want) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("polynomial arithmetic") {
  CHECK(Polynomial::one_plus_t(3) == Polynomial({1, 3, 3, 1}));
  CHECK(Polynomial::range(1, 3) == Polynomial({0, 1, 1, 1}));
  CHECK(Polynomial::monomial(2, 5) * Polynomial({1, 1}) == Polynomial({0, 0, 5, 5}));
  CHECK((Polynomial({1, 2}) - Polynomial({1, 2})).is_zero());
  CHECK(Polynomial({1, 4, 1}).is_palindromic());
  CHECK_FALSE(Polynomial({1, 4, 2}).is_palindromic());
  CHECK(Polynomial({1, 4, 1}).value_at_one() == 6);
  CHECK(binomial(10, 3) == 120);
  CHECK_ERROR(checked_mul(std::int64_t{1} << 40, std::int64_t{1} << 40), ErrorKind::Overflow);
}

TEST_CASE("gamma expansion") {
  CHECK(gamma_expansion(Polynomial({1, 4, 1})).gammas == std::vector<std::int64_t>({1, 2}));
  CHECK(gamma_expansion(Polynomial::one_plus_t(3)).gammas == std::vector<std::int64_t>({1, 0}));
  GammaVector g = gamma_expansion(Polynomial({1, 1, 1}));
  CHECK(g.gammas == std::vector<std::int64_t>({1, -1}));
  CHECK_FALSE(g.is_positive());
  CHECK(g.reconstruct() == Polynomial({1, 1, 1}));
  CHECK_ERROR(gamma_expansion(Polynomial({1, 2})), ErrorKind::NotPalindromic);
}

TEST_CASE("diagnostics") {
  PolyDiagnostics a = poly_diagnostics(Polynomial({1, 4, 1}));
  CHECK(a.real_rooted);
  CHECK(a.gamma_positive);
  PolyDiagnostics b = poly_diagnostics(Polynomial({1, 1, 1}));
  CHECK_FALSE(b.real_rooted);
  CHECK_FALSE(b.gamma_positive);
  CHECK(b.unimodal);
  PolyDiagnostics c = poly_diagnostics(Polynomial::one_plus_t(3));
  CHECK((c.palindromic && c.unimodal && c.log_concave && c.no_internal_zeros && c.gamma_positive && c.real_rooted));
  CHECK(count_distinct_real_roots(Polynomial({-1, 0, 1})) == 2);
  CHECK(is_real_rooted(Polynomial::one_plus_t(4)));
}

TEST_CASE("f-vector checks") {
  const std::vector<std::int64_t> simplex{1, 3, 3, 1}, bad{1, 2, 4}, gamma{1, 2};
  CHECK(kruskal_katona_check(simplex));
  CHECK_FALSE(kruskal_katona_check(bad));
  CHECK(kruskal_katona_check(gamma));
  GVectorReport r = g_vector_report(Polynomial({1, 4, 1}));
  CHECK(r.nonnegative);
  CHECK(r.balanced_bound);
}

TEST_CASE("FY monomials") {
  CHECK(degrees(make_built_min(partition(3))) == std::multiset<int>({0, 1}));
  CHECK(degrees(make_built_min(uniform(2, 3))) == std::multiset<int>({0, 1}));
  auto b8 = make_built_max(boolean(8));
  const Flat a = F({6, 7, 8}), b = F({3, 4, 5, 6, 7, 8});
  CHECK(has_monomial(b8, {{a, 1}, {b, 1}}));
  CHECK(has_monomial(b8, {{a, 2}, {b, 2}, {b8.lattice().top(), 1}}));
  CHECK_FALSE(has_monomial(b8, {{a, 3}, {b, 1}}));
}

TEST_CASE("Chow polynomials") {
  CHECK(chow_polynomial(make_built_max(uniform(3, 3))) == Polynomial({1, 4, 1}));
  for (int n = 3; n <= 6; ++n)
    CHECK(chow_polynomial(make_built_min(uniform(n - 1, n))) == Polynomial(std::vector<std::int64_t>(n - 1, 1)));
  auto b4 = make_built(boolean(4), kB4Bset);
  CHECK(chow_polynomial(b4) == Polynomial::one_plus_t(3));
  CHECK(chow_polynomial(make_built_min(partition(4))) == Polynomial({1, 5, 1}));
}

TEST_CASE("deletion recursion") {
  CHECK(chow_by_deletion(make_built_max(boolean(2))) == Polynomial({1, 1}));
  CHECK(chow_by_deletion(make_built_max(uniform(3, 3))) == Polynomial({1, 4, 1}));
  CHECK(chow_by_deletion(make_built_min(uniform(2, 3))) == Polynomial({1, 1}));
  for (auto l : {partition(4), uniform(3, 5), boolean(4)})
    for (auto bm : {make_built_min(l), make_built_max(l)}) CHECK(chow_by_deletion(bm) == chow_polynomial(bm));
}

TEST_CASE("filtration recursion") {
  auto u33 = make_built_max(uniform(3, 3));
  std::vector<Polynomial> steps;
  CHECK(chow_by_filtration(u33, g_min(u33.lattice()), &steps) == Polynomial({1, 4, 1}));
  REQUIRE(steps.size() == 5);
  CHECK(steps[0] == Polynomial::one());
  CHECK(steps[1] == Polynomial({1, 1}));
  CHECK(steps[2] == Polynomial({1, 2, 1}));
  CHECK(steps[4] == Polynomial({1, 4, 1}));
  CHECK(chow_by_filtration(u33, u33.bset()) == Polynomial({1, 4, 1}));
  auto b4 = make_built(boolean(4), kB4Bset);
  CHECK(chow_by_filtration(b4, g_min(b4.lattice())) == Polynomial::one_plus_t(3));
}

TEST_CASE("toric oracle") {
  auto u23 = make_built_min(uniform(2, 3));
  CHECK(toric_hilbert_oracle(u23, 6) == Polynomial({1, 1}));
  CHECK(toric_hilbert_oracle(make_built_max(uniform(3, 3)), 6) == Polynomial({1, 4, 1}));
  CHECK(toric_hilbert_oracle(make_built_min(boolean(3)), 6) == Polynomial::one());
  auto p4 = make_built_min(partition(4));
  CHECK(toric_hilbert_oracle(p4, 6) == chow_polynomial(p4));
  auto big = make_built_max(boolean(5));
  CHECK_FALSE(toric_oracle_applicable(big));
  CHECK_ERROR(toric_hilbert_oracle(big, 6), ErrorKind::TooLarge);
}

TEST_CASE("descent formula") {
  CHECK(gamma_by_descents(make_built_max(boolean(3))) == Polynomial({1, 2}));
  CHECK(gamma_by_descents(make_built(boolean(4), kB4Bset)) == Polynomial({1, 1}));
  CHECK(gamma_by_descents(make_built_min(partition(4))) == Polynomial({1, 3}));
  for (auto l : {boolean(5), uniform(4, 6), partition(5)}) {
    auto mx = make_built_max(l);
    CHECK(gamma_by_descents(mx) == gamma_expansion(chow_polynomial(mx)).as_polynomial());
  }
}

TEST_CASE("fibers") {
  auto b3 = make_built_max(boolean(3));
  std::multiset<std::vector<std::int64_t>> polys;
  for (const auto& f : psi_fibers(b3)) polys.insert(f.polynomial.coeffs());
  CHECK(polys == std::multiset<std::vector<std::int64_t>>({{1, 2, 1}, {0, 1}, {0, 1}}));

  auto b8 = make_built_max(boolean(8));
  NestedSet s = make_nested(b8, Fs({{6}, {6, 7}, {6, 7, 8}, {3, 6, 7, 8}, {3, 4, 6, 7, 8}, {3, 4, 5, 6, 7, 8},
                                    {1, 3, 4, 5, 6, 7, 8}}));
  auto fiber = psi_fiber(b8, s);
  CHECK(fiber.size() == 8);
  for (const auto& m : fiber) CHECK(psi(b8, m) == s);

  auto mx = make_built_max(boolean(4));
  NestedSet plain = completion(mx, NestedSet{});
  Polynomial total;
  for (const auto& m : psi_fiber(mx, plain)) total += Polynomial::monomial(m.degree());
  CHECK(total == Polynomial::one_plus_t(3));
}
