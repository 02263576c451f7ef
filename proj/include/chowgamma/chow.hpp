#pragma once

#include <functional>
#include <vector>

#include "chowgamma/nested.hpp"
#include "chowgamma/polynomial.hpp"

namespace chowgamma {

struct FYMonomial {
  std::vector<Flat> support;  // lattice order; may contain maximal elements
  std::vector<int> exponents;
  int degree() const;
};

/// Visits every admissible support with the rank gap of each member (gap >= 2 throughout).
void for_each_fy_support(const BuiltMatroid& bm,
                         const std::function<void(const std::vector<Flat>&, const std::vector<int>&)>& visit);
void for_each_fy_monomial(const BuiltMatroid& bm, const std::function<void(const FYMonomial&)>& visit);
std::vector<FYMonomial> fy_monomials(const BuiltMatroid& bm);

Polynomial chow_polynomial(const BuiltMatroid& bm);
Polynomial chow_by_deletion(const BuiltMatroid& bm);
/// Walks a binary filtration from `base` up to the building set of bm. When `intermediates`
/// is given it receives the value after each step.
Polynomial chow_by_filtration(const BuiltMatroid& bm, const BuildingSet& base,
                              std::vector<Polynomial>* intermediates = nullptr);
/// Graded dimensions of the toric presentation, by exact linear algebra up to degree max_rank.
Polynomial toric_hilbert_oracle(const BuiltMatroid& bm, int max_rank);
bool toric_oracle_applicable(const BuiltMatroid& bm);

/// Sum of t^des over stable facets. Irreducible inputs only.
Polynomial gamma_by_descents(const BuiltMatroid& bm);

NestedSet psi(const BuiltMatroid& bm, const FYMonomial& m);
/// FY monomials whose completion is the given facet.
std::vector<FYMonomial> psi_fiber(const BuiltMatroid& bm, const NestedSet& facet);

struct PsiFiber {
  NestedSet facet;
  int des = 0;
  std::size_t size = 0;
  Polynomial polynomial;
};

/// One fiber per stable facet; throws FiberMismatch when a fiber or the partition fails.
std::vector<PsiFiber> psi_fibers(const BuiltMatroid& bm);

}  // namespace chowgamma
