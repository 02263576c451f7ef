#include "chowgamma/chow.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>

namespace chowgamma {

int FYMonomial::degree() const { return std::accumulate(exponents.begin(), exponents.end(), 0); }

// ---------------------------------------------------------------- FY basis

void for_each_fy_support(const BuiltMatroid& bm,
                         const std::function<void(const std::vector<Flat>&, const std::vector<int>&)>& visit) {
  const GeomLattice& l = bm.lattice();
  const auto& bset = bm.bset().elements();
  std::vector<Flat> cur;
  std::vector<int> gaps;
  // Candidates arrive in lattice order, so nothing added later sits below an earlier member.
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    visit(cur, gaps);
    for (std::size_t k = start; k < bset.size(); ++k) {
      Flat f = bset[k];
      Mask below = 0;
      for (Flat g : cur)
        if (g.strict_subset_of(f)) below |= g.bits;
      const int gap = l.rank(f) - l.rank_of_set(below);
      if (gap < 2) continue;
      if (!is_nested_with(l, bm.bset(), cur, f)) continue;
      cur.push_back(f);
      gaps.push_back(gap);
      rec(k + 1);
      cur.pop_back();
      gaps.pop_back();
    }
  };
  rec(0);
}

void for_each_fy_monomial(const BuiltMatroid& bm, const std::function<void(const FYMonomial&)>& visit) {
  for_each_fy_support(bm, [&](const std::vector<Flat>& support, const std::vector<int>& gaps) {
    FYMonomial m{support, std::vector<int>(support.size(), 1)};
    while (true) {
      visit(m);
      std::size_t i = 0;
      while (i < m.exponents.size() && m.exponents[i] == gaps[i] - 1) m.exponents[i++] = 1;
      if (i == m.exponents.size()) break;
      ++m.exponents[i];
    }
  });
}

std::vector<FYMonomial> fy_monomials(const BuiltMatroid& bm) {
  std::vector<FYMonomial> out;
  for_each_fy_monomial(bm, [&](const FYMonomial& m) { out.push_back(m); });
  return out;
}

Polynomial chow_polynomial(const BuiltMatroid& bm) {
  Polynomial h;
  for_each_fy_support(bm, [&](const std::vector<Flat>&, const std::vector<int>& gaps) {
    Polynomial term = Polynomial::one();
    for (int g : gaps) term = term * Polynomial::range(1, g - 1);
    h += term;
  });
  return h;
}

// ---------------------------------------------------------------- Deletion recursion

namespace {

struct KeyHash {
  std::size_t operator()(const std::vector<Mask>& v) const {
    std::size_t h = v.size();
    for (Mask x : v) h ^= std::hash<Mask>{}(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

using DeletionMemo = std::unordered_map<std::vector<Mask>, Polynomial, KeyHash>;

std::vector<Mask> memo_key(const BuiltMatroid& bm) {
  const GeomLattice& l = bm.lattice();
  std::vector<Mask> key{static_cast<Mask>(l.ground_size()), static_cast<Mask>(l.size())};
  std::vector<Mask> flats;
  for (Flat f : l.flats()) flats.push_back(f.bits);
  std::sort(flats.begin(), flats.end());
  key.insert(key.end(), flats.begin(), flats.end());
  std::vector<Mask> b;
  for (Flat g : bm.bset().elements()) b.push_back(g.bits);
  std::sort(b.begin(), b.end());
  key.insert(key.end(), b.begin(), b.end());
  return key;
}

Polynomial deletion_rec(const BuiltMatroid& input, DeletionMemo& memo) {
  if (input.rank() <= 1) return Polynomial::one();
  if (!input.lattice().is_simple()) return deletion_rec(simplify(input).built, memo);
  const BuiltMatroid& bm = input;
  std::vector<Mask> key = memo_key(bm);
  if (auto it = memo.find(key); it != memo.end()) return it->second;

  Polynomial h;
  if (!bm.is_irreducible()) {
    h = Polynomial::one();
    for (Flat m : bm.maximal_elements()) h = h * deletion_rec(restrict(bm, m), memo);
  } else {
    const GeomLattice& l = bm.lattice();
    const int e = bm.order().max_of(l.ground());
    const Mask keep = l.ground() & ~bit(e);
    BuiltMatroid del = delete_element(bm, e);
    h = deletion_rec(del, memo);
    for (Flat f : bm.bset().elements()) {
      if (!f.contains(e) || f.size() == 1) continue;
      Flat fe{f.bits & ~bit(e)};
      if (l.rank_of_set(fe.bits) != l.rank(f) - 1) continue;
      Flat fd{squeeze(fe.bits, keep)};
      const int nf = static_cast<int>(factors(del, fd).size());
      h += Polynomial::range(1, nf) * deletion_rec(restrict(del, fd), memo) * deletion_rec(contract(bm, f), memo);
    }
  }
  memo.emplace(std::move(key), h);
  return h;
}

}  // namespace

Polynomial chow_by_deletion(const BuiltMatroid& bm) {
  DeletionMemo memo;
  return deletion_rec(bm, memo);
}

// ---------------------------------------------------------------- Filtration

Polynomial chow_by_filtration(const BuiltMatroid& bm, const BuildingSet& base, std::vector<Polynomial>* intermediates) {
  const GeomLattice& l = bm.lattice();
  if (!base.subset_of(bm.bset()))
    throw Error(ErrorKind::NotContained, "base building set is not contained in the target", base.elements());
  Filtration fl = greedy_binary_filtration(l, base, bm.bset());
  Polynomial h = chow_polynomial(bm.with_bset(base));
  if (intermediates) intermediates->push_back(h);
  for (std::size_t k = 0; k < fl.length(); ++k) {
    BuiltMatroid cur = bm.with_bset(fl.steps[k]);
    const Flat f = fl.added[k];
    std::vector<Flat> parts = factors_in(fl.steps[k].elements(), f);
    if (parts.size() != 2) throw Error(ErrorKind::NoBinaryFiltration, "step adding " + to_string(f) + " is not binary", parts);
    const bool m0 = cur.is_maximal(parts[0]), m1 = cur.is_maximal(parts[1]);
    if (m0 && m1) {
      h = h * Polynomial::one_plus_t(1);
    } else if (!m0 && !m1) {
      NestedSet a = NestedSet::from_elements(l, parts);
      Polynomial star = Polynomial::monomial(1);
      for (const auto& li : link_decomposition(cur, a)) star = star * chow_polynomial(li.built);
      h += star;
    } else {
      throw Error(ErrorKind::MixedFactorStep, "step adding " + to_string(f) + " joins a maximal and a non-maximal factor",
                  parts);
    }
    if (intermediates) intermediates->push_back(h);
  }
  return h;
}

// ---------------------------------------------------------------- Toric presentation

namespace {

constexpr std::size_t kOracleMaxRays = 12;
constexpr int kOracleMaxRank = 6;

using Monomial = std::vector<std::pair<int, int>>;  // (ray, exponent), sorted by ray
using SparseRow = std::map<int, mpq_class>;

// Incremental row echelon form over the rationals.
class Echelon {
 public:
  bool insert(SparseRow row) {
    while (!row.empty()) {
      auto lead = row.begin();
      auto p = pivots_.find(lead->first);
      if (p == pivots_.end()) {
        mpq_class inv = 1 / lead->second;
        for (auto& [c, v] : row) v *= inv;
        pivots_.emplace(lead->first, std::move(row));
        return true;
      }
      mpq_class factor = lead->second;
      for (const auto& [c, v] : p->second) {
        auto it = row.find(c);
        if (it == row.end()) {
          row.emplace(c, -factor * v);
        } else {
          it->second -= factor * v;
          if (it->second == 0) row.erase(it);
        }
      }
    }
    return false;
  }
  std::size_t rank() const { return pivots_.size(); }

 private:
  std::map<int, SparseRow> pivots_;
};

}  // namespace

bool toric_oracle_applicable(const BuiltMatroid& bm) {
  return bm.rank() <= kOracleMaxRank && bm.bset().size() - bm.maximal_elements().size() <= kOracleMaxRays;
}

Polynomial toric_hilbert_oracle(const BuiltMatroid& bm, int max_rank) {
  const GeomLattice& l = bm.lattice();
  if (bm.rank() > max_rank || !toric_oracle_applicable(bm))
    throw Error(ErrorKind::TooLarge, "instance exceeds the toric oracle limits");
  SimplicialComplex n = nested_complex(bm, ComplexVariant::Reduced);
  const int nrays = static_cast<int>(n.vertices.size());

  std::vector<std::vector<int>> forms;
  for (Flat m : bm.maximal_elements()) {
    std::vector<int> els = elements_of(m.bits);
    const int i0 = els.front();
    for (std::size_t k = 1; k < els.size(); ++k) {
      std::vector<int> form(nrays, 0);
      for (int r = 0; r < nrays; ++r) form[r] = int(n.vertices[r].contains(els[k])) - int(n.vertices[r].contains(i0));
      forms.push_back(std::move(form));
    }
  }

  // Standard monomials of the face ring, degree by degree.
  std::vector<std::map<Monomial, int>> basis(bm.rank() + 1);
  for (const auto& face : n.faces) {
    const int s = static_cast<int>(face.size());
    for (int d = std::max(s, 0); d <= bm.rank(); ++d) {
      if (s == 0 && d > 0) break;
      std::vector<int> ex(s, 1);
      int extra = d - s;
      std::function<void(int, int)> fill = [&](int i, int left) {
        if (i == s) {
          if (left) return;
          Monomial mono;
          for (int j = 0; j < s; ++j) mono.emplace_back(face[j], ex[j]);
          basis[d].emplace(std::move(mono), 0);
          return;
        }
        for (int a = 0; a <= left; ++a) {
          ex[i] = 1 + a;
          fill(i + 1, left - a);
        }
      };
      fill(0, extra);
    }
  }
  for (auto& level : basis) {
    int c = 0;
    for (auto& [mono, idx] : level) idx = c++;
  }

  std::vector<std::int64_t> dims;
  for (int d = 0; d <= bm.rank(); ++d) {
    const auto& target = basis[d];
    Echelon ech;
    if (d > 0) {
      for (const auto& [mono, idx] : basis[d - 1])
        for (const auto& form : forms) {
          SparseRow row;
          for (int r = 0; r < nrays; ++r) {
            if (!form[r]) continue;
            Monomial prod = mono;
            auto it = std::find_if(prod.begin(), prod.end(), [&](const auto& p) { return p.first == r; });
            if (it != prod.end()) {
              ++it->second;
            } else {
              prod.emplace_back(r, 1);
              std::sort(prod.begin(), prod.end());
            }
            auto col = target.find(prod);
            if (col == target.end()) continue;  // not a face: zero in the face ring
            row[col->second] += form[r];
            if (row[col->second] == 0) row.erase(col->second);
          }
          if (!row.empty()) ech.insert(std::move(row));
        }
    }
    dims.push_back(static_cast<std::int64_t>(target.size() - ech.rank()));
  }
  (void)l;
  return Polynomial(std::move(dims));
}

// ---------------------------------------------------------------- Descents and fibers

Polynomial gamma_by_descents(const BuiltMatroid& bm) {
  Polynomial g;
  for (const auto& s : stable_maximal_nested_sets(bm)) g += Polynomial::monomial(descent_set(bm, s).des);
  return g;
}

NestedSet psi(const BuiltMatroid& bm, const FYMonomial& m) {
  std::vector<Flat> core;
  for (Flat f : m.support)
    if (!bm.is_maximal(f)) core.push_back(f);
  return completion(bm, NestedSet::from_elements(bm.lattice(), std::move(core)));
}

std::vector<FYMonomial> psi_fiber(const BuiltMatroid& bm, const NestedSet& facet) {
  const GeomLattice& l = bm.lattice();
  const auto& els = facet.elements();
  const std::size_t k = els.size();
  if (k >= 64) throw Error(ErrorKind::TooLarge, "facet too large for fiber enumeration");
  std::vector<FYMonomial> out;
  for (Mask sub = 0; sub < (Mask{1} << k); ++sub) {
    std::vector<Flat> t;
    for_each_element(sub, [&](int i) { t.push_back(els[i]); });
    std::vector<Flat> support = t;
    for (Flat m : bm.maximal_elements()) support.push_back(m);
    std::sort(support.begin(), support.end(), [&](Flat a, Flat b) { return l.index_of(a) < l.index_of(b); });
    std::vector<int> gaps;
    bool ok = true;
    for (Flat f : support) {
      Mask below = 0;
      for (Flat g : support)
        if (g.strict_subset_of(f)) below |= g.bits;
      const int gap = l.rank(f) - l.rank_of_set(below);
      if (gap < 2 && !bm.is_maximal(f)) ok = false;
      gaps.push_back(gap);
    }
    if (!ok) continue;
    if (!(completion(bm, NestedSet::from_elements(l, t)) == facet)) continue;
    // Maximal elements may be present with exponent 1..gap-1 or absent (exponent 0).
    std::vector<int> ex(support.size(), 1), lo(support.size(), 1);
    for (std::size_t i = 0; i < support.size(); ++i)
      if (bm.is_maximal(support[i])) ex[i] = lo[i] = 0;
    while (true) {
      FYMonomial m;
      for (std::size_t i = 0; i < support.size(); ++i)
        if (ex[i] > 0) {
          m.support.push_back(support[i]);
          m.exponents.push_back(ex[i]);
        }
      out.push_back(std::move(m));
      std::size_t i = 0;
      while (i < ex.size() && ex[i] >= gaps[i] - 1) ex[i] = lo[i], ++i;
      if (i == ex.size()) break;
      ++ex[i];
    }
  }
  return out;
}

std::vector<PsiFiber> psi_fibers(const BuiltMatroid& bm) {
  if (!bm.is_irreducible()) throw Error(ErrorKind::NotIrreducible, "fibers need an irreducible built matroid");
  const int r = bm.rank();
  std::vector<PsiFiber> out;
  std::map<NestedSet, std::size_t> index;
  Polynomial total;
  for (const auto& s : stable_maximal_nested_sets(bm)) {
    PsiFiber f;
    f.facet = s;
    f.des = descent_set(bm, s).des;
    for (const auto& m : psi_fiber(bm, s)) {
      ++f.size;
      f.polynomial += Polynomial::monomial(m.degree());
    }
    const Polynomial expected = Polynomial::monomial(f.des) * Polynomial::one_plus_t(r - 1 - 2 * f.des);
    if (!(f.polynomial == expected))
      throw Error(ErrorKind::FiberMismatch,
                  "fiber over " + to_string(s.elements()) + " is " + f.polynomial.to_string() + ", expected " +
                      expected.to_string(),
                  s.elements());
    total += f.polynomial;
    index.emplace(s, out.size());
    out.push_back(std::move(f));
  }
  // Every basis monomial must land on a stable facet, and the counts must match the fibers.
  std::vector<std::size_t> hits(out.size(), 0);
  for_each_fy_monomial(bm, [&](const FYMonomial& m) {
    NestedSet s = psi(bm, m);
    auto it = index.find(s);
    if (it == index.end())
      throw Error(ErrorKind::FiberMismatch, "monomial lands on non-stable facet " + to_string(s.elements()), s.elements());
    ++hits[it->second];
  });
  for (std::size_t i = 0; i < out.size(); ++i)
    if (hits[i] != out[i].size)
      throw Error(ErrorKind::FiberMismatch, "fiber over " + to_string(out[i].facet.elements()) + " has inconsistent size",
                  out[i].facet.elements());
  if (!(total == chow_polynomial(bm))) throw Error(ErrorKind::FiberMismatch, "fibers do not sum to the Chow polynomial");
  return out;
}

}  // namespace chowgamma
