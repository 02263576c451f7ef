#include "chowgamma/polynomial.hpp"

#include <gmpxx.h>

#include <algorithm>

namespace chowgamma {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorKind::Overflow, "integer overflow in addition");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorKind::Overflow, "integer overflow in multiplication");
  return r;
}

std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = checked_mul(r, n - k + i) / i;
  return r;
}

// ---------------------------------------------------------------- Polynomial

Polynomial::Polynomial(std::vector<std::int64_t> coeffs) : c_(std::move(coeffs)) { trim(); }

void Polynomial::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Polynomial Polynomial::monomial(int k, std::int64_t c) {
  std::vector<std::int64_t> v(k + 1, 0);
  v[k] = c;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::range(int lo, int hi) {
  if (hi < lo) return Polynomial();
  std::vector<std::int64_t> v(hi + 1, 0);
  for (int i = lo; i <= hi; ++i) v[i] = 1;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::one_plus_t(int k) {
  std::vector<std::int64_t> v(k + 1);
  for (int i = 0; i <= k; ++i) v[i] = binomial(k, i);
  return Polynomial(std::move(v));
}

std::int64_t Polynomial::value_at_one() const {
  std::int64_t s = 0;
  for (auto c : c_) s = checked_add(s, c);
  return s;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = checked_add(c_[i], o.c_[i]);
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = checked_add(c_[i], checked_mul(-1, o.c_[i]));
  trim();
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return Polynomial();
  std::vector<std::int64_t> v(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] = checked_add(v[i + j], checked_mul(a.c_[i], b.c_[j]));
  return Polynomial(std::move(v));
}

bool Polynomial::is_palindromic() const {
  if (c_.empty()) return false;
  return std::equal(c_.begin(), c_.end(), c_.rbegin());
}

std::string Polynomial::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(c_[i]);
  }
  return s + "]";
}

// ---------------------------------------------------------------- Gamma

bool GammaVector::is_positive() const {
  return std::all_of(gammas.begin(), gammas.end(), [](std::int64_t g) { return g >= 0; });
}

Polynomial GammaVector::reconstruct() const {
  Polynomial sum;
  for (std::size_t i = 0; i < gammas.size(); ++i)
    sum += Polynomial::monomial(static_cast<int>(i), gammas[i]) * Polynomial::one_plus_t(degree - 2 * static_cast<int>(i));
  return sum;
}

GammaVector gamma_expansion(const Polynomial& p) {
  if (!p.is_palindromic()) throw Error(ErrorKind::NotPalindromic, "polynomial " + p.to_string() + " is not palindromic");
  GammaVector g;
  g.degree = p.degree();
  Polynomial residual = p;
  for (int i = 0; 2 * i <= g.degree; ++i) {
    std::int64_t gi = residual[i];
    g.gammas.push_back(gi);
    residual -= Polynomial::monomial(i, gi) * Polynomial::one_plus_t(g.degree - 2 * i);
  }
  if (!residual.is_zero()) throw Error(ErrorKind::Internal, "gamma expansion left a residual");
  return g;
}

// ---------------------------------------------------------------- Sturm sequences

namespace {

using QPoly = std::vector<mpq_class>;

void qtrim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly to_q(const Polynomial& p) {
  QPoly q;
  for (auto c : p.coeffs()) q.emplace_back(static_cast<long>(c));
  return q;
}

QPoly derivative(const QPoly& p) {
  QPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
  qtrim(d);
  return d;
}

// a = quot * b + rem
void divmod(const QPoly& a, const QPoly& b, QPoly& quot, QPoly& rem) {
  rem = a;
  quot.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  while (!rem.empty() && rem.size() >= b.size()) {
    std::size_t shift = rem.size() - b.size();
    mpq_class c = rem.back() / b.back();
    quot[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) rem[shift + i] -= c * b[i];
    rem.pop_back();
    qtrim(rem);
  }
  qtrim(quot);
}

QPoly gcd(QPoly a, QPoly b) {
  while (!b.empty()) {
    QPoly q, r;
    divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

int sign_changes(const std::vector<int>& signs) {
  int changes = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

int sgn(const mpq_class& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

int sturm_count(const QPoly& q) {
  if (q.size() <= 1) return 0;
  std::vector<QPoly> seq{q, derivative(q)};
  while (true) {
    QPoly quot, rem;
    divmod(seq[seq.size() - 2], seq.back(), quot, rem);
    if (rem.empty()) break;
    for (auto& c : rem) c = -c;
    seq.push_back(std::move(rem));
  }
  std::vector<int> at_pos, at_neg;
  for (const auto& s : seq) {
    int lead = sgn(s.back());
    at_pos.push_back(lead);
    at_neg.push_back((s.size() - 1) % 2 ? -lead : lead);
  }
  return sign_changes(at_neg) - sign_changes(at_pos);
}

}  // namespace

int count_distinct_real_roots(const Polynomial& p) { return sturm_count(to_q(p)); }

bool is_real_rooted(const Polynomial& p) {
  if (p.is_zero()) return false;
  QPoly q = to_q(p);
  QPoly squarefree, rem;
  divmod(q, gcd(q, derivative(q)), squarefree, rem);
  const int degree = static_cast<int>(squarefree.size()) - 1;
  return degree <= 0 || sturm_count(squarefree) == degree;
}

// ---------------------------------------------------------------- Diagnostics

PolyDiagnostics poly_diagnostics(const Polynomial& p) {
  PolyDiagnostics d;
  const auto& c = p.coeffs();
  d.palindromic = p.is_palindromic();
  std::size_t i = 0;
  while (i + 1 < c.size() && c[i] <= c[i + 1]) ++i;
  while (i + 1 < c.size() && c[i] >= c[i + 1]) ++i;
  d.unimodal = !c.empty() && i + 1 >= c.size();
  std::size_t first = 0, last = c.size();
  while (first < c.size() && c[first] == 0) ++first;
  while (last > first && c[last - 1] == 0) --last;
  d.no_internal_zeros = std::all_of(c.begin() + first, c.begin() + last, [](std::int64_t x) { return x != 0; });
  bool lc = true;
  for (std::size_t k = 1; k + 1 < c.size(); ++k) {
    __int128 lhs = static_cast<__int128>(c[k]) * c[k];
    __int128 rhs = static_cast<__int128>(c[k - 1]) * c[k + 1];
    if (lhs < rhs) lc = false;
  }
  d.log_concave = lc && d.no_internal_zeros;
  d.gamma_positive = d.palindromic && gamma_expansion(p).is_positive();
  d.real_rooted = is_real_rooted(p);
  return d;
}

bool kruskal_katona_check(std::span<const std::int64_t> f) {
  if (f.empty() || f[0] != 1) return false;
  for (auto x : f)
    if (x < 0) return false;
  for (std::size_t i = 1; i + 1 < f.size(); ++i) {
    // i-th Macaulay cascade of f_i, shifted up one level
    std::int64_t rest = f[i];
    std::int64_t bound = 0;
    for (std::int64_t k = static_cast<std::int64_t>(i); k >= 1 && rest > 0; --k) {
      std::int64_t a = k;
      while (binomial(a + 1, k) <= rest) ++a;
      rest -= binomial(a, k);
      bound = checked_add(bound, binomial(a, k + 1));
    }
    if (f[i + 1] > bound) return false;
  }
  return true;
}

GVectorReport g_vector_report(const Polynomial& p) {
  GVectorReport r;
  const int d = p.degree();
  r.g.push_back(p[0]);
  for (int i = 1; 2 * i <= d; ++i) r.g.push_back(p[i] - p[i - 1]);
  r.nonnegative = std::all_of(r.g.begin(), r.g.end(), [](std::int64_t x) { return x >= 0; });
  if (r.g.size() >= 3) r.second_bound = r.g[2] <= binomial(r.g[1], 2);
  if (p.is_palindromic()) {
    GammaVector gv = gamma_expansion(p);
    if (gv.gammas.size() == 3) {
      __int128 lhs = static_cast<__int128>(4) * gv.gammas[2];
      __int128 rhs = static_cast<__int128>(gv.gammas[1]) * gv.gammas[1];
      r.balanced_bound = lhs <= rhs;
    }
  }
  return r;
}

}  // namespace chowgamma
