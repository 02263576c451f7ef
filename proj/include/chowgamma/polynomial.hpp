#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "chowgamma/error.hpp"

namespace chowgamma {

std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);
std::int64_t binomial(std::int64_t n, std::int64_t k);

/// Integer polynomial in t, ascending coefficients, trailing zeros trimmed.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<std::int64_t> coeffs);

  static Polynomial one() { return Polynomial({1}); }
  static Polynomial monomial(int k, std::int64_t c = 1);
  /// t^lo + t^(lo+1) + ... + t^hi
  static Polynomial range(int lo, int hi);
  /// (1+t)^k
  static Polynomial one_plus_t(int k);

  const std::vector<std::int64_t>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  std::int64_t operator[](int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : 0; }
  std::int64_t value_at_one() const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  bool is_palindromic() const;
  std::string to_string() const;

 private:
  void trim();
  std::vector<std::int64_t> c_;
};

struct GammaVector {
  std::vector<std::int64_t> gammas;
  int degree = 0;  // degree d of the source polynomial

  bool is_positive() const;
  Polynomial as_polynomial() const { return Polynomial(gammas); }
  /// sum gamma_i t^i (1+t)^(d-2i)
  Polynomial reconstruct() const;
};

GammaVector gamma_expansion(const Polynomial& p);

/// Number of distinct real roots, by an exact Sturm sequence over the rationals.
int count_distinct_real_roots(const Polynomial& p);
/// Every complex root is real (multiplicities allowed).
bool is_real_rooted(const Polynomial& p);

struct PolyDiagnostics {
  bool palindromic = false;
  bool unimodal = false;
  bool log_concave = false;
  bool no_internal_zeros = false;
  bool gamma_positive = false;
  bool real_rooted = false;
};

PolyDiagnostics poly_diagnostics(const Polynomial& p);

/// f = (f_0 = 1, f_1, ...) with f_i the number of faces of size i.
bool kruskal_katona_check(std::span<const std::int64_t> f);

struct GVectorReport {
  std::vector<std::int64_t> g;
  bool nonnegative = true;
  bool second_bound = true;    // g_2 <= C(g_1, 2) when g_2 exists
  bool balanced_bound = true;  // 4 gamma_2 <= gamma_1^2 when gamma has length 3
};

GVectorReport g_vector_report(const Polynomial& p);

}  // namespace chowgamma
