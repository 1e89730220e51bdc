#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace densepoly {

// Laurent polynomial in q with exact integer coefficients and exponents in
// units of 1/24 (the finest granularity needed: conformal prefactors live in
// 24ths, string weights in halves). Exponent arguments and keys are always in
// these units, e.g. q^{1/2} has key 12.
class QExpPoly {
 public:
  using Exp = std::int64_t;
  static constexpr Exp kUnit = 24;  // keys per integer power of q

  QExpPoly() = default;

  static QExpPoly zero() { return {}; }
  static QExpPoly one() { return monomial(0); }
  static QExpPoly monomial(Exp exp24, const mpz_class& coeff = 1);

  bool is_zero() const { return terms_.empty(); }
  const std::map<Exp, mpz_class>& terms() const { return terms_; }
  mpz_class coefficient(Exp exp24) const;
  // Smallest exponent present; throws std::domain_error on the zero polynomial.
  Exp min_exponent() const;
  mpz_class evaluate_at_one() const;
  bool nonnegative() const;

  QExpPoly& operator+=(const QExpPoly& other);
  QExpPoly& operator-=(const QExpPoly& other);
  friend QExpPoly operator+(QExpPoly a, const QExpPoly& b) { return a += b; }
  friend QExpPoly operator-(QExpPoly a, const QExpPoly& b) { return a -= b; }
  friend QExpPoly operator*(const QExpPoly& a, const QExpPoly& b);
  QExpPoly operator-() const;
  bool operator==(const QExpPoly&) const = default;

  // Multiplication by q^{exp24/24}.
  QExpPoly shifted(Exp exp24) const;
  // Drops every term with exponent strictly above cap24.
  QExpPoly truncated(Exp cap24) const;
  // Exact division by (1 - q^{k24/24}) with k24 > 0, ascending synthetic
  // division; throws std::domain_error when the division leaves a remainder.
  QExpPoly divided_by_one_minus(Exp k24) const;

  // Ascending pretty form: integer exponents unbraced ("q^2"), fractional or
  // negative exponents braced and reduced ("q^{1/2}", "q^{-1/24}"), unit
  // coefficients omitted. The zero polynomial prints "0".
  std::string to_string() const;

 private:
  std::map<Exp, mpz_class> terms_;
  void add_term(Exp exp24, const mpz_class& coeff);
};

// Gaussian binomial [a, b]_q; zero when b < 0 or b > a.
QExpPoly q_binomial(int a, int b);

// A double-column configuration: strictly decreasing occupied levels
// L (|L| = m) and R (|R| = n) within {1, ..., M}. Admissible means m <= n and
// L_j <= R_j for each j (columns aligned from the top).
struct DoubleColumn {
  std::vector<int> left;
  std::vector<int> right;
  bool operator==(const DoubleColumn&) const = default;
  auto operator<=>(const DoubleColumn&) const = default;
};

bool double_column_admissible(const DoubleColumn& column);
// Total energy: sum of all occupied levels in both columns.
long long double_column_energy(const DoubleColumn& column);
// All configurations with |L| = m, |R| = n in {1..M}, optionally restricted
// to admissible ones; sorted.
std::vector<DoubleColumn> enumerate_double_columns(int M, int m, int n,
                                                   bool admissible_only = true);

// q-Narayana polynomial via the determinant-style closed form
//   q^{m(m+1)/2 + n(n+1)/2} ([M,m][M,n] - q^{n-m+1} [M,m-1][M,n+1]);
// equals the energy generating sum over admissible (m, n) configurations.
QExpPoly q_narayana(int M, int m, int n);

// Weight-preserving bijection from inadmissible (m, n) configurations onto
// admissible (m-1, n+1) configurations (split at the minimal violation), and
// its inverse. Both throw std::invalid_argument on inputs outside their
// domain.
DoubleColumn narayana_bijection(const DoubleColumn& column);
DoubleColumn narayana_bijection_inverse(const DoubleColumn& column);

enum class CatalanKind { plain, primed };

// q-Catalan polynomials. plain:
//   C_{M,r} = q^{r(r-1)/2} (1-q^r) / (1-q^{M+1}) [2M+2, M+1-r]
// primed:
//   C'_{M,r} = q^{(r-1)^2/2} (1-q^{2r}) / (1-q^{M+r+1}) [2M+1, M+1-r]
// with C_{M,0} = 0 and C_{M,-r} = -C_{M,r}; the division is exact.
QExpPoly q_catalan(int M, int r, CatalanKind kind);

enum class RhoParity { even, odd };

// Finitized Kac character chi^(N)_{r,s} including the q^{-c/24 + Delta_{r,s}}
// prefactor. The lower binomial indices shift by 1/2 between the two seam
// parities realizing the same r.
QExpPoly finitized_character(int N, int r, int s, RhoParity parity);

// Sum of q-Catalan blocks selected for the (N, rho, s) sector, without the
// conformal prefactor: this is the spectrum generating function over energy
// labels. Multiplying by q^{-c/24} (s odd) or q^{-c/24 - 1/8} (s even)
// reproduces finitized_character.
QExpPoly selection_sum(int N, int rho, int s);

// Irreducible character ch_{r,s} (s = 1 or 2) truncated at absolute exponent
// cap24; extended by ch_{0,s} = 0 and ch_{-r,s} = -ch_{r,s}.
QExpPoly irreducible_character_capped(int r, int s, QExpPoly::Exp cap24);

// Kac character chi_{r,s} as a q-series with terms up to q^{leading + order}.
QExpPoly character_series(int r, int s, int order);
// Sum of irreducible characters in the decomposition of chi_{r,s}, truncated
// at the same absolute cap as character_series(r, s, order).
QExpPoly character_decomposition(int r, int s, int order);

}  // namespace densepoly
