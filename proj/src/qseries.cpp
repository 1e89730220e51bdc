#include "densepoly/qseries.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "densepoly/linkstates.hpp"

namespace densepoly {

void QExpPoly::add_term(Exp exp24, const mpz_class& coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = terms_.emplace(exp24, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

QExpPoly QExpPoly::monomial(Exp exp24, const mpz_class& coeff) {
  QExpPoly p;
  p.add_term(exp24, coeff);
  return p;
}

mpz_class QExpPoly::coefficient(Exp exp24) const {
  auto it = terms_.find(exp24);
  return it == terms_.end() ? mpz_class(0) : it->second;
}

QExpPoly::Exp QExpPoly::min_exponent() const {
  if (terms_.empty()) throw std::domain_error("min_exponent of zero polynomial");
  return terms_.begin()->first;
}

mpz_class QExpPoly::evaluate_at_one() const {
  mpz_class total = 0;
  for (auto& [e, c] : terms_) total += c;
  return total;
}

bool QExpPoly::nonnegative() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const auto& t) { return t.second >= 0; });
}

QExpPoly& QExpPoly::operator+=(const QExpPoly& other) {
  for (auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

QExpPoly& QExpPoly::operator-=(const QExpPoly& other) {
  for (auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

QExpPoly operator*(const QExpPoly& a, const QExpPoly& b) {
  QExpPoly product;
  for (auto& [ea, ca] : a.terms_)
    for (auto& [eb, cb] : b.terms_) product.add_term(ea + eb, ca * cb);
  return product;
}

QExpPoly QExpPoly::operator-() const {
  QExpPoly negated;
  for (auto& [e, c] : terms_) negated.terms_.emplace(e, -c);
  return negated;
}

QExpPoly QExpPoly::shifted(Exp exp24) const {
  QExpPoly result;
  for (auto& [e, c] : terms_) result.terms_.emplace(e + exp24, c);
  return result;
}

QExpPoly QExpPoly::truncated(Exp cap24) const {
  QExpPoly result;
  for (auto& [e, c] : terms_) {
    if (e > cap24) break;
    result.terms_.emplace(e, c);
  }
  return result;
}

QExpPoly QExpPoly::divided_by_one_minus(Exp k24) const {
  if (k24 <= 0)
    throw std::invalid_argument("divided_by_one_minus: step must be positive");
  if (terms_.empty()) return {};
  QExpPoly quotient;
  QExpPoly remainder = *this;
  Exp limit = remainder.terms_.rbegin()->first;
  while (!remainder.terms_.empty()) {
    auto lowest = *remainder.terms_.begin();
    if (lowest.first > limit)
      throw std::domain_error("divided_by_one_minus: inexact division");
    quotient.add_term(lowest.first, lowest.second);
    remainder.add_term(lowest.first, -lowest.second);
    remainder.add_term(lowest.first + k24, lowest.second);
  }
  return quotient;
}

namespace {

std::string exponent_suffix(QExpPoly::Exp e24) {
  if (e24 == QExpPoly::kUnit) return "q";
  auto g = std::gcd(e24 < 0 ? -e24 : e24, QExpPoly::kUnit);
  auto num = e24 / g;
  auto den = QExpPoly::kUnit / g;
  if (den == 1 && num >= 0) return "q^" + std::to_string(num);
  if (den == 1) return "q^{" + std::to_string(num) + "}";
  return "q^{" + std::to_string(num) + "/" + std::to_string(den) + "}";
}

}  // namespace

std::string QExpPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto& [e, c] : terms_) {
    std::string term;
    if (e == 0) {
      term = c.get_str();
    } else {
      if (c == 1)
        term = exponent_suffix(e);
      else if (c == -1)
        term = "-" + exponent_suffix(e);
      else
        term = c.get_str() + exponent_suffix(e);
    }
    if (!out.empty() && term[0] != '-') out += '+';
    out += term;
  }
  return out;
}

namespace {

// Coefficient vector of [a, b]_q by integer power of q.
std::vector<mpz_class> gauss_coeffs(int a, int b) {
  if (b < 0 || b > a) return {};
  b = std::min(b, a - b);
  // Row update [aa, bb] = [aa-1, bb-1] + q^bb [aa-1, bb].
  std::vector<std::vector<mpz_class>> row(b + 1);
  row[0] = {1};
  for (int aa = 1; aa <= a; ++aa) {
    for (int bb = std::min(aa, b); bb >= 1; --bb) {
      const auto& keep = row[bb];          // [aa-1, bb]
      const auto& lower = row[bb - 1];     // [aa-1, bb-1]
      if (bb == aa) {
        row[bb] = lower;
        continue;
      }
      std::vector<mpz_class> next(std::max(lower.size(), keep.size() + bb));
      for (std::size_t i = 0; i < lower.size(); ++i) next[i] = lower[i];
      for (std::size_t i = 0; i < keep.size(); ++i) next[i + bb] += keep[i];
      row[bb] = std::move(next);
    }
  }
  return row[b];
}

QExpPoly from_integer_coeffs(const std::vector<mpz_class>& coeffs) {
  QExpPoly p;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i] != 0) p += QExpPoly::monomial(QExpPoly::kUnit * static_cast<QExpPoly::Exp>(i), coeffs[i]);
  return p;
}

void descending_subsets(int M, int size, std::vector<int>& current,
                        std::vector<std::vector<int>>& out) {
  if (static_cast<int>(current.size()) == size) {
    out.push_back(current);
    return;
  }
  int highest = current.empty() ? M : current.back() - 1;
  int remaining = size - static_cast<int>(current.size());
  for (int level = highest; level >= remaining; --level) {
    current.push_back(level);
    descending_subsets(M, size, current, out);
    current.pop_back();
  }
}

std::vector<std::vector<int>> level_sets(int M, int size) {
  std::vector<std::vector<int>> out;
  if (size < 0 || size > M) return out;
  std::vector<int> current;
  descending_subsets(M, size, current, out);
  return out;
}

}  // namespace

QExpPoly q_binomial(int a, int b) {
  if (a < 0) throw std::invalid_argument("q_binomial: negative upper index");
  return from_integer_coeffs(gauss_coeffs(a, b));
}

bool double_column_admissible(const DoubleColumn& column) {
  if (column.left.size() > column.right.size()) return false;
  for (std::size_t j = 0; j < column.left.size(); ++j)
    if (column.left[j] > column.right[j]) return false;
  return true;
}

long long double_column_energy(const DoubleColumn& column) {
  long long energy = 0;
  for (int level : column.left) energy += level;
  for (int level : column.right) energy += level;
  return energy;
}

std::vector<DoubleColumn> enumerate_double_columns(int M, int m, int n,
                                                   bool admissible_only) {
  if (M < 0) throw std::invalid_argument("enumerate_double_columns: M < 0");
  std::vector<DoubleColumn> out;
  for (auto& left : level_sets(M, m)) {
    for (auto& right : level_sets(M, n)) {
      DoubleColumn column{left, right};
      if (admissible_only && !double_column_admissible(column)) continue;
      out.push_back(std::move(column));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

QExpPoly q_narayana(int M, int m, int n) {
  if (M < 0) throw std::invalid_argument("q_narayana: M < 0");
  if (m < 0 || n < m || n > M) return {};
  QExpPoly::Exp pref = QExpPoly::kUnit *
      (static_cast<QExpPoly::Exp>(m) * (m + 1) / 2 +
       static_cast<QExpPoly::Exp>(n) * (n + 1) / 2);
  QExpPoly head = q_binomial(M, m) * q_binomial(M, n);
  QExpPoly tail = q_binomial(M, m - 1) * q_binomial(M, n + 1);
  return (head - tail.shifted(QExpPoly::kUnit * (n - m + 1))).shifted(pref);
}

DoubleColumn narayana_bijection(const DoubleColumn& column) {
  const auto& left = column.left;
  const auto& right = column.right;
  std::size_t violation = left.size();
  for (std::size_t j = 0; j < left.size(); ++j) {
    if (j >= right.size() || left[j] > right[j]) {
      violation = j;
      break;
    }
  }
  if (violation == left.size())
    throw std::invalid_argument("narayana_bijection: configuration is admissible");
  DoubleColumn out;
  out.left.assign(right.begin(), right.begin() + violation);
  out.left.insert(out.left.end(), left.begin() + violation + 1, left.end());
  out.right.assign(left.begin(), left.begin() + violation + 1);
  out.right.insert(out.right.end(), right.begin() + violation, right.end());
  return out;
}

DoubleColumn narayana_bijection_inverse(const DoubleColumn& column) {
  const auto& left = column.left;
  const auto& right = column.right;
  // First index where the left level drops below the right one, padding the
  // left column with zeros; always exists for a nonempty right column.
  std::size_t split = right.size();
  for (std::size_t i = 0; i < right.size(); ++i) {
    int left_level = i < left.size() ? left[i] : 0;
    if (left_level < right[i]) {
      split = i;
      break;
    }
  }
  if (split == right.size())
    throw std::invalid_argument("narayana_bijection_inverse: no split point");
  DoubleColumn out;
  out.left.assign(right.begin(), right.begin() + split + 1);
  out.left.insert(out.left.end(), left.begin() + split, left.end());
  out.right.assign(left.begin(), left.begin() + split);
  out.right.insert(out.right.end(), right.begin() + split + 1, right.end());
  return out;
}

QExpPoly q_catalan(int M, int r, CatalanKind kind) {
  if (M < 0) throw std::invalid_argument("q_catalan: M < 0");
  if (r == 0) return {};
  if (r < 0) return -q_catalan(M, -r, kind);
  QExpPoly numerator;
  QExpPoly::Exp divisor_step;
  if (kind == CatalanKind::plain) {
    QExpPoly::Exp pref =
        QExpPoly::kUnit * (static_cast<QExpPoly::Exp>(r) * (r - 1) / 2);
    numerator = (QExpPoly::one() - QExpPoly::monomial(QExpPoly::kUnit * r))
                    .shifted(pref) *
                q_binomial(2 * M + 2, M + 1 - r);
    divisor_step = QExpPoly::kUnit * (M + 1);
  } else {
    QExpPoly::Exp pref = 12 * static_cast<QExpPoly::Exp>(r - 1) * (r - 1);
    numerator = (QExpPoly::one() - QExpPoly::monomial(QExpPoly::kUnit * 2 * r))
                    .shifted(pref) *
                q_binomial(2 * M + 1, M + 1 - r);
    divisor_step = QExpPoly::kUnit * (M + r + 1);
  }
  if (numerator.is_zero()) return {};
  return numerator.divided_by_one_minus(divisor_step);
}

namespace {

// q^{-c/24 + Delta_{r,s}} exponent in 1/24 units, at c = -2,
// Delta_{r,s} = ((2r-s)^2 - 1)/8.
QExpPoly::Exp conformal_prefactor24(int r, int s) {
  QExpPoly::Exp d = 2LL * r - s;
  return 2 + 3 * (d * d - 1);
}

}  // namespace

QExpPoly finitized_character(int N, int r, int s, RhoParity parity) {
  if (N < 1 || r < 1 || s < 1)
    throw std::invalid_argument("finitized_character: indices must be positive");
  int twice_upper = N - 2 * r + s;
  int twice_lower = N - 2 * r - s;
  if (parity == RhoParity::odd) {
    ++twice_upper;
    ++twice_lower;
  }
  if (twice_upper % 2 != 0)
    throw std::invalid_argument("finitized_character: N inconsistent with parity");
  QExpPoly body = q_binomial(N, twice_upper / 2) -
                  q_binomial(N, twice_lower / 2)
                      .shifted(QExpPoly::kUnit * static_cast<QExpPoly::Exp>(r) * s);
  return body.shifted(conformal_prefactor24(r, s));
}

QExpPoly selection_sum(int N, int rho, int s) {
  SeamLayout layout{N, rho, s};
  layout.validate();
  QExpPoly::Exp half_shift = 12LL * N;  // q^{N/2}
  QExpPoly total;
  if (s % 2 == 1) {
    if (rho % 2 == 0) {
      int M = (N - 1) / 2;
      for (int k = 1; k <= s; ++k)
        total += q_catalan(M, (rho - s - 1 + 2 * k) / 2, CatalanKind::plain);
    } else {
      int M = (N - 2) / 2;
      for (int k = 1; k <= s; ++k) {
        total += q_catalan(M, (rho - s + 2 * k) / 2, CatalanKind::plain);
        total += q_catalan(M, (rho - s - 2 + 2 * k) / 2, CatalanKind::plain)
                     .shifted(half_shift);
      }
    }
  } else {
    if (rho % 2 == 0) {
      int M = N / 2;
      for (int k = 1; k <= s / 2; ++k)
        total += q_catalan(M, (rho - s - 2 + 4 * k) / 2, CatalanKind::primed);
    } else {
      int M = (N - 1) / 2;
      for (int k = 1; k <= s / 2; ++k) {
        total += q_catalan(M, (rho - s - 1 + 4 * k) / 2, CatalanKind::primed);
        total += q_catalan(M, (rho - s - 3 + 4 * k) / 2, CatalanKind::primed)
                     .shifted(half_shift);
      }
    }
  }
  return total;
}

namespace {

// (1 - q^{rs}) / (q)_infinity as an integer-exponent series up to q^order,
// starting at q^0.
QExpPoly vacuum_series(int rs, int order) {
  if (order < 0) return {};
  // Partition generating function truncated at q^order.
  std::vector<mpz_class> partitions(order + 1);
  partitions[0] = 1;
  for (int part = 1; part <= order; ++part)
    for (int total = part; total <= order; ++total)
      partitions[total] += partitions[total - part];
  QExpPoly series = from_integer_coeffs(partitions);
  QExpPoly body = series - series.shifted(QExpPoly::kUnit * rs);
  return body.truncated(QExpPoly::kUnit * static_cast<QExpPoly::Exp>(order));
}

}  // namespace

QExpPoly irreducible_character_capped(int r, int s, QExpPoly::Exp cap24) {
  if (s != 1 && s != 2)
    throw std::invalid_argument("irreducible_character_capped: s must be 1 or 2");
  if (r == 0) return {};
  if (r < 0) return -irreducible_character_capped(-r, s, cap24);
  QExpPoly::Exp pref = conformal_prefactor24(r, s);
  if (cap24 < pref) return {};
  int order = static_cast<int>((cap24 - pref) / QExpPoly::kUnit);
  return vacuum_series(r * s, order).shifted(pref).truncated(cap24);
}

QExpPoly character_series(int r, int s, int order) {
  if (r < 1 || s < 1)
    throw std::invalid_argument("character_series: indices must be positive");
  if (order < 0) throw std::invalid_argument("character_series: negative order");
  QExpPoly::Exp pref = conformal_prefactor24(r, s);
  return vacuum_series(r * s, order).shifted(pref);
}

QExpPoly character_decomposition(int r, int s, int order) {
  if (r < 1 || s < 1)
    throw std::invalid_argument("character_decomposition: indices must be positive");
  if (order < 0)
    throw std::invalid_argument("character_decomposition: negative order");
  QExpPoly::Exp cap24 =
      conformal_prefactor24(r, s) + QExpPoly::kUnit * static_cast<QExpPoly::Exp>(order);
  QExpPoly total;
  if (s % 2 == 1) {
    for (int k = 1; k <= s; ++k)
      total += irreducible_character_capped((2 * r - s - 1 + 2 * k) / 2, 1, cap24);
  } else {
    for (int k = 1; k <= s / 2; ++k)
      total += irreducible_character_capped((2 * r - s - 2 + 4 * k) / 2, 2, cap24);
  }
  return total.truncated(cap24);
}

}  // namespace densepoly
