#include "densepoly/scaling.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "densepoly/spectra.hpp"

namespace densepoly {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

double bulk_free_energy(double u) {
  double x = std::sin(2 * u);
  auto integrand = [x](double t) { return std::log1p(std::sin(t) * x); };
  double integral = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      integrand, 0.0, kPi / 2, 15, 1e-12);
  return -integral / kPi;
}

double boundary_free_energy(double u, RhoParity parity, int) {
  return parity == RhoParity::odd ? std::log1p(std::sin(2 * u)) : 0.0;
}

double kac_weight(int r, int s) {
  double d = 2.0 * r - s;
  return (d * d - 1.0) / 8.0;
}

ConformalFit fit_energies(const std::vector<std::pair<int, double>>& energies,
                          int r, int s, RhoParity parity, double u) {
  if (r < 1 || s < 1)
    throw std::invalid_argument("fit_energies: indices must be positive");
  if (energies.size() < 3)
    throw std::invalid_argument("fit_energies: need at least 3 sizes");

  double f_bulk = bulk_free_energy(u);
  double f_bdy = boundary_free_energy(u, parity, s);
  double x1_scale = 2 * kPi * std::sin(2 * u);

  Eigen::MatrixXd X(energies.size(), 2);
  Eigen::VectorXd y(energies.size());
  ConformalFit fit;
  fit.rows.reserve(energies.size());
  for (std::size_t i = 0; i < energies.size(); ++i) {
    auto [N, energy] = energies[i];
    double subtracted = energy - 2 * N * f_bulk - f_bdy;
    X(i, 0) = x1_scale / N;
    X(i, 1) = 1.0 / (static_cast<double>(N) * N);
    y(i) = subtracted;
    fit.rows.push_back({static_cast<double>(N), energy, subtracted, 0.0});
  }
  Eigen::Vector2d coef = X.colPivHouseholderQr().solve(y);
  fit.delta_est = coef(0) - 1.0 / 12.0;
  fit.c_est = -24.0 * (coef(0) - kac_weight(r, s));
  Eigen::VectorXd fitted = X * coef;
  fit.residual = std::sqrt((y - fitted).squaredNorm() / y.size());
  for (std::size_t i = 0; i < energies.size(); ++i)
    fit.rows[i][3] = 2 * energies[i].first * f_bulk + f_bdy + fitted(i);
  return fit;
}

ConformalFit fit_conformal(int r, int s, RhoParity parity, double u, int Nmin,
                           int Nmax) {
  if (r < 1 || s < 1)
    throw std::invalid_argument("fit_conformal: indices must be positive");
  if (Nmin < 2 || Nmax < Nmin)
    throw std::invalid_argument("fit_conformal: bad N range");
  int rho = parity == RhoParity::even ? 2 * r : 2 * r - 1;
  // Groundstate pattern: one negative sign on each of the lowest K levels.
  // Valid whenever K fits inside the level ladder, which the Nmin check
  // below guarantees; small-N edge sectors can have a shifted groundstate
  // instead, see groundstate_pattern.
  int K = s % 2 == 1 ? (std::abs(2 * r - s) - 1) / 2 : std::abs(2 * r - s) / 2;

  std::vector<std::pair<int, double>> energies;
  for (int N = Nmin; N <= Nmax; ++N) {
    if ((N + rho + s) % 2 != 0) continue;
    SignPattern gs;
    gs.minus.assign(pattern_levels(N, s).size(), 0);
    if (K > gs.levels())
      throw std::invalid_argument("fit_conformal: Nmin too small for this r,s");
    for (int j = 0; j < K; ++j) gs.minus[j] = 1;
    energies.emplace_back(N, -std::log(pattern_value(gs, u, N, s)));
  }
  if (energies.size() < 3)
    throw std::invalid_argument("fit_conformal: no parity-consistent N");
  return fit_energies(energies, r, s, parity, u);
}

}  // namespace densepoly
