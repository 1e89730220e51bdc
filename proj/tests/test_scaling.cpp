#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "densepoly/scaling.hpp"

using namespace densepoly;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_SUITE("scaling") {

TEST_CASE("bulk free energy: closed form at the isotropic point") {
  // At u = pi/4 the integral is integral_0^{pi/2} ln(1 + sin t) dt
  // = 2G - (pi/2) ln 2 with Catalan's constant G.
  constexpr double catalan = 0.9159655941772190;
  double expected = -(2 * catalan - kPi / 2 * std::log(2.0)) / kPi;
  CHECK(std::abs(bulk_free_energy(kPi / 4) - expected) <= 1e-12);
  // frozen reference values used by downstream fits
  CHECK(std::abs(bulk_free_energy(kPi / 4) - -0.2365482177816649) <= 1e-12);
  CHECK(std::abs(bulk_free_energy(kPi / 6) - -0.2115001610285088) <= 1e-12);
}

TEST_CASE("bulk free energy: vanishing, symmetry, monotonicity") {
  CHECK(std::abs(bulk_free_energy(0.0)) <= 1e-12);
  for (double u : {0.1, 0.3, 0.6})
    CHECK(bulk_free_energy(kPi / 2 - u) ==
          doctest::Approx(bulk_free_energy(u)).epsilon(1e-12));
  CHECK(bulk_free_energy(0.1) > bulk_free_energy(0.2));
  CHECK(bulk_free_energy(0.2) > bulk_free_energy(0.3));
  CHECK(bulk_free_energy(0.3) > bulk_free_energy(kPi / 4));
}

TEST_CASE("boundary free energy depends only on the seam parity") {
  for (double u : {0.1, kPi / 6, 0.5}) {
    CHECK(boundary_free_energy(u, RhoParity::even) == 0.0);
    CHECK(boundary_free_energy(u, RhoParity::even, 2) == 0.0);
    double odd = std::log1p(std::sin(2 * u));
    CHECK(boundary_free_energy(u, RhoParity::odd) == doctest::Approx(odd));
    CHECK(boundary_free_energy(u, RhoParity::odd, 2) ==
          boundary_free_energy(u, RhoParity::odd, 1));
  }
}

TEST_CASE("Kac weights on the extended table") {
  CHECK(kac_weight(1, 1) == doctest::Approx(0.0));
  CHECK(kac_weight(1, 2) == doctest::Approx(-1.0 / 8.0));
  CHECK(kac_weight(2, 4) == doctest::Approx(-1.0 / 8.0));
  CHECK(kac_weight(2, 1) == doctest::Approx(1.0));
  CHECK(kac_weight(3, 1) == doctest::Approx(3.0));
  CHECK(kac_weight(1, 3) == doctest::Approx(0.0));
  CHECK(kac_weight(2, 2) == doctest::Approx(3.0 / 8.0));
}

TEST_CASE("regression recovers synthetic scaling data exactly") {
  // Energies generated from the fitted model itself, plus a 1/N^2 term the
  // second regression column absorbs, must reproduce c = -2 and the exact
  // conformal weight at solver precision.
  double u = kPi / 6;
  double f_bulk = bulk_free_energy(u);
  for (auto [r, s, parity] : {std::tuple{1, 1, RhoParity::odd},
                              std::tuple{1, 2, RhoParity::even},
                              std::tuple{2, 1, RhoParity::odd}}) {
    double delta = kac_weight(r, s);
    double amplitude = 1.0 / 12.0 + delta;  // -c/24 + Delta at c = -2
    double f_bdy = boundary_free_energy(u, parity, s);
    std::vector<std::pair<int, double>> energies;
    for (int N : {12, 14, 16, 20, 26, 34})
      energies.emplace_back(
          N, 2 * N * f_bulk + f_bdy +
                 2 * kPi * std::sin(2 * u) / N * amplitude + 0.37 / (N * N));
    ConformalFit fit = fit_energies(energies, r, s, parity, u);
    CHECK(std::abs(fit.delta_est - delta) <= 1e-10);
    CHECK(std::abs(fit.c_est - -2.0) <= 1e-8);
    CHECK(fit.residual <= 1e-10);
    REQUIRE(fit.rows.size() == energies.size());
    for (std::size_t i = 0; i < energies.size(); ++i)
      CHECK(fit.rows[i][3] ==
            doctest::Approx(energies[i].second).epsilon(1e-12));
  }
}

TEST_CASE("groundstate fits approach the dense-polymer conformal data") {
  for (auto [r, s, parity] : {std::tuple{1, 1, RhoParity::odd},
                              std::tuple{1, 2, RhoParity::even},
                              std::tuple{2, 1, RhoParity::even}}) {
    ConformalFit fit = fit_conformal(r, s, parity, kPi / 6, 16, 48);
    CAPTURE(r);
    CAPTURE(s);
    CHECK(std::abs(fit.c_est - -2.0) <= 0.05);
    CHECK(std::abs(fit.delta_est - kac_weight(r, s)) <= 0.05);
    for (const auto& row : fit.rows)
      CHECK(row[3] == doctest::Approx(row[1]).epsilon(1e-4));
  }
}

TEST_CASE("fit input validation") {
  CHECK_THROWS_AS(fit_conformal(0, 1, RhoParity::odd, kPi / 6),
                  std::invalid_argument);
  CHECK_THROWS_AS(fit_conformal(1, 0, RhoParity::odd, kPi / 6),
                  std::invalid_argument);
  CHECK_THROWS_AS(fit_conformal(1, 1, RhoParity::odd, kPi / 6, 16, 12),
                  std::invalid_argument);
  // only one parity-consistent size in range
  CHECK_THROWS_AS(fit_conformal(1, 1, RhoParity::odd, kPi / 6, 16, 17),
                  std::invalid_argument);
  // K = 3 negative levels cannot fit into floor((N-1)/2) levels at N = 4
  CHECK_THROWS_AS(fit_conformal(4, 1, RhoParity::odd, kPi / 6, 4, 10),
                  std::invalid_argument);
  std::vector<std::pair<int, double>> two{{4, 1.0}, {6, 2.0}};
  CHECK_THROWS_AS(fit_energies(two, 1, 1, RhoParity::odd, kPi / 6),
                  std::invalid_argument);
}

}  // TEST_SUITE
