#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "densepoly/transfer.hpp"

using namespace densepoly;

namespace {

constexpr double kPi = std::numbers::pi;

OperatorMatrix normalized_d(const SeamLayout& layout, double u,
                            double xi = kDefaultXi) {
  TransferParams params{layout, u, xi};
  return normalize_d(build_D(params), params);
}

}  // namespace

TEST_SUITE("transfer") {

TEST_CASE("smallest sector reduces to the scalar sin 2u") {
  // One bulk strand pair, no seam: the double row is the single weight
  // cos u sin u + sin u cos u.
  LinkBasis basis = LinkBasis::build({2, 1, 1});
  for (double u : {0.1, 0.31, 0.62}) {
    OperatorMatrix D = build_D({basis.layout, u});
    REQUIRE(D.rows() == 1);
    CHECK(D(0, 0) == doctest::Approx(std::sin(2 * u)).epsilon(1e-14));
  }
}

TEST_CASE("inversion identity holds before and after normalization") {
  for (int rho : {1, 2, 3, 4})
    for (int s : {1, 2, 3}) {
      for (int N : {3, 4, 5, 6}) {
        if ((N + rho + s) % 2 != 0) continue;
        SeamLayout layout{N, rho, s};
        if (dimension(layout) <= 0) continue;
        LinkBasis basis = LinkBasis::build(layout);
        OperatorMatrix I = OperatorMatrix::Identity(basis.size(), basis.size());
        double u = 0.19;
        TransferParams at_u{layout, u};
        TransferParams at_shift{layout, u + kPi / 2};
        CAPTURE(N);
        CAPTURE(rho);
        CAPTURE(s);

        OperatorMatrix raw = build_D(at_u) * build_D(at_shift);
        double raw_rhs = inversion_rhs_unnormalized(at_u);
        CHECK((raw - raw_rhs * I).cwiseAbs().maxCoeff() <=
              1e-12 * std::abs(raw_rhs));

        OperatorMatrix norm = normalized_d(layout, u) *
                              normalized_d(layout, u + kPi / 2);
        double rhs = inversion_rhs(at_u);
        CHECK((norm - rhs * I).cwiseAbs().maxCoeff() <= 1e-12 * std::abs(rhs));
      }
    }
}

TEST_CASE("inversion scalar agrees with its product form at the removable point") {
  // For rho even the closed form (cos^{2N} u + sin^{2N} u)^2 and the zero
  // product must coincide, including at u = pi/4 where the naive odd-rho
  // quotient form would be 0/0.
  for (int N : {4, 6}) {
    SeamLayout layout{N, 2, 2};
    for (double u : {0.3, kPi / 4}) {
      double closed = std::pow(std::pow(std::cos(u), 2 * N) +
                                   std::pow(std::sin(u), 2 * N),
                               2);
      CHECK(inversion_rhs({layout, u}) == doctest::Approx(closed).epsilon(1e-12));
    }
  }
}

TEST_CASE("functional relations hold across a sector grid") {
  std::vector<double> us{0.11, 0.27};
  for (int N : {2, 3, 4, 5, 6})
    for (int rho : {1, 2, 3})
      for (int s : {1, 2, 3}) {
        if ((N + rho + s) % 2 != 0) continue;
        SeamLayout layout{N, rho, s};
        if (dimension(layout) <= 0) continue;
        CAPTURE(N);
        CAPTURE(rho);
        CAPTURE(s);
        FunctionalReport report = functional_checks(layout, us);
        CHECK(report.inversion <= 1e-12);
        CHECK(report.crossing <= 1e-12);
        CHECK(report.commute <= 1e-12);
        CHECK(report.init <= 1e-3);
      }
}

TEST_CASE("normalization factor rejects vanishing denominators") {
  CHECK_THROWS_AS(normalization_factor({4, 4, 2}, kPi / 4), std::domain_error);
  CHECK_THROWS_AS(normalization_factor({4, 3, 1}, kPi / 4), std::domain_error);
  CHECK_THROWS_AS(normalization_factor({4, 2, 2}, 0.0), std::domain_error);
  // rho = 2 carries no cos factor, so u = pi/4 is regular
  CHECK(normalization_factor({4, 2, 2}, kPi / 4) ==
        doctest::Approx(2.0 / std::sin(kPi / 2)));
}

TEST_CASE("Hamiltonian matches the derivative of the normalized double row") {
  for (int rho : {1, 2, 3})
    for (int s : {1, 2}) {
      int N = 6 - ((6 + rho + s) % 2);
      SeamLayout layout{N, rho, s};
      if (dimension(layout) <= 0) continue;
      LinkBasis basis = LinkBasis::build(layout);
      CAPTURE(rho);
      CAPTURE(s);
      OperatorMatrix H = hamiltonian(basis);
      // d(u) = I - 2 u H + O(u^2), so H = -d'(0)/2
      double h = 1e-5;
      OperatorMatrix fd = (normalized_d(layout, h) - normalized_d(layout, -h)) /
                          (-4 * h);
      CHECK((H - fd).cwiseAbs().maxCoeff() <= 1e-5);
    }
}

TEST_CASE("jet and word Hamiltonians coincide for even seam width") {
  for (int N : {4, 6})
    for (int rho : {2, 4})
      for (int s : {2, 4}) {
        if ((N + rho + s) % 2 != 0) continue;
        SeamLayout layout{N, rho, s};
        if (dimension(layout) <= 0) continue;
        LinkBasis basis = LinkBasis::build(layout);
        OperatorMatrix jet = hamiltonian(basis);
        OperatorMatrix word =
            hamiltonian_word(basis, kDefaultXi, WordOrder::rightmost_first);
        CAPTURE(N);
        CAPTURE(rho);
        CAPTURE(s);
        CHECK((jet - word).cwiseAbs().maxCoeff() <= 1e-12);
      }
}

TEST_CASE("Hamiltonian commutes with the double row") {
  for (int N : {4, 5, 6})
    for (int rho : {1, 2, 3})
      for (int s : {1, 2}) {
        if ((N + rho + s) % 2 != 0) continue;
        SeamLayout layout{N, rho, s};
        if (dimension(layout) <= 0) continue;
        LinkBasis basis = LinkBasis::build(layout);
        OperatorMatrix H = hamiltonian(basis);
        OperatorMatrix D = build_D({layout, 0.23});
        double scale = H.cwiseAbs().maxCoeff() * D.cwiseAbs().maxCoeff();
        CAPTURE(N);
        CAPTURE(rho);
        CAPTURE(s);
        CHECK((H * D - D * H).cwiseAbs().maxCoeff() <= 1e-12 * scale);
      }
}

TEST_CASE("Hamiltonian rejects a singular boundary coupling") {
  LinkBasis basis = LinkBasis::build({4, 2, 2});
  CHECK_THROWS_AS(hamiltonian(basis, 0.0), std::domain_error);
  CHECK_THROWS_AS(hamiltonian_word(basis, 0.0, WordOrder::rightmost_first),
                  std::domain_error);
}

}  // TEST_SUITE
