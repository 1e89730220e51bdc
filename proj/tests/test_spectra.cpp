#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "densepoly/spectra.hpp"

using namespace densepoly;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_SUITE("spectra") {

TEST_CASE("zero levels depend on the boundary-condition parity") {
  std::vector<double> odd = pattern_levels(5, 1);
  REQUIRE(odd.size() == 2);  // floor((N-1)/2)
  CHECK(odd[0] == doctest::Approx(kPi / 5));
  CHECK(odd[1] == doctest::Approx(2 * kPi / 5));
  std::vector<double> even = pattern_levels(6, 2);
  REQUIRE(even.size() == 3);  // floor(N/2)
  CHECK(even[0] == doctest::Approx(kPi / 12));
  CHECK(even[1] == doctest::Approx(3 * kPi / 12));
  CHECK(even[2] == doctest::Approx(5 * kPi / 12));
}

TEST_CASE("pattern value multiplies the per-level factors") {
  double u = 0.2;
  double x = std::sin(kPi / 4) * std::sin(2 * u);  // N = 4, s odd: t_1 = pi/4
  CHECK(pattern_value({{0}, false}, u, 4, 1) ==
        doctest::Approx((1 + x) * (1 + x)));
  CHECK(pattern_value({{1}, false}, u, 4, 1) == doctest::Approx(1 - x * x));
  CHECK(pattern_value({{2}, false}, u, 4, 1) ==
        doctest::Approx((1 - x) * (1 - x)));
  double shift = (1 + std::sin(2 * u)) / (1 - std::sin(2 * u));
  CHECK(pattern_value({{1}, true}, u, 4, 1) ==
        doctest::Approx((1 - x * x) * shift));
}

TEST_CASE("pattern energies count minus signs by level") {
  // s odd: level j weighs j; s even: level j weighs j - 1/2; both doubled
  CHECK(pattern_energy_twice({{0, 0}, false}, 5, 1) == 0);
  CHECK(pattern_energy_twice({{1, 2}, false}, 5, 1) == 2 * (1 + 4));
  CHECK(pattern_energy_twice({{1, 2}, true}, 5, 1) == 2 * (1 + 4) + 5);
  CHECK(pattern_energy_twice({{0, 1, 2}, false}, 6, 2) == 3 + 2 * 5);
}

TEST_CASE("Hamiltonian pattern energy sums the surviving dispersion terms") {
  std::vector<double> t = pattern_levels(6, 2);
  double expected = -2 * std::sin(t[0]) + 0.0 + 2 * std::sin(t[2]);
  CHECK(hamiltonian_pattern_energy({{0, 1, 2}, false}, 6, 2) ==
        doctest::Approx(expected));
  CHECK(hamiltonian_pattern_energy({{0, 1, 2}, true}, 6, 2) ==
        doctest::Approx(expected - 2));
}

TEST_CASE("vacuum sector spectrum is 1 + q^2") {
  LinkBasis basis = LinkBasis::build({4, 1, 1});
  std::vector<SpectrumRecord> records = classify_spectrum(basis);
  REQUIRE(records.size() == 2);
  CHECK(records[0].pattern.minus == std::vector<int>{0});
  CHECK(records[0].energy_twice == 0);
  CHECK(records[0].multiplicity == 1);
  CHECK(records[1].pattern.minus == std::vector<int>{2});
  CHECK(records[1].energy_twice == 4);
  CHECK(records[1].multiplicity == 1);
  ClassifyOptions options;
  for (const auto& record : records)
    for (int p = 0; p < 2; ++p)
      CHECK(record.values[p] ==
            doctest::Approx(pattern_value(record.pattern, options.probes[p],
                                          4, 1))
                .epsilon(1e-9));
  CHECK(generating_polynomial(records).to_string() == "1+q^2");
}

TEST_CASE("classified spectra match the q-Catalan selection rules") {
  for (int N = 2; N <= 8; ++N)
    for (int rho : {1, 2, 3, 4})
      for (int s : {1, 2, 3}) {
        if ((N + rho + s) % 2 != 0) continue;
        SeamLayout layout{N, rho, s};
        if (dimension(layout) <= 0) continue;
        LinkBasis basis = LinkBasis::build(layout);
        CAPTURE(N);
        CAPTURE(rho);
        CAPTURE(s);
        std::vector<SpectrumRecord> records =
            classify_spectrum_with_retry(basis);

        long long total = 0;
        std::map<SignPattern, long long> measured;
        for (const auto& record : records) {
          total += record.multiplicity;
          measured[record.pattern] = record.multiplicity;
        }
        CHECK(total == basis.size());
        CHECK(measured == predicted_pattern_multiplicities(layout));
        CHECK(generating_polynomial(records) == selection_sum(N, rho, s));
      }
}

TEST_CASE("groundstate pattern minimizes the predicted energy") {
  for (int N = 2; N <= 8; ++N)
    for (int rho : {1, 2, 3, 4, 5})
      for (int s : {1, 2, 3, 4}) {
        if ((N + rho + s) % 2 != 0) continue;
        SeamLayout layout{N, rho, s};
        if (dimension(layout) <= 0) continue;
        SignPattern ground = groundstate_pattern(layout);
        long long best = pattern_energy_twice(ground, N, s);
        auto counts = predicted_pattern_multiplicities(layout);
        CHECK(counts.at(ground) > 0);
        for (const auto& [pattern, count] : counts)
          CHECK(best <= pattern_energy_twice(pattern, N, s));
      }
}

TEST_CASE("wide seams shift the groundstate") {
  // When the seam outweighs the bulk the lowest block is the shifted one.
  CHECK(groundstate_pattern({2, 3, 1}).shifted);
  CHECK(groundstate_pattern({4, 5, 1}).shifted);
  CHECK_FALSE(groundstate_pattern({4, 1, 1}).shifted);
  CHECK_FALSE(groundstate_pattern({4, 2, 2}).shifted);
}

}  // TEST_SUITE
