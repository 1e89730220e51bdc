#pragma once

#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <vector>

#include "densepoly/qseries.hpp"
#include "densepoly/tangle.hpp"

namespace densepoly {

// Zero-pattern of an eigenvalue: per level j = 1..M the number of negative
// signs among the unordered pair (eps_j, mu_j). For rho odd, `shifted` marks
// the extra half-level factor (1 + sin 2u)/(1 - sin 2u) carried by the
// eigenvalues of the q^{N/2}-shifted selection blocks.
struct SignPattern {
  std::vector<int> minus;
  bool shifted = false;

  int levels() const { return static_cast<int>(minus.size()); }
  auto operator<=>(const SignPattern&) const = default;
};

// Zero locations t_j: M = floor((N-1)/2) levels with t_j = j pi/N for s odd,
// M = floor(N/2) levels with t_j = (2j-1) pi/(2N) for s even.
std::vector<double> pattern_levels(int N, int s);

// Eigenvalue of the normalized d(u) carried by the pattern:
// prod_j (1 + eps_j sin t_j sin 2u)(1 + mu_j sin t_j sin 2u), times
// (1 + sin 2u)/(1 - sin 2u) when shifted.
double pattern_value(const SignPattern& pattern, double u, int N, int s);

// Twice the combinatorial energy (energies live in half-integers): level j
// contributes minus[j]*j (s odd) or minus[j]*(j - 1/2) (s even); a shifted
// pattern adds N/2.
long long pattern_energy_twice(const SignPattern& pattern, int N, int s);

// Eigenvalue of the Hamiltonian carried by the pattern:
// -sum_j (2 - 2 minus[j]) sin t_j, with an extra -2 when shifted.
double hamiltonian_pattern_energy(const SignPattern& pattern, int N, int s);

struct SpectrumRecord {
  SignPattern pattern;
  long long energy_twice = 0;
  int multiplicity = 0;
  std::array<double, 2> values{};  // measured eigenvalues at the two probes
};

struct ClassifyOptions {
  // Generic probe points away from pi/4 with sin 2u large: candidate values
  // that agree to high order in sin 2u (alternating power sums of sin t_j
  // stay exactly 1/2 through order 2M-3) separate only when sin 2u is O(1).
  std::array<double, 2> probes = {std::numbers::pi / 6, 0.41};
  double retry_probe = 0.37;
  double rel_tol = 1e-8;
  double xi = kDefaultXi;
  int threads = 1;
};

// Diagonalizes d(u) at both probes, matches every eigenvalue to a unique
// candidate pattern (3^M minus-vectors, doubled by the shifted variants for
// rho odd) at both probes, and accumulates multiplicities. Records are sorted
// by energy then pattern. Throws std::runtime_error when an eigenvalue has no
// candidate within tolerance, when two candidates stay indistinguishable at
// both probes, or when an eigenvalue keeps a non-negligible imaginary part.
std::vector<SpectrumRecord> classify_spectrum(const LinkBasis& basis,
                                              const ClassifyOptions& options = {});

// Same, but on an ambiguity retries once with the second probe replaced by
// options.retry_probe.
std::vector<SpectrumRecord> classify_spectrum_with_retry(
    const LinkBasis& basis, const ClassifyOptions& options = {});

// Spectrum generating function G(q) = sum multiplicity * q^energy; G(1) is
// the sector dimension.
QExpPoly generating_polynomial(const std::vector<SpectrumRecord>& records);

// Pattern multiplicities predicted by the q-Catalan selection rules: each
// block contributes its admissible double-column configurations, translated
// to patterns by minus[j] = [j in L] + [j in R]; blocks with negative r' enter
// with sign -1 and mirrored index. Throws if a signed count ends up negative.
std::map<SignPattern, long long> predicted_pattern_multiplicities(
    const SeamLayout& layout);

// Minimum-energy predicted pattern of the sector.
SignPattern groundstate_pattern(const SeamLayout& layout);

}  // namespace densepoly
