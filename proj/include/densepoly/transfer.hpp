#pragma once

#include <vector>

#include "densepoly/tangle.hpp"

namespace densepoly {

struct TransferParams {
  SeamLayout layout;
  double u = 0.0;
  double xi = kDefaultXi;
};

// Unnormalized double-row transfer matrix D(u) on the restricted basis.
OperatorMatrix build_D(const TransferParams& params, int threads = 1);

// Scalar turning D(u) into the normalized d(u) = 2^{rho-1} D(u) /
// (sin 2u cos^{rho-2} 2u) for rho even, with cos^{rho-1} for rho odd.
// Throws when the denominator vanishes.
double normalization_factor(const SeamLayout& layout, double u);
OperatorMatrix normalize_d(const OperatorMatrix& D,
                           const TransferParams& params);

// Scalar of the inversion identity d(u) d(u + pi/2) = rhs * I:
// (cos^{2N} u + sin^{2N} u)^2 for rho even; for rho odd the equivalent
// factorized product [prod_j (1 - sin^2 t_j sin^2 2u)]^2, which avoids the
// removable 0/0 of (cos^{2N} u - sin^{2N} u)/(cos^2 u - sin^2 u) at u = pi/4.
double inversion_rhs(const TransferParams& params);
// Same identity before normalization: D(u) D(u + pi/2) = rhs * I.
double inversion_rhs_unnormalized(const TransferParams& params);

// Max deviations of the functional relations over a list of spectral
// parameters: the inversion identity (normalized and unnormalized forms,
// relative to the scalar), crossing symmetry D(lambda - u) = D(u), pairwise
// commutation [D(u), D(v)] with v = u + pi/12, and the initial condition
// ||d(1e-4) - I||.
struct FunctionalReport {
  double inversion = 0.0;
  double crossing = 0.0;
  double commute = 0.0;
  double init = 0.0;
};
FunctionalReport functional_checks(const SeamLayout& layout,
                                   const std::vector<double>& us,
                                   double xi = kDefaultXi, int threads = 1);

// Hamiltonian limit of the double row: the exact u-derivative of d at 0,
// H = -(1/2) d''... computed from the order-2 Taylor contraction as
// H = -2^{rho-3} D''(0), after checking D(0) = 0 and d'(0) = I.
// Throws on a singular boundary coupling sin(xi) sin(xi + rho pi/2) = 0.
OperatorMatrix hamiltonian(const LinkBasis& basis, double xi = kDefaultXi,
                           int threads = 1);

// Word form H = -sum_{j=1}^{N-1} e_j + P_N^{(rho)} / (s(xi) s(xi_rho)) with
// the seam words composed in the planar module and projected once; the two
// orders differ by which end of each word acts first. Coincides with
// hamiltonian() for rho even (rightmost_first); kept as an independent route
// for cross-checks.
enum class WordOrder { leftmost_first, rightmost_first };
OperatorMatrix hamiltonian_word(const LinkBasis& basis, double xi,
                                WordOrder order);

}  // namespace densepoly
