#pragma once

#include <array>
#include <vector>

#include "densepoly/qseries.hpp"

namespace densepoly {

// Bulk free energy per face pair,
// f_bulk(u) = -(1/pi) * integral_0^{pi/2} ln(1 + sin t sin 2u) dt,
// by adaptive Gauss-Kronrod quadrature (absolute tolerance 1e-12).
double bulk_free_energy(double u);

// Boundary free energy: ln(1 + sin 2u) for rho odd, 0 for rho even. The
// value is independent of the parity of s; the s argument is kept so callers
// state the sector they are subtracting in. Checked against the exact
// groundstate eigenvalue product: E(N) - 2N f_bulk converges to this constant
// in all four (rho, s) parity combinations.
double boundary_free_energy(double u, RhoParity parity, int s = 1);

// Conformal weight Delta_{r,s} = ((2r - s)^2 - 1)/8.
double kac_weight(int r, int s);

// Finite-size fit of the groundstate energies
//   E(N) = -ln(groundstate eigenvalue of d(u))
//        = 2N f_bulk + f_bdy + (2 pi sin 2u / N) (-c/24 + Delta) + O(N^-2)
// over parity-matched N in [Nmin, Nmax], regressing the subtracted energies
// onto {2 pi sin 2u / N, 1/N^2}.
struct ConformalFit {
  double c_est = 0.0;      // -24 (A - Delta_exact)
  double delta_est = 0.0;  // A - 1/12
  double residual = 0.0;   // RMS regression residual
  // rows: N, E(N), E(N) - 2N f_bulk - f_bdy, fitted prediction of E(N)
  std::vector<std::array<double, 4>> rows;
};

ConformalFit fit_conformal(int r, int s, RhoParity parity, double u,
                           int Nmin = 16, int Nmax = 64);

// Same regression on caller-supplied energies (N, E(N)), for cross-checks
// against raw diagonalization and for synthetic-data recovery tests.
ConformalFit fit_energies(const std::vector<std::pair<int, double>>& energies,
                          int r, int s, RhoParity parity, double u);

}  // namespace densepoly
