#pragma once

#include <Eigen/Dense>

#include <array>
#include <map>
#include <numbers>
#include <vector>

#include "densepoly/linkstates.hpp"

namespace densepoly {

// Dense matrix of a diagram on a link basis: row = out-state index,
// column = in-state index.
using OperatorMatrix = Eigen::MatrixXd;

// Critical dense polymers sit at crossing parameter lambda = pi/2 (loop
// fugacity beta = 2 cos lambda = 0); the boundary field defaults to the
// solvable point xi = pi/4.
inline constexpr double kLambdaCritical = std::numbers::pi / 2;
inline constexpr double kDefaultXi = std::numbers::pi / 4;

// Order-2 Taylor jet a0 + a1 u + a2 u^2 in the spectral parameter, the
// scalar type used to contract the double row as a series around u = 0.
struct Jet2 {
  double a0 = 0.0;
  double a1 = 0.0;
  double a2 = 0.0;

  friend Jet2 operator+(const Jet2& x, const Jet2& y) {
    return {x.a0 + y.a0, x.a1 + y.a1, x.a2 + y.a2};
  }
  friend Jet2 operator*(const Jet2& x, const Jet2& y) {
    return {x.a0 * y.a0, x.a0 * y.a1 + x.a1 * y.a0,
            x.a0 * y.a2 + x.a1 * y.a1 + x.a2 * y.a0};
  }
  Jet2 operator-() const { return {-a0, -a1, -a2}; }
  Jet2& operator+=(const Jet2& y) { return *this = *this + y; }
};

// One face of the double-row diagram. A free face sums over its two planar
// resolutions with weights wa (join) and wb (pass-through); the frozen s-seam
// faces are deterministic rewirings of the a- resp. b-type.
enum class FaceKind { free, frozen_a, frozen_b };

template <typename Scalar>
struct BasicFace {
  FaceKind kind = FaceKind::free;
  Scalar wa{};
  Scalar wb{};
};

// Mirrored double-row face grid: per column the bottom face then the top
// face, bulk columns first, then the r-seam inhomogeneities xi_j = xi + j
// lambda, then the frozen s-seam columns.
template <typename Scalar>
struct BasicFaceGrid {
  SeamLayout layout;
  double u = 0.0;
  double xi = kDefaultXi;
  double lambda = kLambdaCritical;
  double beta = 0.0;
  std::vector<std::array<BasicFace<Scalar>, 2>> columns;
};

using Face = BasicFace<double>;
using FaceGrid = BasicFaceGrid<double>;

FaceGrid face_grid(const SeamLayout& layout, double u, double xi = kDefaultXi);
// The same grid with every weight expanded to order 2 around u = 0.
BasicFaceGrid<Jet2> face_grid_jets(const SeamLayout& layout,
                                   double xi = kDefaultXi);

// Contract the double-row diagram column by column with a frontier of
// partial-boundary connectivities, sweeping fixed-width blocks of in-states
// together so the frontier key space is shared. Any closed loop annihilates
// its branch (beta = 0); out-states that leave the restricted basis are
// dropped (the quotient sets them to zero). Blocks are independent, so
// threads > 1 parallelizes over them with deterministic output.
OperatorMatrix contract_double_row(const LinkBasis& basis, double u,
                                   double xi = kDefaultXi, int threads = 1);

// Taylor coefficients of the same contraction: D(u) = d0 + d1 u + d2 u^2 +
// O(u^3).
struct DoubleRowJets {
  OperatorMatrix d0, d1, d2;
};
DoubleRowJets contract_double_row_series(const LinkBasis& basis,
                                         double xi = kDefaultXi,
                                         int threads = 1);

// Formal Temperley-Lieb elements: sums of generator words with real
// coefficients. Letters are 1-based generator indices in matrix order, so the
// rightmost letter acts first. A word acts on a restricted basis by rewiring
// link states in the unrestricted planar module, collecting a factor beta per
// closed loop, and projecting onto the basis once at the end.
using TLWord = std::vector<int>;
using TLElement = std::map<TLWord, double>;

TLElement tl_product(const TLElement& a, const TLElement& b);
TLElement& tl_accumulate(TLElement& a, const TLElement& b, double scale = 1.0);
OperatorMatrix tl_matrix(const TLElement& element, const LinkBasis& basis,
                         double beta);

// Chebyshev polynomial of the second kind U_m(beta/2) by the recurrence
// U_{m+1} = beta U_m - U_{m-1} with U_0 = 1, U_{-1} = 0; at beta = 0 the
// values {1, 0, -1, 0, ...} are exact.
double chebyshev_second(int m, double beta);

// Smallest seam module faithful for the boundary-operator checks: T seam
// nodes beside T + 2 bulk nodes (s = 1, dimension T + 1). Boundary strand j
// acts as generator layout.N + j on this basis.
LinkBasis boundary_rep(int T);

// P_start^{(rho)} = sum_{k=0}^{rho-2} (-1)^k U_{rho-k-2}(beta/2)
// e_start e_{start+1} ... e_{start+k}; generator indices 1-based.
TLElement generalized_projector_element(int start, int rho, double beta);
OperatorMatrix generalized_projector(int rho, int start, double lambda,
                                     const LinkBasis& basis);

// K^{(rho)}(u, xi) from the ordered product of boundary face operators X_j,
// divided by the normalization eta^{(rho)}(u, xi) = prod_{m=1}^{rho-1}
// s(lambda - u + xi_m) s(lambda - u - xi_m) with s(v) = sin(v)/sin(lambda).
OperatorMatrix boundary_operator_planar(int rho, double u, double xi,
                                        double lambda, const LinkBasis& basis);

// Max deviation between the factorized boundary operator and its closed form
// I + [s(2u)/(s(u+xi) s(u-xi_rho))] P_0^{(rho)} on boundary_rep(rho-1), also
// checking the word-expansion coefficients alpha_0 = 1, alpha_i =
// (-1)^{i-1} U_{rho-i-1}(beta/2) s(2u)/(s(u+xi) s(u-xi_rho)). The deviation
// is relative to the entry scale of the closed form, which has a pole where
// s(u-xi_rho) vanishes; near the pole an absolute measure would only report
// roundoff amplified by the coupling.
double verify_boundary_proposition(int rho, double u, double xi,
                                   double lambda);

// Max deviation over the generalized-projector identities on the restricted
// module: P_1^{(rho')} P_1^{(rho)} = U_{rho'-1}(beta/2) P_1^{(rho)},
// P_1^{(rho)} e_0 = 0, e_0 P_1^{(rho)} = U_{rho-1}(beta/2) e_0 -
// P_0^{(rho+1)}, and e_0 P_1^{(rho)} e_0 = U_{rho-2}(beta/2) e_0, with
// strand 0 = generator layout.N.
double verify_projector_properties(int rho, int rho_prime, double lambda);
double verify_projector_properties(int rho, int rho_prime, double lambda,
                                   const LinkBasis& basis);

}  // namespace densepoly
