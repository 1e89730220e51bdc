#include "densepoly/transfer.hpp"

#include <cmath>
#include <stdexcept>

namespace densepoly {

namespace {

constexpr double kPi = std::numbers::pi;

int cos_power(const SeamLayout& layout) {
  return layout.rho_even() ? layout.rho - 2 : layout.rho - 1;
}

// Zero angles t_j of the eigenvalue factorization; M levels per Eq.-(MN)
// bookkeeping: s odd pairs with t_j = j pi / N, s even with (2j-1) pi / 2N.
std::vector<double> zero_angles(int N, int s) {
  std::vector<double> ts;
  if (s % 2 == 1) {
    int M = (N - 1) / 2;
    for (int j = 1; j <= M; ++j) ts.push_back(j * kPi / N);
  } else {
    int M = N / 2;
    for (int j = 1; j <= M; ++j) ts.push_back((2 * j - 1) * kPi / (2 * N));
  }
  return ts;
}

}  // namespace

OperatorMatrix build_D(const TransferParams& params, int threads) {
  LinkBasis basis = LinkBasis::build(params.layout);
  return contract_double_row(basis, params.u, params.xi, threads);
}

double normalization_factor(const SeamLayout& layout, double u) {
  double denom = std::sin(2 * u);
  for (int k = 0; k < cos_power(layout); ++k) denom *= std::cos(2 * u);
  if (std::abs(denom) < 1e-12)
    throw std::domain_error("normalization_factor: singular at this u");
  return std::pow(2.0, layout.rho - 1) / denom;
}

OperatorMatrix normalize_d(const OperatorMatrix& D,
                           const TransferParams& params) {
  return normalization_factor(params.layout, params.u) * D;
}

double inversion_rhs(const TransferParams& params) {
  const SeamLayout& layout = params.layout;
  double u = params.u;
  if (layout.rho_even()) {
    double c = std::pow(std::cos(u), 2 * layout.N);
    double s = std::pow(std::sin(u), 2 * layout.N);
    return (c + s) * (c + s);
  }
  double x = std::sin(2 * u);
  double product = 1.0;
  for (double t : zero_angles(layout.N, layout.s)) {
    double st = std::sin(t);
    product *= 1.0 - st * st * x * x;
  }
  return product * product;
}

double inversion_rhs_unnormalized(const TransferParams& params) {
  const SeamLayout& layout = params.layout;
  double u = params.u;
  double x = std::sin(2 * u);
  double scale = -x * x;
  for (int k = 0; k < 2 * cos_power(layout); ++k) scale *= std::cos(2 * u);
  scale /= std::pow(4.0, layout.rho - 1);
  return scale * inversion_rhs(params);
}

FunctionalReport functional_checks(const SeamLayout& layout,
                                   const std::vector<double>& us, double xi,
                                   int threads) {
  LinkBasis basis = LinkBasis::build(layout);
  int dim = basis.size();
  OperatorMatrix id = OperatorMatrix::Identity(dim, dim);
  FunctionalReport report;
  for (double u : us) {
    TransferParams at{layout, u, xi};
    OperatorMatrix D = contract_double_row(basis, u, xi, threads);
    OperatorMatrix D_shift =
        contract_double_row(basis, u + kLambdaCritical, xi, threads);

    double rhs_raw = inversion_rhs_unnormalized(at);
    double dev_raw =
        ((D * D_shift) - rhs_raw * id).cwiseAbs().maxCoeff() / std::abs(rhs_raw);
    OperatorMatrix d = normalize_d(D, at);
    OperatorMatrix d_shift = normalize_d(
        D_shift, TransferParams{layout, u + kLambdaCritical, xi});
    double rhs = inversion_rhs(at);
    double dev =
        ((d * d_shift) - rhs * id).cwiseAbs().maxCoeff() / std::abs(rhs);
    report.inversion = std::max(report.inversion, std::max(dev, dev_raw));

    OperatorMatrix D_cross =
        contract_double_row(basis, kLambdaCritical - u, xi, threads);
    report.crossing =
        std::max(report.crossing, (D_cross - D).cwiseAbs().maxCoeff());

    OperatorMatrix D_v = contract_double_row(basis, u + kPi / 12, xi, threads);
    report.commute = std::max(
        report.commute, (D * D_v - D_v * D).cwiseAbs().maxCoeff());
  }
  TransferParams small{layout, 1e-4, xi};
  OperatorMatrix d_small =
      normalize_d(contract_double_row(basis, small.u, xi, threads), small);
  report.init = (d_small - id).cwiseAbs().maxCoeff();
  return report;
}

OperatorMatrix hamiltonian(const LinkBasis& basis, double xi, int threads) {
  int rho = basis.layout.rho;
  double coupling_denom =
      std::sin(xi) * std::sin(xi + rho * kLambdaCritical);
  if (std::abs(coupling_denom) < 1e-12)
    throw std::domain_error("hamiltonian: singular boundary coupling");
  DoubleRowJets jets = contract_double_row_series(basis, xi, threads);
  int dim = basis.size();
  double lead = std::pow(2.0, rho - 2);
  if (jets.d0.cwiseAbs().maxCoeff() > 1e-10 ||
      (lead * jets.d1 - OperatorMatrix::Identity(dim, dim))
              .cwiseAbs()
              .maxCoeff() > 1e-9)
    throw std::runtime_error("hamiltonian: Taylor expansion of d(u) "
                             "inconsistent with D(0) = 0, d'(0) = I");
  return -std::pow(2.0, rho - 3) * jets.d2;
}

OperatorMatrix hamiltonian_word(const LinkBasis& basis, double xi,
                                WordOrder order) {
  const SeamLayout& layout = basis.layout;
  TLElement element;
  for (int j = 1; j <= layout.N - 1; ++j) element[TLWord{j}] = -1.0;
  if (layout.rho >= 2) {
    double denom =
        std::sin(xi) * std::sin(xi + layout.rho * kLambdaCritical);
    if (std::abs(denom) < 1e-12)
      throw std::domain_error("hamiltonian_word: singular boundary coupling");
    TLElement seam = generalized_projector_element(layout.N, layout.rho, 0.0);
    if (order == WordOrder::leftmost_first) {
      TLElement reversed;
      for (auto& [word, coeff] : seam) {
        TLWord w(word.rbegin(), word.rend());
        reversed[std::move(w)] = coeff;
      }
      seam = std::move(reversed);
    }
    tl_accumulate(element, seam, 1.0 / denom);
  }
  return tl_matrix(element, basis, 0.0);
}

}  // namespace densepoly
