#include "densepoly/tangle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "densepoly/parallel.hpp"

namespace densepoly {

namespace {

// Shared column builder: cosu(c)/sinu(c) stand for cos(u + c)/sin(u + c) in
// the chosen scalar type.
template <typename Scalar, typename CosF, typename SinF>
std::vector<std::array<BasicFace<Scalar>, 2>> build_columns(
    const SeamLayout& layout, double xi, CosF cosu, SinF sinu) {
  layout.validate();
  std::vector<std::array<BasicFace<Scalar>, 2>> columns;
  columns.reserve(layout.nodes());
  for (int c = 1; c <= layout.nodes(); ++c) {
    if (c <= layout.N) {
      columns.push_back({BasicFace<Scalar>{FaceKind::free, cosu(0.0), sinu(0.0)},
                         BasicFace<Scalar>{FaceKind::free, sinu(0.0), cosu(0.0)}});
    } else if (c <= layout.N + layout.rho - 1) {
      int cc = c - layout.N;
      double xib = xi + (layout.rho - 1 - cc) * kLambdaCritical;
      double xit = xi + (layout.rho - cc) * kLambdaCritical;
      columns.push_back({BasicFace<Scalar>{FaceKind::free, -sinu(xib), cosu(xib)},
                         BasicFace<Scalar>{FaceKind::free, sinu(-xit), cosu(-xit)}});
    } else {
      columns.push_back({BasicFace<Scalar>{FaceKind::frozen_b, Scalar{}, Scalar{1.0}},
                         BasicFace<Scalar>{FaceKind::frozen_a, Scalar{1.0}, Scalar{}}});
    }
  }
  return columns;
}

// Frontier sweep over slots 0..n+1: slot 0 carries the running top wire
// (seeded by the left boundary arc), slots 1..n the in-state nodes shifted by
// one, slot n+1 the right boundary wire. Sweeps a contiguous block of
// in-states at once: branch decisions depend only on the frontier key, so the
// block shares one key space and the per-key work is amortized over its
// columns. Payload component b is the running weight of in-state begin + b;
// closed loops annihilate their branch (beta = 0).
template <typename Scalar>
std::map<LinkState, std::vector<Scalar>> contract_frontier_block(
    const std::vector<std::array<BasicFace<Scalar>, 2>>& columns,
    const std::vector<LinkState>& in_states, int begin, int end) {
  int n = static_cast<int>(columns.size());
  int block = end - begin;
  auto join = [](std::vector<int>& p, int a, int b) {
    p[a] = b;
    p[b] = a;
  };
  auto accumulate = [block](std::vector<Scalar>& acc,
                            const std::vector<Scalar>& weight,
                            const Scalar& factor) {
    if (acc.empty()) acc.assign(block, Scalar{});
    for (int b = 0; b < block; ++b) acc[b] += weight[b] * factor;
  };

  std::map<std::vector<int>, std::vector<Scalar>> fronts;
  for (int b = 0; b < block; ++b) {
    const LinkState& in_state = in_states[begin + b];
    std::vector<int> init(n + 2);
    std::iota(init.begin(), init.end(), 0);
    init[0] = 1;
    init[1] = 0;
    for (int i = 0; i < n; ++i) {
      int j = in_state[i];
      if (i < j) {
        init[i + 2] = j + 2;
        init[j + 2] = i + 2;
      }
    }
    auto& seed = fronts[std::move(init)];
    if (seed.empty()) seed.assign(block, Scalar{});
    seed[b] = Scalar{1.0};
  }

  // Bottom row: branch a joins the two lower corners, branch b passes both
  // strands through.
  for (int c = 1; c <= n; ++c) {
    const auto& face = columns[c - 1][0];
    std::map<std::vector<int>, std::vector<Scalar>> next;
    for (const auto& [key, weight] : fronts) {
      for (int branch = 0; branch < 2; ++branch) {
        if (face.kind == FaceKind::frozen_a && branch != 0) continue;
        if (face.kind == FaceKind::frozen_b && branch != 1) continue;
        std::vector<int> p = key;
        if (branch == 0) {
          if (p[c] == c + 1) continue;
          join(p, p[c], p[c + 1]);
          p[c] = c + 1;
          p[c + 1] = c;
        }
        accumulate(next[std::move(p)], weight,
                   branch == 0 ? face.wa : face.wb);
      }
    }
    fronts = std::move(next);
  }

  // Top row: the wire recycles through slot 0.
  for (int c = 1; c <= n; ++c) {
    const auto& face = columns[c - 1][1];
    std::map<std::vector<int>, std::vector<Scalar>> next;
    for (const auto& [key, weight] : fronts) {
      for (int branch = 0; branch < 2; ++branch) {
        if (face.kind == FaceKind::frozen_a && branch != 0) continue;
        if (face.kind == FaceKind::frozen_b && branch != 1) continue;
        std::vector<int> p = key;
        if (branch == 0) {
          if (p[0] == c) continue;
          join(p, p[0], p[c]);
          p[0] = c;
          p[c] = 0;
        } else if (p[0] != c) {
          int x = p[0];
          int y = p[c];
          p[c] = x;
          p[x] = c;
          p[0] = y;
          p[y] = 0;
        }
        accumulate(next[std::move(p)], weight,
                   branch == 0 ? face.wa : face.wb);
      }
    }
    fronts = std::move(next);
  }

  // Right boundary arc joins the top wire to the bottom-right wire.
  std::map<LinkState, std::vector<Scalar>> out;
  for (const auto& [key, weight] : fronts) {
    if (key[0] == n + 1) continue;
    std::vector<int> p = key;
    join(p, p[0], p[n + 1]);
    LinkState state(p.begin() + 1, p.begin() + n + 1);
    for (int& x : state) --x;
    accumulate(out[std::move(state)], weight, Scalar{1.0});
  }
  return out;
}

// Fixed block width: the result is independent of it (merges only ever add
// exact zeros across columns), but a constant keeps the sweep partition
// stable across thread counts.
constexpr int kContractionBlock = 64;

std::vector<std::array<Face, 2>> double_columns_at(const SeamLayout& layout,
                                                   double u, double xi) {
  return build_columns<double>(
      layout, xi, [u](double c) { return std::cos(u + c); },
      [u](double c) { return std::sin(u + c); });
}

// Taylor jets of cos(u + c), sin(u + c) around u = 0.
std::vector<std::array<BasicFace<Jet2>, 2>> jet_columns(
    const SeamLayout& layout, double xi) {
  return build_columns<Jet2>(
      layout, xi,
      [](double c) { return Jet2{std::cos(c), -std::sin(c), -std::cos(c) / 2}; },
      [](double c) { return Jet2{std::sin(c), std::cos(c), -std::sin(c) / 2}; });
}

int clamp_threads(int threads) { return threads < 1 ? 1 : threads; }

}  // namespace

FaceGrid face_grid(const SeamLayout& layout, double u, double xi) {
  FaceGrid grid;
  grid.layout = layout;
  grid.u = u;
  grid.xi = xi;
  grid.columns = double_columns_at(layout, u, xi);
  return grid;
}

BasicFaceGrid<Jet2> face_grid_jets(const SeamLayout& layout, double xi) {
  BasicFaceGrid<Jet2> grid;
  grid.layout = layout;
  grid.xi = xi;
  grid.columns = jet_columns(layout, xi);
  return grid;
}

OperatorMatrix contract_double_row(const LinkBasis& basis, double u, double xi,
                                   int threads) {
  auto columns = double_columns_at(basis.layout, u, xi);
  int dim = basis.size();
  OperatorMatrix D = OperatorMatrix::Zero(dim, dim);
  int blocks = (dim + kContractionBlock - 1) / kContractionBlock;
  parallel_for_index(blocks, clamp_threads(threads), [&](int blk) {
    int begin = blk * kContractionBlock;
    int end = std::min(dim, begin + kContractionBlock);
    for (const auto& [out, weights] :
         contract_frontier_block(columns, basis.states, begin, end)) {
      int row = basis.find(out);
      if (row < 0) continue;
      for (int b = 0; b < end - begin; ++b) D(row, begin + b) += weights[b];
    }
  });
  if (!D.allFinite())
    throw std::runtime_error("contract_double_row: non-finite weight");
  return D;
}

DoubleRowJets contract_double_row_series(const LinkBasis& basis, double xi,
                                         int threads) {
  auto columns = jet_columns(basis.layout, xi);
  int dim = basis.size();
  DoubleRowJets jets{OperatorMatrix::Zero(dim, dim),
                     OperatorMatrix::Zero(dim, dim),
                     OperatorMatrix::Zero(dim, dim)};
  int blocks = (dim + kContractionBlock - 1) / kContractionBlock;
  parallel_for_index(blocks, clamp_threads(threads), [&](int blk) {
    int begin = blk * kContractionBlock;
    int end = std::min(dim, begin + kContractionBlock);
    for (const auto& [out, weights] :
         contract_frontier_block(columns, basis.states, begin, end)) {
      int row = basis.find(out);
      if (row < 0) continue;
      for (int b = 0; b < end - begin; ++b) {
        jets.d0(row, begin + b) += weights[b].a0;
        jets.d1(row, begin + b) += weights[b].a1;
        jets.d2(row, begin + b) += weights[b].a2;
      }
    }
  });
  return jets;
}

TLElement tl_product(const TLElement& a, const TLElement& b) {
  TLElement out;
  for (const auto& [wa, ca] : a)
    for (const auto& [wb, cb] : b) {
      TLWord w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      out[std::move(w)] += ca * cb;
    }
  return out;
}

TLElement& tl_accumulate(TLElement& a, const TLElement& b, double scale) {
  for (const auto& [w, c] : b) a[w] += scale * c;
  return a;
}

OperatorMatrix tl_matrix(const TLElement& element, const LinkBasis& basis,
                         double beta) {
  int dim = basis.size();
  OperatorMatrix M = OperatorMatrix::Zero(dim, dim);
  for (int col = 0; col < dim; ++col) {
    for (const auto& [word, coeff] : element) {
      LinkState state = basis.states[col];
      int loops = 0;
      for (auto it = word.rbegin(); it != word.rend(); ++it) {
        auto step = apply_generator(state, *it);
        state = std::move(step.state);
        loops += step.loops;
      }
      int row = basis.find(state);
      if (row < 0) continue;
      double factor = coeff;
      for (int l = 0; l < loops; ++l) factor *= beta;
      M(row, col) += factor;
    }
  }
  return M;
}

double chebyshev_second(int m, double beta) {
  if (m < -1) throw std::invalid_argument("chebyshev_second: m < -1");
  double prev = 0.0;  // U_{-1}
  double cur = 1.0;   // U_0
  if (m == -1) return prev;
  for (int k = 0; k < m; ++k) {
    double next = beta * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

LinkBasis boundary_rep(int T) {
  if (T < 0) throw std::invalid_argument("boundary_rep: T < 0");
  return LinkBasis::build(SeamLayout{T + 2, T + 1, 1});
}

TLElement generalized_projector_element(int start, int rho, double beta) {
  if (rho < 2) throw std::invalid_argument("generalized_projector: rho < 2");
  if (start < 1)
    throw std::invalid_argument("generalized_projector: start < 1");
  TLElement el;
  TLWord word;
  for (int k = 0; k <= rho - 2; ++k) {
    word.push_back(start + k);
    double coeff = (k % 2 == 0 ? 1.0 : -1.0) * chebyshev_second(rho - k - 2, beta);
    if (coeff != 0.0) el[word] += coeff;
  }
  return el;
}

OperatorMatrix generalized_projector(int rho, int start, double lambda,
                                     const LinkBasis& basis) {
  if (start + rho - 2 > basis.layout.nodes() - 1)
    throw std::invalid_argument("generalized_projector: index out of range");
  double beta = 2 * std::cos(lambda);
  return tl_matrix(generalized_projector_element(start, rho, beta), basis,
                   beta);
}

namespace {

double srel(double v, double lambda) { return std::sin(v) / std::sin(lambda); }

TLElement boundary_x_product(int rho, double u, double xi, double lambda,
                             int base) {
  TLElement product{{TLWord{}, 1.0}};
  auto x_factor = [&](int j, double v) {
    TLElement x{{TLWord{}, srel(lambda - v, lambda)}};
    x[TLWord{base + j}] = srel(v, lambda);
    return x;
  };
  for (int j = 0; j <= rho - 2; ++j)
    product = tl_product(product, x_factor(j, u - (xi + (rho - 1 - j) * lambda)));
  for (int j = rho - 2; j >= 0; --j)
    product = tl_product(product, x_factor(j, u + (xi + (rho - 1 - j) * lambda)));
  return product;
}

}  // namespace

OperatorMatrix boundary_operator_planar(int rho, double u, double xi,
                                        double lambda,
                                        const LinkBasis& basis) {
  if (rho < 1) throw std::invalid_argument("boundary_operator_planar: rho < 1");
  if (!(lambda > 0.0 && lambda < std::numbers::pi))
    throw std::invalid_argument("boundary_operator_planar: lambda outside (0, pi)");
  int base = basis.layout.N;
  if (base + rho - 2 > basis.layout.nodes() - 1)
    throw std::invalid_argument("boundary_operator_planar: basis too small");
  double eta = 1.0;
  for (int m = 1; m <= rho - 1; ++m)
    eta *= srel(lambda - u + xi + m * lambda, lambda) *
           srel(lambda - u - xi - m * lambda, lambda);
  if (std::abs(eta) < 1e-12)
    throw std::domain_error("boundary_operator_planar: singular normalization");
  double beta = 2 * std::cos(lambda);
  OperatorMatrix K =
      tl_matrix(boundary_x_product(rho, u, xi, lambda, base), basis, beta);
  return K / eta;
}

double verify_boundary_proposition(int rho, double u, double xi,
                                   double lambda) {
  LinkBasis basis = boundary_rep(rho - 1);
  int base = basis.layout.N;
  double beta = 2 * std::cos(lambda);
  OperatorMatrix K = boundary_operator_planar(rho, u, xi, lambda, basis);

  double denom = srel(u + xi, lambda) * srel(u - xi - rho * lambda, lambda);
  if (std::abs(denom) < 1e-12)
    throw std::domain_error("verify_boundary_proposition: singular coupling");
  double coupling = srel(2 * u, lambda) / denom;

  int dim = basis.size();
  OperatorMatrix closed = OperatorMatrix::Identity(dim, dim);
  if (rho >= 2)
    closed += coupling * tl_matrix(generalized_projector_element(base, rho, beta),
                                   basis, beta);
  double scale = std::max(1.0, closed.cwiseAbs().maxCoeff());
  double dev = (K - closed).cwiseAbs().maxCoeff() / scale;

  // Word-expansion coefficients alpha_i of the Corollary.
  OperatorMatrix expansion = OperatorMatrix::Identity(dim, dim);
  TLWord word;
  for (int i = 1; i <= rho - 1; ++i) {
    word.push_back(base + i - 1);
    double alpha = (i % 2 == 1 ? 1.0 : -1.0) *
                   chebyshev_second(rho - i - 1, beta) * coupling;
    expansion += alpha * tl_matrix(TLElement{{word, 1.0}}, basis, beta);
  }
  return std::max(dev, (K - expansion).cwiseAbs().maxCoeff() / scale);
}

double verify_projector_properties(int rho, int rho_prime, double lambda) {
  LinkBasis basis = boundary_rep(std::max(rho, rho_prime));
  return verify_projector_properties(rho, rho_prime, lambda, basis);
}

double verify_projector_properties(int rho, int rho_prime, double lambda,
                                   const LinkBasis& basis) {
  if (rho < 2 || rho_prime < 2)
    throw std::invalid_argument("verify_projector_properties: rho < 2");
  int base = basis.layout.N;
  if (base + rho > basis.layout.nodes())
    throw std::invalid_argument("verify_projector_properties: basis too small");
  double beta = 2 * std::cos(lambda);
  auto mat = [&](const TLElement& el) { return tl_matrix(el, basis, beta); };
  TLElement p1 = generalized_projector_element(base + 1, rho, beta);
  TLElement p1p = generalized_projector_element(base + 1, rho_prime, beta);
  TLElement e0{{TLWord{base}, 1.0}};

  double dev = (mat(tl_product(p1p, p1)) -
                chebyshev_second(rho_prime - 1, beta) * mat(p1))
                   .cwiseAbs()
                   .maxCoeff();
  dev = std::max(dev, mat(tl_product(p1, e0)).cwiseAbs().maxCoeff());
  dev = std::max(
      dev, (mat(tl_product(e0, p1)) - chebyshev_second(rho - 1, beta) * mat(e0) +
            mat(generalized_projector_element(base, rho + 1, beta)))
               .cwiseAbs()
               .maxCoeff());
  dev = std::max(dev, (mat(tl_product(tl_product(e0, p1), e0)) -
                       chebyshev_second(rho - 2, beta) * mat(e0))
                          .cwiseAbs()
                          .maxCoeff());
  return dev;
}

}  // namespace densepoly
