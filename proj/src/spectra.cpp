#include "densepoly/spectra.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "densepoly/transfer.hpp"

namespace densepoly {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

std::vector<double> pattern_levels(int N, int s) {
  std::vector<double> ts;
  if (s % 2 == 1) {
    for (int j = 1; j <= (N - 1) / 2; ++j) ts.push_back(j * kPi / N);
  } else {
    for (int j = 1; j <= N / 2; ++j) ts.push_back((2 * j - 1) * kPi / (2 * N));
  }
  return ts;
}

double pattern_value(const SignPattern& pattern, double u, int N, int s) {
  auto ts = pattern_levels(N, s);
  if (pattern.levels() != static_cast<int>(ts.size()))
    throw std::invalid_argument("pattern_value: level count mismatch");
  double x = std::sin(2 * u);
  double value = 1.0;
  for (std::size_t j = 0; j < ts.size(); ++j) {
    double xj = std::sin(ts[j]) * x;
    switch (pattern.minus[j]) {
      case 0: value *= (1 + xj) * (1 + xj); break;
      case 1: value *= (1 + xj) * (1 - xj); break;
      case 2: value *= (1 - xj) * (1 - xj); break;
      default:
        throw std::invalid_argument("pattern_value: minus entry outside 0..2");
    }
  }
  if (pattern.shifted) value *= (1 + x) / (1 - x);
  return value;
}

long long pattern_energy_twice(const SignPattern& pattern, int N, int s) {
  long long twice = 0;
  for (int j = 1; j <= pattern.levels(); ++j)
    twice += static_cast<long long>(pattern.minus[j - 1]) *
             (s % 2 == 1 ? 2 * j : 2 * j - 1);
  if (pattern.shifted) twice += N;
  return twice;
}

double hamiltonian_pattern_energy(const SignPattern& pattern, int N, int s) {
  auto ts = pattern_levels(N, s);
  if (pattern.levels() != static_cast<int>(ts.size()))
    throw std::invalid_argument("hamiltonian_pattern_energy: level mismatch");
  double energy = 0.0;
  for (std::size_t j = 0; j < ts.size(); ++j)
    energy -= (2.0 - 2.0 * pattern.minus[j]) * std::sin(ts[j]);
  if (pattern.shifted) energy -= 2.0;
  return energy;
}

namespace {

std::vector<SignPattern> candidate_patterns(const SeamLayout& layout) {
  int M = static_cast<int>(pattern_levels(layout.N, layout.s).size());
  std::vector<SignPattern> candidates;
  SignPattern current;
  current.minus.assign(M, 0);
  while (true) {
    candidates.push_back(current);
    if (!layout.rho_even()) {
      SignPattern shifted = current;
      shifted.shifted = true;
      candidates.push_back(std::move(shifted));
    }
    int j = 0;
    while (j < M && current.minus[j] == 2) current.minus[j++] = 0;
    if (j == M) break;
    ++current.minus[j];
  }
  return candidates;
}

std::vector<double> real_eigenvalues(const OperatorMatrix& m) {
  Eigen::EigenSolver<OperatorMatrix> solver(m);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("classify_spectrum: eigensolver failed");
  auto eigs = solver.eigenvalues();
  double scale = std::max(1.0, eigs.cwiseAbs().maxCoeff());
  std::vector<double> out;
  out.reserve(eigs.size());
  for (Eigen::Index i = 0; i < eigs.size(); ++i) {
    if (std::abs(eigs[i].imag()) > 1e-8 * scale) {
      std::ostringstream msg;
      msg << "classify_spectrum: eigenvalue " << eigs[i].real() << " + "
          << eigs[i].imag() << "i has a non-negligible imaginary part";
      throw std::runtime_error(msg.str());
    }
    out.push_back(eigs[i].real());
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool within(double value, double target, double rel_tol) {
  return std::abs(value - target) <= rel_tol * std::max(1.0, std::abs(target));
}

}  // namespace

std::vector<SpectrumRecord> classify_spectrum(const LinkBasis& basis,
                                              const ClassifyOptions& options) {
  const SeamLayout& layout = basis.layout;
  auto candidates = candidate_patterns(layout);
  std::vector<std::array<double, 2>> predicted(candidates.size());
  for (std::size_t c = 0; c < candidates.size(); ++c)
    for (int p = 0; p < 2; ++p)
      predicted[c][p] =
          pattern_value(candidates[c], options.probes[p], layout.N, layout.s);

  std::array<std::vector<double>, 2> eigs;
  for (int p = 0; p < 2; ++p) {
    TransferParams params{layout, options.probes[p], options.xi};
    OperatorMatrix d = normalize_d(
        contract_double_row(basis, params.u, params.xi, options.threads),
        params);
    eigs[p] = real_eigenvalues(d);
  }

  // Match probe-1 eigenvalues to candidates; probe 2 must confirm.
  std::map<std::size_t, std::vector<double>> assigned1;
  for (double eig : eigs[0]) {
    std::vector<std::size_t> matches;
    for (std::size_t c = 0; c < candidates.size(); ++c)
      if (within(eig, predicted[c][0], options.rel_tol)) matches.push_back(c);
    if (matches.size() > 1) {
      std::erase_if(matches, [&](std::size_t c) {
        return std::none_of(eigs[1].begin(), eigs[1].end(), [&](double e2) {
          return within(e2, predicted[c][1], options.rel_tol);
        });
      });
    }
    if (matches.empty()) {
      std::ostringstream msg;
      msg << "classify_spectrum: no candidate pattern for eigenvalue " << eig
          << " in sector (N=" << layout.N << ", rho=" << layout.rho
          << ", s=" << layout.s << ")";
      throw std::runtime_error(msg.str());
    }
    if (matches.size() > 1) {
      std::ostringstream msg;
      msg << "classify_spectrum: ambiguous candidates for eigenvalue " << eig
          << " in sector (N=" << layout.N << ", rho=" << layout.rho
          << ", s=" << layout.s << ")";
      throw std::runtime_error(msg.str());
    }
    assigned1[matches.front()].push_back(eig);
  }

  // Greedy multiset confirmation at probe 2: every assigned pattern must
  // reclaim as many probe-2 eigenvalues as its multiplicity.
  std::vector<bool> used(eigs[1].size(), false);
  std::vector<SpectrumRecord> records;
  for (const auto& [c, matched] : assigned1) {
    SpectrumRecord record;
    record.pattern = candidates[c];
    record.energy_twice =
        pattern_energy_twice(record.pattern, layout.N, layout.s);
    record.multiplicity = static_cast<int>(matched.size());
    double sum1 = 0.0;
    for (double e : matched) sum1 += e;
    double sum2 = 0.0;
    int confirmed = 0;
    for (std::size_t i = 0; i < eigs[1].size() && confirmed < record.multiplicity;
         ++i) {
      if (used[i] || !within(eigs[1][i], predicted[c][1], options.rel_tol))
        continue;
      used[i] = true;
      sum2 += eigs[1][i];
      ++confirmed;
    }
    if (confirmed != record.multiplicity) {
      std::ostringstream msg;
      msg << "classify_spectrum: probe 2 does not confirm pattern multiplicity "
          << record.multiplicity << " in sector (N=" << layout.N
          << ", rho=" << layout.rho << ", s=" << layout.s << ")";
      throw std::runtime_error(msg.str());
    }
    record.values = {sum1 / record.multiplicity, sum2 / record.multiplicity};
    records.push_back(std::move(record));
  }
  std::sort(records.begin(), records.end(),
            [](const SpectrumRecord& a, const SpectrumRecord& b) {
              if (a.energy_twice != b.energy_twice)
                return a.energy_twice < b.energy_twice;
              return a.pattern < b.pattern;
            });
  return records;
}

std::vector<SpectrumRecord> classify_spectrum_with_retry(
    const LinkBasis& basis, const ClassifyOptions& options) {
  try {
    return classify_spectrum(basis, options);
  } catch (const std::runtime_error&) {
    ClassifyOptions retry = options;
    retry.probes[1] = options.retry_probe;
    return classify_spectrum(basis, retry);
  }
}

QExpPoly generating_polynomial(const std::vector<SpectrumRecord>& records) {
  QExpPoly G;
  for (const auto& record : records)
    G += QExpPoly::monomial(12 * record.energy_twice, record.multiplicity);
  return G;
}

std::map<SignPattern, long long> predicted_pattern_multiplicities(
    const SeamLayout& layout) {
  layout.validate();
  int M = static_cast<int>(pattern_levels(layout.N, layout.s).size());
  int rho = layout.rho;
  int s = layout.s;
  std::vector<std::pair<bool, int>> blocks;
  if (s % 2 == 1) {
    for (int k = 1; k <= s; ++k) {
      if (layout.rho_even()) {
        blocks.emplace_back(false, (rho - s - 1 + 2 * k) / 2);
      } else {
        blocks.emplace_back(false, (rho - s + 2 * k) / 2);
        blocks.emplace_back(true, (rho - s - 2 + 2 * k) / 2);
      }
    }
  } else {
    for (int k = 1; k <= s / 2; ++k) {
      if (layout.rho_even()) {
        blocks.emplace_back(false, (rho - s - 2 + 4 * k) / 2);
      } else {
        blocks.emplace_back(false, (rho - s - 1 + 4 * k) / 2);
        blocks.emplace_back(true, (rho - s - 3 + 4 * k) / 2);
      }
    }
  }
  std::map<SignPattern, long long> counts;
  for (auto [shifted, rprime] : blocks) {
    if (rprime == 0) continue;
    long long sign = 1;
    if (rprime < 0) {
      sign = -1;
      rprime = -rprime;
    }
    for (int m = 0; m + rprime - 1 <= M; ++m) {
      for (const auto& column :
           enumerate_double_columns(M, m, m + rprime - 1, true)) {
        SignPattern pattern;
        pattern.minus.assign(M, 0);
        pattern.shifted = shifted;
        for (int level : column.left) ++pattern.minus[level - 1];
        for (int level : column.right) ++pattern.minus[level - 1];
        counts[pattern] += sign;
      }
    }
  }
  std::erase_if(counts, [](const auto& entry) { return entry.second == 0; });
  for (const auto& [pattern, count] : counts)
    if (count < 0)
      throw std::runtime_error(
          "predicted_pattern_multiplicities: negative signed count");
  return counts;
}

SignPattern groundstate_pattern(const SeamLayout& layout) {
  auto counts = predicted_pattern_multiplicities(layout);
  if (counts.empty())
    throw std::domain_error("groundstate_pattern: empty sector");
  auto best = counts.begin();
  for (auto it = counts.begin(); it != counts.end(); ++it) {
    long long e_it = pattern_energy_twice(it->first, layout.N, layout.s);
    long long e_best = pattern_energy_twice(best->first, layout.N, layout.s);
    if (e_it < e_best) best = it;
  }
  return best->first;
}

}  // namespace densepoly
