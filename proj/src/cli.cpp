#include "densepoly/cli.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "densepoly/linkstates.hpp"
#include "densepoly/qseries.hpp"
#include "densepoly/scaling.hpp"
#include "densepoly/spectra.hpp"
#include "densepoly/transfer.hpp"

namespace densepoly::cli {

namespace {

// Shortest round-trip decimal form, identical across runs and job counts.
std::string fmt(double v) {
  if (v == 0.0) v = 0.0;  // print negative zero as 0
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt(const std::vector<double>& vs) {
  std::string out = "[";
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) out += ",";
    out += fmt(vs[i]);
  }
  return out + "]";
}

std::string json_poly(const QExpPoly& poly) {
  std::string out = "[";
  bool first = true;
  for (const auto& [exp, coeff] : poly.terms()) {
    if (!first) out += ",";
    first = false;
    out += "[" + std::to_string(exp) + "," + coeff.get_str() + "]";
  }
  return out + "]";
}

std::string json_layout(const SeamLayout& layout) {
  return "{\"N\":" + std::to_string(layout.N) +
         ",\"rho\":" + std::to_string(layout.rho) +
         ",\"s\":" + std::to_string(layout.s) + "}";
}

std::string json_minus(const std::vector<int>& minus) {
  std::string out = "[";
  for (std::size_t i = 0; i < minus.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(minus[i]);
  }
  return out + "]";
}

// Energies live in half-integers; render 2E = 5 as "5/2" and 2E = 4 as "2".
std::string energy_string(long long twice) {
  if (twice % 2 == 0) return std::to_string(twice / 2);
  return std::to_string(twice) + "/2";
}

int require(const std::optional<int>& value, const char* flag) {
  if (!value)
    throw std::invalid_argument(std::string("missing required flag ") + flag);
  return *value;
}

RhoParity parse_parity(const std::string& text) {
  if (text == "even") return RhoParity::even;
  if (text == "odd") return RhoParity::odd;
  throw std::invalid_argument("--rho-parity must be 'even' or 'odd'");
}

int rho_of(int r, RhoParity parity) {
  if (r < 1) throw std::invalid_argument("--r must be positive");
  return parity == RhoParity::even ? 2 * r : 2 * r - 1;
}

SeamLayout sector_of(const RunConfig& config) {
  SeamLayout layout;
  layout.N = require(config.N, "--N");
  layout.s = require(config.s, "--s");
  layout.rho = rho_of(require(config.r, "--r"), parse_parity(config.rho_parity));
  layout.validate();
  return layout;
}

std::string format_of(const RunConfig& config, const char* fallback) {
  if (config.format.empty()) return fallback;
  if (config.format != "json" && config.format != "csv")
    throw std::invalid_argument("--format must be 'json' or 'csv'");
  return config.format;
}

void export_matrix(const RunConfig& config, const OperatorMatrix& matrix,
                   const SeamLayout& layout, double u) {
  std::ofstream file(config.matrix_out,
                     config.matrix_binary ? std::ios::binary : std::ios::out);
  if (!file)
    throw std::invalid_argument("cannot open matrix output file " +
                                config.matrix_out);
  if (config.matrix_binary) {
    file.write(reinterpret_cast<const char*>(matrix.data()),
               static_cast<std::streamsize>(sizeof(double) * matrix.size()));
    return;
  }
  file << "{\"basis\":" << json_layout(layout) << ",\"u\":" << fmt(u)
       << ",\"xi\":" << fmt(config.xi) << ",\"lambda\":" << fmt(kLambdaCritical)
       << ",\"entries\":[";
  for (Eigen::Index i = 0; i < matrix.rows(); ++i)
    for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
      if (i || j) file << ",";
      file << fmt(matrix(i, j));
    }
  file << "]}\n";
}

int run_dims(const RunConfig& config, std::ostream& out) {
  int r = require(config.r, "--r");
  int s = require(config.s, "--s");
  RhoParity parity = parse_parity(config.rho_parity);
  if (config.N) {
    SeamLayout layout{*config.N, rho_of(r, parity), s};
    layout.validate();
    out << dimension(layout) << "\n";
    return 0;
  }
  int lo = require(config.Nmin, "--N or --Nmin");
  int hi = require(config.Nmax, "--Nmax");
  std::string format = format_of(config, "csv");
  if (format == "csv") out << "N,dim\n";
  bool first = true;
  if (format == "json") out << "[";
  for (int N = lo; N <= hi; ++N) {
    SeamLayout layout{N, rho_of(r, parity), s};
    if (!layout.parity_consistent()) continue;
    if (format == "csv") {
      out << N << "," << dimension(layout) << "\n";
    } else {
      if (!first) out << ",";
      first = false;
      out << "{\"N\":" << N << ",\"dim\":" << dimension(layout) << "}";
    }
  }
  if (format == "json") out << "]\n";
  return 0;
}

int run_verify(const RunConfig& config, std::ostream& out) {
  SeamLayout layout = sector_of(config);
  std::vector<double> us = config.us.empty() ? std::vector<double>{0.21, 0.13}
                                             : config.us;
  FunctionalReport report =
      functional_checks(layout, us, config.xi, config.jobs);
  double tol_inv = config.tol.value_or(1e-9);
  double tol_alg = config.tol.value_or(1e-10);
  double tol_init = 1e-3;
  bool pass = report.inversion <= tol_inv && report.crossing <= tol_alg &&
              report.commute <= tol_alg && report.init <= tol_init;
  out << "{\"sector\":" << json_layout(layout) << ",\"u\":" << fmt(us)
      << ",\"xi\":" << fmt(config.xi) << ",\"checks\":{\"inversion\":"
      << fmt(report.inversion) << ",\"crossing\":" << fmt(report.crossing)
      << ",\"commute\":" << fmt(report.commute) << ",\"init\":"
      << fmt(report.init) << "},\"tols\":{\"inversion\":" << fmt(tol_inv)
      << ",\"crossing\":" << fmt(tol_alg) << ",\"commute\":" << fmt(tol_alg)
      << ",\"init\":" << fmt(tol_init) << "},\"pass\":"
      << (pass ? "true" : "false") << "}\n";
  return pass ? 0 : 1;
}

int run_spectrum(const RunConfig& config, std::ostream& out) {
  SeamLayout layout = sector_of(config);
  LinkBasis basis = LinkBasis::build(layout);
  ClassifyOptions options;
  options.rel_tol = config.tol.value_or(options.rel_tol);
  options.xi = config.xi;
  options.threads = config.jobs;
  std::vector<SpectrumRecord> records =
      classify_spectrum_with_retry(basis, options);
  if (!config.matrix_out.empty()) {
    double u = config.us.empty() ? options.probes[0] : config.us[0];
    TransferParams params{layout, u, config.xi};
    export_matrix(config, build_D(params, config.jobs), layout, u);
  }
  std::string format = format_of(config, "json");
  if (format == "csv") {
    out << "minus,shifted,energy,multiplicity,value1,value2\n";
    for (const auto& rec : records) {
      for (int m : rec.pattern.minus) out << m;
      out << "," << (rec.pattern.shifted ? 1 : 0) << ","
          << energy_string(rec.energy_twice) << "," << rec.multiplicity << ","
          << fmt(rec.values[0]) << "," << fmt(rec.values[1]) << "\n";
    }
    return 0;
  }
  out << "[";
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& rec = records[i];
    if (i) out << ",";
    out << "{\"minus\":" << json_minus(rec.pattern.minus) << ",\"shifted\":"
        << (rec.pattern.shifted ? "true" : "false") << ",\"energy\":\""
        << energy_string(rec.energy_twice) << "\",\"multiplicity\":"
        << rec.multiplicity << ",\"values\":[" << fmt(rec.values[0]) << ","
        << fmt(rec.values[1]) << "]}";
  }
  out << "]\n";
  return 0;
}

int run_selection(const RunConfig& config, std::ostream& out) {
  SeamLayout layout = sector_of(config);
  LinkBasis basis = LinkBasis::build(layout);
  ClassifyOptions options;
  options.threads = config.jobs;
  options.xi = config.xi;
  QExpPoly measured = generating_polynomial(classify_spectrum_with_retry(basis, options));
  QExpPoly selected = selection_sum(layout.N, layout.rho, layout.s);
  QExpPoly character = finitized_character(
      layout.N, layout.r(), layout.s,
      layout.rho_even() ? RhoParity::even : RhoParity::odd);
  QExpPoly::Exp prefactor24 = layout.s % 2 == 1 ? 2 : -1;
  bool pass =
      measured == selected && selected.shifted(prefactor24) == character;
  out << measured.to_string() << "\n";
  if (!pass)
    out << "{\"error\":\"selection mismatch\",\"classified\":"
        << json_poly(measured) << ",\"selection_sum\":" << json_poly(selected)
        << ",\"character\":" << json_poly(character) << "}\n";
  return pass ? 0 : 1;
}

int run_qcat(const RunConfig& config, std::ostream& out) {
  int M = require(config.M, "--M");
  int r = require(config.r, "--r");
  CatalanKind kind;
  if (config.kind == "plain") {
    kind = CatalanKind::plain;
  } else if (config.kind == "primed") {
    kind = CatalanKind::primed;
  } else {
    throw std::invalid_argument("--kind must be 'plain' or 'primed'");
  }
  out << q_catalan(M, r, kind).to_string() << "\n";
  return 0;
}

int run_characters(const RunConfig& config, std::ostream& out) {
  int r = require(config.r, "--r");
  int s = require(config.s, "--s");
  int order = config.order.value_or(12);
  if (order < 0) throw std::invalid_argument("--order must be nonnegative");
  QExpPoly series = character_series(r, s, order);
  QExpPoly decomposition = character_decomposition(r, s, order);
  bool pass = series == decomposition;
  std::string format = format_of(config, "json");
  if (format == "csv") {
    out << "exponent24,coefficient\n";
    for (const auto& [exp, coeff] : series.terms())
      out << exp << "," << coeff.get_str() << "\n";
    return pass ? 0 : 1;
  }
  out << "{\"r\":" << r << ",\"s\":" << s << ",\"order\":" << order
      << ",\"series\":" << json_poly(series) << ",\"pretty\":\""
      << series.to_string() << "\",\"decomposition_matches\":"
      << (pass ? "true" : "false");
  if (config.N) {
    RhoParity parity = config.rho_parity.empty()
                           ? RhoParity::even
                           : parse_parity(config.rho_parity);
    out << ",\"finitized\":"
        << json_poly(finitized_character(*config.N, r, s, parity));
  }
  out << "}\n";
  return pass ? 0 : 1;
}

int run_fit(const RunConfig& config, std::ostream& out) {
  int r = require(config.r, "--r");
  int s = require(config.s, "--s");
  RhoParity parity = parse_parity(config.rho_parity);
  double u = config.us.empty() ? std::numbers::pi / 6 : config.us[0];
  int Nmin = config.Nmin.value_or(16);
  int Nmax = config.Nmax.value_or(64);
  ConformalFit fit = fit_conformal(r, s, parity, u, Nmin, Nmax);
  std::string format = config.format;
  if (!format.empty() && format != "json" && format != "csv")
    throw std::invalid_argument("--format must be 'json' or 'csv'");
  if (format != "json") {
    out << "N,E,E_minus_bulk_bdy,predicted\n";
    for (const auto& row : fit.rows)
      out << static_cast<long long>(row[0]) << "," << fmt(row[1]) << ","
          << fmt(row[2]) << "," << fmt(row[3]) << "\n";
  }
  if (format != "csv") {
    out << "{\"c_est\":" << fmt(fit.c_est) << ",\"delta_est\":"
        << fmt(fit.delta_est) << ",\"residual\":" << fmt(fit.residual);
    if (config.tol) out << ",\"tol\":" << fmt(*config.tol);
    out << "}\n";
  }
  if (config.tol) {
    bool pass = std::abs(fit.c_est + 2.0) <= *config.tol &&
                std::abs(fit.delta_est - kac_weight(r, s)) <= *config.tol;
    return pass ? 0 : 1;
  }
  return 0;
}

int run_hamiltonian(const RunConfig& config, std::ostream& out) {
  SeamLayout layout = sector_of(config);
  LinkBasis basis = LinkBasis::build(layout);
  OperatorMatrix H = hamiltonian(basis, config.xi, config.jobs);
  if (!config.matrix_out.empty()) export_matrix(config, H, layout, 0.0);

  double tol = config.tol.value_or(1e-8);
  Eigen::VectorXcd eigs = H.eigenvalues();
  double scale = std::max(1.0, eigs.cwiseAbs().maxCoeff());
  std::vector<double> measured;
  measured.reserve(eigs.size());
  for (Eigen::Index i = 0; i < eigs.size(); ++i) {
    if (std::abs(eigs[i].imag()) > tol * scale)
      throw std::runtime_error("hamiltonian eigenvalue has imaginary part " +
                               fmt(eigs[i].imag()));
    measured.push_back(eigs[i].real());
  }
  std::sort(measured.begin(), measured.end());

  auto predicted = predicted_pattern_multiplicities(layout);
  std::vector<double> expected;
  for (const auto& [pattern, mult] : predicted) {
    double energy = hamiltonian_pattern_energy(pattern, layout.N, layout.s);
    expected.insert(expected.end(), mult, energy);
  }
  std::sort(expected.begin(), expected.end());

  double worst = 0.0;
  bool pass = measured.size() == expected.size();
  if (pass)
    for (std::size_t i = 0; i < measured.size(); ++i)
      worst = std::max(worst, std::abs(measured[i] - expected[i]) /
                                  std::max(1.0, std::abs(expected[i])));
  pass = pass && worst <= tol;

  out << "{\"sector\":" << json_layout(layout) << ",\"dim\":" << basis.size()
      << ",\"eigenvalues\":" << fmt(measured) << ",\"patterns\":[";
  bool first = true;
  for (const auto& [pattern, mult] : predicted) {
    if (!first) out << ",";
    first = false;
    out << "{\"minus\":" << json_minus(pattern.minus) << ",\"shifted\":"
        << (pattern.shifted ? "true" : "false") << ",\"energy\":"
        << fmt(hamiltonian_pattern_energy(pattern, layout.N, layout.s))
        << ",\"multiplicity\":" << mult << "}";
  }
  out << "],\"max_deviation\":" << fmt(worst) << ",\"tol\":" << fmt(tol)
      << ",\"pass\":" << (pass ? "true" : "false") << "}\n";
  return pass ? 0 : 1;
}

int run_boundary(const RunConfig& config, std::ostream& out) {
  int rho = rho_of(require(config.r, "--r"), parse_parity(config.rho_parity));
  double u = config.us.empty() ? 0.313 : config.us[0];
  double tol = config.tol.value_or(1e-10);
  double proposition =
      verify_boundary_proposition(rho, u, config.xi, config.lambda);
  double properties =
      verify_projector_properties(rho, config.rho_prime.value_or(rho),
                                  config.lambda);
  bool pass = proposition <= tol && properties <= tol;
  out << "{\"rho\":" << rho << ",\"lambda\":" << fmt(config.lambda)
      << ",\"u\":" << fmt(u) << ",\"xi\":" << fmt(config.xi)
      << ",\"proposition\":" << fmt(proposition)
      << ",\"projector_properties\":" << fmt(properties) << ",\"tol\":"
      << fmt(tol) << ",\"pass\":" << (pass ? "true" : "false") << "}\n";
  return pass ? 0 : 1;
}

}  // namespace

int dispatch(const RunConfig& config, std::ostream& out) {
  if (config.jobs < 1) throw std::invalid_argument("--jobs must be positive");
  if (config.command == "dims") return run_dims(config, out);
  if (config.command == "verify") return run_verify(config, out);
  if (config.command == "spectrum") return run_spectrum(config, out);
  if (config.command == "selection") return run_selection(config, out);
  if (config.command == "qcat") return run_qcat(config, out);
  if (config.command == "characters") return run_characters(config, out);
  if (config.command == "fit") return run_fit(config, out);
  if (config.command == "hamiltonian") return run_hamiltonian(config, out);
  if (config.command == "boundary") return run_boundary(config, out);
  throw std::invalid_argument("unknown subcommand " + config.command);
}

}  // namespace densepoly::cli
