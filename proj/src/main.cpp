#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "densepoly/cli.hpp"

namespace {

// Attach the flags shared by the sector-based subcommands.
void add_sector_flags(CLI::App* cmd, densepoly::cli::RunConfig& config) {
  cmd->add_option("--N", config.N, "strip width (number of bulk nodes)");
  cmd->add_option("--r", config.r, "Kac label r");
  cmd->add_option("--s", config.s, "Kac label s");
  cmd->add_option("--rho-parity", config.rho_parity,
                  "seam realization of r: 'even' (rho=2r) or 'odd' (rho=2r-1)")
      ->check(CLI::IsMember({"even", "odd"}));
}

void add_output_flags(CLI::App* cmd, densepoly::cli::RunConfig& config) {
  cmd->add_option("--out", config.out_path, "write output to file");
  cmd->add_option("--format", config.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}));
}

}  // namespace

int main(int argc, char** argv) {
  densepoly::cli::RunConfig config;

  CLI::App app{"critical dense polymer strip: transfer matrices, spectra, "
               "q-Catalan selection rules, finitized characters"};
  app.require_subcommand(1);
  app.add_option("--jobs", config.jobs, "worker threads")
      ->envname("DENSEPOLY_JOBS")
      ->check(CLI::PositiveNumber);

  auto* dims = app.add_subcommand("dims", "sector dimension table");
  add_sector_flags(dims, config);
  dims->add_option("--Nmin", config.Nmin, "table range start");
  dims->add_option("--Nmax", config.Nmax, "table range end");
  add_output_flags(dims, config);

  auto* verify = app.add_subcommand(
      "verify", "inversion identity, crossing symmetry, commutation, d(0)=I");
  add_sector_flags(verify, config);
  verify->add_option("--u", config.us, "spectral parameters (radians)")
      ->delimiter(',');
  verify->add_option("--xi", config.xi, "boundary field xi");
  verify->add_option("--tol", config.tol, "deviation tolerance override");
  add_output_flags(verify, config);

  auto* spectrum = app.add_subcommand(
      "spectrum", "classified eigenvalues with sign patterns and energies");
  add_sector_flags(spectrum, config);
  spectrum->add_option("--u", config.us, "export probe (radians)")
      ->delimiter(',');
  spectrum->add_option("--xi", config.xi, "boundary field xi");
  spectrum->add_option("--tol", config.tol, "eigenvalue matching tolerance");
  spectrum->add_option("--matrix-out", config.matrix_out,
                       "export D(u) to this path");
  spectrum->add_flag("--matrix-binary", config.matrix_binary,
                     "raw column-major float64 export");
  add_output_flags(spectrum, config);

  auto* selection = app.add_subcommand(
      "selection",
      "compare classified G(q), q-Catalan selection sum, finitized character");
  add_sector_flags(selection, config);
  selection->add_option("--xi", config.xi, "boundary field xi");
  add_output_flags(selection, config);

  auto* qcat = app.add_subcommand("qcat", "q-Catalan polynomial");
  qcat->add_option("--M", config.M, "half-width index M");
  qcat->add_option("--r", config.r, "Catalan index r (negative mirrors)");
  qcat->add_option("--kind", config.kind, "'plain' or 'primed'")
      ->check(CLI::IsMember({"plain", "primed"}));
  add_output_flags(qcat, config);

  auto* characters = app.add_subcommand(
      "characters", "Kac character series and its irreducible decomposition");
  add_sector_flags(characters, config);
  characters->add_option("--order", config.order, "truncation order");
  add_output_flags(characters, config);

  auto* fit = app.add_subcommand(
      "fit", "finite-size fit of central charge and conformal weight");
  add_sector_flags(fit, config);
  fit->add_option("--Nmin", config.Nmin, "fit range start");
  fit->add_option("--Nmax", config.Nmax, "fit range end");
  fit->add_option("--u", config.us, "fit point (radians)")->delimiter(',');
  fit->add_option("--tol", config.tol, "gate |c+2| and |delta-exact|");
  add_output_flags(fit, config);

  auto* hamiltonian = app.add_subcommand(
      "hamiltonian", "Hamiltonian limit spectrum against pattern energies");
  add_sector_flags(hamiltonian, config);
  hamiltonian->add_option("--xi", config.xi, "boundary field xi");
  hamiltonian->add_option("--tol", config.tol, "matching tolerance");
  hamiltonian->add_option("--matrix-out", config.matrix_out,
                          "export H to this path");
  hamiltonian->add_flag("--matrix-binary", config.matrix_binary,
                        "raw column-major float64 export");
  add_output_flags(hamiltonian, config);

  auto* boundary = app.add_subcommand(
      "boundary", "boundary operator factorization and projector properties");
  boundary->add_option("--r", config.r, "Kac label r");
  boundary->add_option("--rho-parity", config.rho_parity,
                       "seam realization of r")
      ->check(CLI::IsMember({"even", "odd"}));
  boundary->add_option("--rho-prime", config.rho_prime,
                       "second projector index (default rho)");
  boundary->add_option("--lambda", config.lambda, "crossing parameter");
  boundary->add_option("--u", config.us, "spectral parameter (radians)")
      ->delimiter(',');
  boundary->add_option("--xi", config.xi, "boundary field xi");
  boundary->add_option("--tol", config.tol, "deviation tolerance");
  add_output_flags(boundary, config);

  // Let --jobs (and a stray --out) be accepted after the subcommand name too.
  for (CLI::App* sub : app.get_subcommands([](CLI::App*) { return true; }))
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  for (CLI::App* sub : app.get_subcommands()) config.command = sub->get_name();

  std::ostringstream buffer;
  int status = 0;
  try {
    status = densepoly::cli::dispatch(config, buffer);
  } catch (const std::invalid_argument& e) {
    std::cerr << "{\"error\":\"" << e.what() << "\"}\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "{\"error\":\"" << e.what() << "\"}\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "{\"error\":\"" << e.what() << "\"}\n";
    return 1;
  }

  if (config.out_path.empty()) {
    std::cout << buffer.str();
  } else {
    std::ofstream file(config.out_path);
    if (!file) {
      std::cerr << "{\"error\":\"cannot open output file " << config.out_path
                << "\"}\n";
      return 2;
    }
    file << buffer.str();
  }
  return status;
}
