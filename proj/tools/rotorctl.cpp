// SPDX-License-Identifier: Apache-2.0
#include <chrono>
#include <functional>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "rotor/errors.hpp"

namespace {

enum Exit { kOk = 0, kUsage = 1, kPrecondition = 2, kNumeric = 3, kResonance = 4 };

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Asymmetric-top rotational spectra, Stark operators and controllability certificates"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  int jmax = -1;
  int mu_points = -1;
  double tol_res = -1.0;
  std::string out_dir = "rotor_out";
  std::string format = "both";
  app.add_option("--config", config_path, "JSON molecule config")->required()->check(CLI::ExistingFile);
  app.add_option("--jmax", jmax, "Largest level (overrides config)")->check(CLI::NonNegativeNumber);
  app.add_option("--mu-grid", mu_points, "Number of points of the mu grid on [-1, 0]")->check(CLI::PositiveNumber);
  app.add_option("--tol-res", tol_res, "Resonance tolerance")->check(CLI::PositiveNumber);
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--format", format, "json, csv or both")->check(CLI::IsMember({"json", "csv", "both"}));

  std::string kind = "oblate";
  std::string rep = "wigner";
  int dipoles = 5;

  std::function<rotorctl::CommandResult(const rotorctl::RunContext&)> run;
  std::string stem;

  auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues per level");
  spectrum->add_option("--kind", kind, "oblate or prolate labelling")->check(CLI::IsMember({"oblate", "prolate"}));
  spectrum->callback([&] {
    stem = "spectrum";
    run = [&](const auto& ctx) { return rotorctl::cmd_spectrum(ctx, kind); };
  });

  auto* dipole = app.add_subcommand("dipole", "Stark operator blocks, norms and selection-rule audit");
  dipole->add_option("--rep", rep, "wigner, wang or eigen")->check(CLI::IsMember({"wigner", "wang", "eigen"}));
  dipole->callback([&] {
    stem = "dipole";
    run = [&](const auto& ctx) { return rotorctl::cmd_dipole(ctx, rep); };
  });

  app.add_subcommand("symmetry", "Dipole class and invariant-subspace certificates")->callback([&] {
    stem = "symmetry";
    run = rotorctl::cmd_symmetry;
  });

  app.add_subcommand("controllability", "Block certificates and overall verdict")->callback([&] {
    stem = "controllability";
    run = rotorctl::cmd_controllability;
  });

  auto* scan = app.add_subcommand("scan", "Resonance scan along the asymmetry path");
  scan->add_option("--kind", kind, "oblate or prolate path")->check(CLI::IsMember({"oblate", "prolate"}));
  scan->callback([&] {
    stem = "scan";
    run = [&](const auto& ctx) { return rotorctl::cmd_scan(ctx, kind); };
  });

  auto* classical = app.add_subcommand("classical", "Classical rigid-body system");
  classical->require_subcommand(1);
  classical->add_subcommand("sim", "Trajectory")->callback([&] {
    stem = "classical_sim";
    run = rotorctl::cmd_classical_sim;
  });
  classical->add_subcommand("rank", "Bracket rank at random states")->callback([&] {
    stem = "classical_rank";
    run = rotorctl::cmd_classical_rank;
  });
  classical->add_subcommand("det", "Numeric determinant against the closed form")->callback([&] {
    stem = "classical_det";
    run = rotorctl::cmd_classical_det;
  });

  auto* oracle = app.add_subcommand("oracle", "Quadrature checks");
  oracle->require_subcommand(1);
  auto* verify = oracle->add_subcommand("verify", "Table elements against quadrature");
  verify->add_option("--dipoles", dipoles, "Number of random dipoles")->check(CLI::PositiveNumber);
  verify->callback([&] {
    stem = "oracle_verify";
    run = [&](const auto& ctx) { return rotorctl::cmd_oracle_verify(ctx, dipoles); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    rotorctl::RunContext ctx;
    ctx.config = rotorctl::load_config(config_path);
    if (jmax >= 0) ctx.config.jmax = jmax;
    if (mu_points > 0) ctx.config.mu_points = mu_points;
    if (tol_res > 0.0) ctx.config.tol_res = tol_res;
    ctx.out_dir = out_dir;
    ctx.format = format == "json" ? rotorctl::Format::json
                 : format == "csv" ? rotorctl::Format::csv
                                   : rotorctl::Format::both;
    ctx.command = stem;

    const auto t0 = std::chrono::steady_clock::now();
    const rotorctl::CommandResult r = run(ctx);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rotorctl::write_report(ctx, stem, r, secs);
    std::cout << r.payload.dump(2) << "\n";
    return r.exit_code;
  } catch (const rotor::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const rotor::PreconditionError& e) {
    std::cerr << "precondition: " << e.what() << "\n";
    return kPrecondition;
  } catch (const rotor::NumericError& e) {
    std::cerr << "numeric: " << e.what() << "\n";
    return kNumeric;
  } catch (const rotor::ResonanceError& e) {
    std::cerr << "resonance: " << e.what() << "\n";
    return kResonance;
  }
}
