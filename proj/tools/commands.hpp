// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include <json.hpp>

#include "config.hpp"

namespace rotorctl {

enum class Format { json, csv, both };

struct RunContext {
  MoleculeConfig config;
  std::string out_dir = "rotor_out";
  Format format = Format::both;
  std::string command;
};

/// Result of one command: JSON payload, optional CSV table, exit code.
struct CommandResult {
  nlohmann::json payload;
  std::string csv;
  int exit_code = 0;
};

CommandResult cmd_spectrum(const RunContext& ctx, const std::string& kind);
CommandResult cmd_dipole(const RunContext& ctx, const std::string& rep);
CommandResult cmd_symmetry(const RunContext& ctx);
CommandResult cmd_controllability(const RunContext& ctx);
CommandResult cmd_scan(const RunContext& ctx, const std::string& kind);
CommandResult cmd_classical_sim(const RunContext& ctx);
CommandResult cmd_classical_rank(const RunContext& ctx);
CommandResult cmd_classical_det(const RunContext& ctx);
CommandResult cmd_oracle_verify(const RunContext& ctx, int dipoles);

/// Wraps the payload in the report envelope and writes <out>/<stem>.json and/or .csv.
void write_report(const RunContext& ctx, const std::string& stem, const CommandResult& r, double seconds);

}  // namespace rotorctl
