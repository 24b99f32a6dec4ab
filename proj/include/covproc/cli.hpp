// Command implementations behind the covproc CLI. Each command returns its
// JSON report plus a process exit code (0 success, 2 validation error,
// 3 check failure) so the thin main() stays declarative and tests can drive
// commands directly.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "covproc/io.hpp"

namespace covproc::cli {

struct RunConfig {
  std::string group_source = "a4";  // catalog name or path to a spec file
  std::string u_label;              // empty: first irrep of maximal dimension
  std::string v_label;
  uint64_t seed = 0;
  double tol = kDefaultTol;
  bool dump_choi = false;
  bool pure_programs = false;
  std::string extremes_path;   // mp extremes file (optional)
  std::string processor_path;  // build artifact to verify (optional)
  std::string format = "json";  // json | csv (bounds only)
};

struct CmdResult {
  json report;
  int exit_code = 0;
  std::string csv;  // set when format == "csv"
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitCheckFailure = 3;

CmdResult cmd_decompose(const RunConfig& cfg);
CmdResult cmd_build(const RunConfig& cfg, const std::string& kind);
CmdResult cmd_verify(const RunConfig& cfg, const std::string& kind,
                     int n_channels, int n_states);
CmdResult cmd_bounds(const RunConfig& cfg, const std::vector<double>& eps_list);
CmdResult cmd_demo(const std::string& name, uint64_t seed);

// COVPROC_TOL environment override; falls back to kDefaultTol.
double default_tol_from_env();

// Serialize a report the way the CLI writes it (stable across runs).
std::string render_report(const CmdResult& result);

}  // namespace covproc::cli
