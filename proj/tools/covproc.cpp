// covproc: commutant structure, programmable processors and program-dimension
// bounds for finite-group covariant channels.
#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "covproc/cli.hpp"
#include "covproc/kernels.hpp"

namespace {

int emit(const covproc::cli::CmdResult& result, const std::string& out_path) {
  const std::string text = covproc::cli::render_report(result);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write " << out_path << "\n";
      return covproc::cli::kExitValidation;
    }
    out << text;
  }
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  covproc::kernels::set_default_exec(covproc::kernels::exec_from_env());

  CLI::App app{"covariant-channel processors: decomposition, construction, "
               "verification and bounds"};
  app.require_subcommand(1);

  covproc::cli::RunConfig cfg;
  cfg.tol = covproc::cli::default_tol_from_env();
  std::string out_path;

  auto add_common = [&](CLI::App* cmd, bool with_group = true) {
    if (with_group) {
      cmd->add_option("--group", cfg.group_source,
                      "catalog group name or group-spec JSON file");
      cmd->add_option("--u", cfg.u_label, "input-register irrep label");
      cmd->add_option("--v", cfg.v_label, "output-register irrep label");
    }
    cmd->add_option("--seed", cfg.seed, "base seed for sampling");
    cmd->add_option("--tol", cfg.tol, "tolerance override");
    cmd->add_option("--out", out_path, "write the report to a file");
  };

  auto* decompose =
      app.add_subcommand("decompose", "commutant block structure of conj(u) (x) v");
  add_common(decompose);
  decompose->add_flag("--dump-basis", cfg.dump_choi,
                      "include the adapted basis matrix in the report");

  std::string kind;
  auto* build = app.add_subcommand("build", "construct a processor");
  add_common(build);
  build->add_option("--kind", kind, "mp | teleport | compressed")->required();
  build->add_option("--extremes", cfg.extremes_path,
                    "extreme-channel file for the mp builder");
  build->add_flag("--pure-programs", cfg.pure_programs,
                  "mp programs as amplitude superpositions");
  build->add_flag("--dump-choi", cfg.dump_choi,
                  "include the processor choi matrix when small enough");

  int n_channels = 20, n_states = 20;
  auto* verify =
      app.add_subcommand("verify", "exactness sweep over sampled channels/states");
  add_common(verify);
  verify->add_option("--kind", kind, "mp | teleport | compressed");
  verify->add_option("--processor", cfg.processor_path,
                     "build-report artifact to re-create and verify");
  verify->add_option("--channels", n_channels, "number of sampled channels");
  verify->add_option("--states", n_states, "number of sampled states");
  verify->add_option("--extremes", cfg.extremes_path,
                     "extreme-channel file for the mp builder");

  std::vector<double> eps_list{0.0, 0.25, 0.5};
  auto* bounds =
      app.add_subcommand("bounds", "program-dimension bound table");
  add_common(bounds);
  bounds->add_option("--eps", eps_list, "epsilon values");
  bounds->add_option("--format", cfg.format, "json | csv");

  std::string demo_name;
  auto* demo = app.add_subcommand("demo", "scripted end-to-end checks");
  demo->add_option("name", demo_name, "a4 | pauli | depolarizing")->required();
  add_common(demo, false);

  CLI11_PARSE(app, argc, argv);

  covproc::cli::CmdResult result;
  if (decompose->parsed()) result = covproc::cli::cmd_decompose(cfg);
  if (build->parsed()) result = covproc::cli::cmd_build(cfg, kind);
  if (verify->parsed())
    result = covproc::cli::cmd_verify(cfg, kind, n_channels, n_states);
  if (bounds->parsed()) result = covproc::cli::cmd_bounds(cfg, eps_list);
  if (demo->parsed()) result = covproc::cli::cmd_demo(demo_name, cfg.seed);
  return emit(result, out_path);
}
