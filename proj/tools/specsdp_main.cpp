// specsdp: matrix-free interior-point SDP solver with low-rank spectral
// preconditioning, plus matrix-completion instance tooling.
//
// Subcommands:
//   generate   write a random matrix-completion instance file
//   solve      solve an instance (.mci) or SDPA sparse file (.dat-s)
//   bench      per-iteration timing sweeps across sizes and preconditioners

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "specsdp/commands.hpp"

namespace {

void add_solver_flags(CLI::App* cmd, specsdp::SolverOptions* opts) {
  cmd->add_option("--gamma", opts->gamma, "Neighborhood parameter in (0,1)")
      ->capture_default_str();
  cmd->add_option("--sigma", opts->sigma, "Centering parameter in (0,1)")
      ->capture_default_str();
  cmd->add_option("--gap-tol", opts->gap_tol, "Duality gap tolerance")
      ->capture_default_str();
  cmd->add_option("--max-iter", opts->max_iter, "Outer iteration limit")
      ->capture_default_str();
  cmd->add_option_function<std::string>(
         "--scaling",
         [opts](const std::string& v) {
           opts->scaling = specsdp::scaling_from_string(v);
         },
         "Scaling: nt, primal or dual")
      ->default_str("nt");
  cmd->add_option_function<std::string>(
         "--precond",
         [opts](const std::string& v) {
           opts->precond = specsdp::precond_from_string(v);
         },
         "Preconditioner: aug, smw or dense")
      ->default_str("aug");
  cmd->add_option("--kmax", opts->kmax,
                  "Rank estimate cap (-1 means floor(n/4))")
      ->capture_default_str();
  cmd->add_option("--eta", opts->eta, "Rank estimate eigenvalue ratio")
      ->capture_default_str();
  cmd->add_option("--pcg-tol-factor", opts->pcg_tol_factor,
                  "PCG tolerance rule factor")
      ->capture_default_str();
  cmd->add_option("--pcg-tol-min", opts->pcg_tol_min, "PCG tolerance floor")
      ->capture_default_str();
  cmd->add_option("--pcg-tol-max", opts->pcg_tol_max, "PCG tolerance cap")
      ->capture_default_str();
  cmd->add_option("--pcg-maxit", opts->pcg_maxit, "PCG iteration limit")
      ->capture_default_str();
  cmd->add_option("--oracle-cap", opts->oracle_cap,
                  "Dense Hessian size gate")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"specsdp: interior-point SDP solver with spectral "
               "preconditioning"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from an INI/TOML config file");

  specsdp::GenerateConfig gen;
  CLI::App* cmd_gen =
      app.add_subcommand("generate", "Generate a matrix-completion instance");
  cmd_gen->add_option("--p", gen.p, "Rows of the hidden matrix")->required();
  cmd_gen->add_option("--q", gen.q, "Columns of the hidden matrix")
      ->required();
  cmd_gen->add_option("--k", gen.k, "Rank of the hidden matrix")->required();
  cmd_gen->add_option("--m", gen.m, "Number of observed entries")->required();
  cmd_gen->add_option("--seed", gen.seed, "Generator seed")->required();
  cmd_gen->add_option("--out,-o", gen.out_path, "Output instance file")
      ->required();
  cmd_gen->add_option("--sdpa-out", gen.sdpa_out,
                      "Also write the SDP as an SDPA sparse file");

  specsdp::SolveConfig sol;
  CLI::App* cmd_sol = app.add_subcommand("solve", "Solve an instance");
  cmd_sol->add_option("input", sol.input,
                      "Instance file (.mci) or SDPA sparse file (.dat-s)")
      ->required();
  cmd_sol->add_option("--start", sol.start_path,
                      "Strictly feasible start file (required for SDPA)");
  cmd_sol->add_option("--log", sol.log_path, "Iteration CSV path")
      ->capture_default_str();
  cmd_sol->add_flag("--deterministic", sol.deterministic,
                    "Write 0 for time_ms so CSV rows are byte-stable");
  add_solver_flags(cmd_sol, &sol.opts);

  specsdp::BenchConfig ben;
  CLI::App* cmd_ben =
      app.add_subcommand("bench", "Per-iteration timing sweep");
  cmd_ben->add_option("--p", ben.p_list, "Sweep of p values (q = p)")
      ->required()
      ->delimiter(',');
  cmd_ben
      ->add_option("--m", ben.m_specs,
                   "Sweep of m specs: integer, '<c>n' or '<c>pq'")
      ->required()
      ->delimiter(',');
  cmd_ben->add_option("--k", ben.k, "Rank of the hidden matrix")
      ->capture_default_str();
  cmd_ben->add_option("--seed", ben.seed, "Generator seed")
      ->capture_default_str();
  cmd_ben
      ->add_option("--precond", ben.preconds,
                   "Preconditioners to time (default: aug plus dense when m "
                   "fits the oracle cap)")
      ->delimiter(',');
  cmd_ben->add_option("--iters", ben.iters, "Outer iterations to measure")
      ->capture_default_str();
  cmd_ben->add_option("--out,-o", ben.out_path, "Output CSV")
      ->capture_default_str();
  cmd_ben->add_option("--mem-budget-mb", ben.mem_budget_mb,
                      "Skip points whose estimated footprint exceeds this")
      ->capture_default_str();
  add_solver_flags(cmd_ben, &ben.opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return specsdp::kExitUsage;
  }

  if (cmd_gen->parsed()) return specsdp::cmd_generate(gen);
  if (cmd_sol->parsed()) return specsdp::cmd_solve(sol);
  if (cmd_ben->parsed()) return specsdp::cmd_bench(ben);
  return specsdp::kExitUsage;
}
