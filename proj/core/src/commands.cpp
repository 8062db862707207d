#include "specsdp/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <string_view>

#include "specsdp/io.hpp"
#include "specsdp/matcomp.hpp"

namespace specsdp {

namespace {

bool looks_like_mci(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::string magic;
  in >> magic;
  return magic == "MCI";
}

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t h = values.size() / 2;
  return values.size() % 2 ? values[h] : 0.5 * (values[h - 1] + values[h]);
}

}  // namespace

int cmd_generate(const GenerateConfig& cfg) {
  try {
    MatrixCompletionInstance inst =
        generate(cfg.p, cfg.q, cfg.k, cfg.m, cfg.seed);
    write_instance(inst, cfg.out_path);
    if (!cfg.sdpa_out.empty()) write_sdpa(to_sdp(inst), cfg.sdpa_out);
    std::cout << "wrote " << cfg.out_path << " (p=" << cfg.p << " q=" << cfg.q
              << " k=" << cfg.k << " m=" << cfg.m << " seed=" << cfg.seed
              << ")\n";
    return kExitOk;
  } catch (const InvalidInputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

int cmd_solve(const SolveConfig& cfg) {
  try {
    std::unique_ptr<ConstraintSet> cs;
    std::unique_ptr<MatrixCompletionInstance> inst;
    Iterate start;

    if (looks_like_mci(cfg.input)) {
      inst = std::make_unique<MatrixCompletionInstance>(
          read_instance(cfg.input));
      cs = std::make_unique<ConstraintSet>(to_sdp(*inst));
      start = feasible_start(*inst, *cs);
    } else {
      if (cfg.start_path.empty()) {
        std::cerr << "error: SDPA input requires --start with a strictly "
                     "feasible point (this is a feasible-start method)\n";
        return kExitUsage;
      }
      cs = std::make_unique<ConstraintSet>(parse_sdpa(cfg.input));
      start = read_start(cfg.start_path);
    }

    SolveResult result = solve(*cs, start, cfg.opts);
    write_iteration_csv(result.log, cfg.log_path, cfg.deterministic);

    const Iterate& sol = result.solution;
    const double objective = cs->C().cwiseProduct(sol.X).sum();
    const double dual_objective = cs->b().dot(sol.y);
    const double pinf =
        (cs->project(sol.X) - cs->b()).norm() / (1.0 + cs->b().norm());
    const double dinf = (cs->expand(sol.y) + sol.S - cs->C()).norm() /
                        (1.0 + cs->C().norm());

    std::cout << "status: " << to_string(result.status) << '\n';
    if (!result.message.empty())
      std::cout << "message: " << result.message << '\n';
    std::cout << "iterations: " << result.log.size() << '\n';
    std::cout << "mu: " << format_double(sol.mu) << '\n';
    std::cout << "objective: " << format_double(objective) << '\n';
    std::cout << "gap: " << format_double(objective - dual_objective) << '\n';
    std::cout << "pinf: " << format_double(pinf) << '\n';
    std::cout << "dinf: " << format_double(dinf) << '\n';
    if (inst) {
      const RecoveryMetrics rm = metrics(*inst, sol.X);
      std::cout << "relative_residual: " << format_double(rm.relative_residual)
                << '\n';
      std::cout << "objective_error: "
                << (rm.objective_error ? format_double(*rm.objective_error)
                                       : std::string("unavailable"))
                << '\n';
    }
    std::cout << "log: " << cfg.log_path << '\n';

    switch (result.status) {
      case SolveStatus::Optimal: return kExitOk;
      case SolveStatus::MaxIter: return kExitMaxIter;
      case SolveStatus::NumericalFailure: return kExitNumerical;
    }
    return kExitNumerical;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UnsupportedFeatureError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidInputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  }
}

Index resolve_m_spec(const std::string& spec, Index p, Index q) {
  auto parse_coeff = [&](std::string_view text) {
    if (text.empty()) return 1.0;
    double value = 0.0;
    const auto res =
        std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size())
      throw InvalidInputError("bench: bad m spec '" + spec + "'");
    return value;
  };
  if (spec.ends_with("pq")) {
    const double c = parse_coeff(std::string_view(spec).substr(
        0, spec.size() - 2));
    return static_cast<Index>(std::llround(c * static_cast<double>(p) *
                                           static_cast<double>(q)));
  }
  if (spec.ends_with("n")) {
    const double c =
        parse_coeff(std::string_view(spec).substr(0, spec.size() - 1));
    return static_cast<Index>(std::llround(c * static_cast<double>(p + q)));
  }
  long long value = 0;
  const auto res =
      std::from_chars(spec.data(), spec.data() + spec.size(), value);
  if (res.ec != std::errc() || res.ptr != spec.data() + spec.size())
    throw InvalidInputError("bench: bad m spec '" + spec + "'");
  return value;
}

const char* const kBenchCsvHeader =
    "p,q,n,m,k,seed,precond,iters_measured,median_iter_ms,mean_pcg,max_pcg,"
    "skipped";

namespace {

// Rough peak-memory estimate in bytes for one bench point.
double estimate_bytes(Index n, Index m, Index kmax, PrecondKind kind) {
  const double dn = static_cast<double>(n);
  const double dm = static_cast<double>(m);
  const double dense_mats = 10.0 * dn * dn;  // X, S, W, split, buffers
  double precond = 0.0;
  if (kind == PrecondKind::Dense) {
    precond = 2.0 * dm * dm;  // H and its factor
  } else {
    const double nk = dn * static_cast<double>(std::max<Index>(kmax, 1));
    precond = nk * nk + 8.0 * dm;  // Schur block worst case
  }
  return 8.0 * (dense_mats + precond);
}

}  // namespace

int cmd_bench(const BenchConfig& cfg) {
  try {
    if (cfg.p_list.empty() || cfg.m_specs.empty())
      throw InvalidInputError("bench: need at least one p and one m");
    std::ofstream out(cfg.out_path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + cfg.out_path + "' for writing");
    out << kBenchCsvHeader << '\n';

    for (Index p : cfg.p_list) {
      const Index q = p;
      const Index n = p + q;
      for (const std::string& spec : cfg.m_specs) {
        const Index m = resolve_m_spec(spec, p, q);
        if (m < 1 || m > p * q)
          throw InvalidInputError("bench: m spec '" + spec +
                                  "' resolves outside [1, p*q]");

        std::vector<std::string> preconds = cfg.preconds;
        if (preconds.empty()) {
          preconds.push_back("aug");
          if (m <= cfg.opts.oracle_cap) preconds.push_back("dense");
        }

        MatrixCompletionInstance inst = generate(p, q, cfg.k, m, cfg.seed);
        ConstraintSet cs = to_sdp(inst);

        for (const std::string& pname : preconds) {
          const PrecondKind kind = precond_from_string(pname);
          auto emit_skipped = [&](const char* why) {
            out << p << ',' << q << ',' << n << ',' << m << ',' << cfg.k
                << ',' << cfg.seed << ',' << pname << ",0,,,," << why << '\n';
          };
          if (kind == PrecondKind::Dense && m > cfg.opts.oracle_cap) {
            emit_skipped("oracle-cap");
            continue;
          }
          const double budget_bytes = cfg.mem_budget_mb * 1024.0 * 1024.0;
          if (estimate_bytes(n, m, cfg.opts.effective_kmax(n), kind) >
              budget_bytes) {
            emit_skipped("mem-budget");
            continue;
          }

          SolverOptions opts = cfg.opts;
          opts.precond = kind;
          opts.max_iter = cfg.iters;
          opts.gap_tol = 1e-300;  // measure iterations, never stop early

          Iterate start = feasible_start(inst, cs);
          SolveResult result = solve(cs, start, opts);
          if (result.status == SolveStatus::NumericalFailure) {
            emit_skipped("numerical-failure");
            continue;
          }

          std::vector<double> times;
          double pcg_sum = 0.0;
          Index pcg_max = 0;
          for (const auto& rec : result.log) {
            times.push_back(rec.time_ms);
            pcg_sum += static_cast<double>(rec.pcg_iterations);
            pcg_max = std::max(pcg_max, rec.pcg_iterations);
          }
          const double mean_pcg =
              result.log.empty() ? 0.0 : pcg_sum / result.log.size();
          out << p << ',' << q << ',' << n << ',' << m << ',' << cfg.k << ','
              << cfg.seed << ',' << pname << ',' << result.log.size() << ','
              << format_double(median(times)) << ','
              << format_double(mean_pcg) << ',' << pcg_max << ",\n";
          out.flush();
        }
      }
    }
    if (!out) throw IoError("failed writing '" + cfg.out_path + "'");
    std::cout << "wrote " << cfg.out_path << '\n';
    return kExitOk;
  } catch (const InvalidInputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace specsdp
