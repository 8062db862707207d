#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "specsdp/ipm.hpp"
#include "specsdp/types.hpp"

namespace specsdp {

// Exit codes shared by the CLI: 0 optimal/success, 1 usage or parse error,
// 2 iteration limit, 3 numerical failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitMaxIter = 2;
inline constexpr int kExitNumerical = 3;

struct GenerateConfig {
  Index p = 0, q = 0, k = 1, m = 0;
  std::uint64_t seed = 0;
  std::string out_path;
  std::string sdpa_out;  // optional .dat-s alongside the instance
};

struct SolveConfig {
  std::string input;
  std::string start_path;  // required for SDPA inputs
  std::string log_path = "solve_log.csv";
  bool deterministic = false;  // zero the time_ms CSV column
  SolverOptions opts;
};

struct BenchConfig {
  std::vector<Index> p_list;           // q = p
  std::vector<std::string> m_specs;    // "25n", "0.05pq" or an integer
  Index k = 1;
  std::uint64_t seed = 0;
  std::vector<std::string> preconds;   // default: aug + dense when m fits
  Index iters = 6;                     // outer iterations to measure
  std::string out_path = "bench.csv";
  double mem_budget_mb = 4096.0;
  SolverOptions opts;
};

int cmd_generate(const GenerateConfig& cfg);
int cmd_solve(const SolveConfig& cfg);
int cmd_bench(const BenchConfig& cfg);

// m for a given sweep point; understands "<c>n", "<c>pq" and plain integers.
Index resolve_m_spec(const std::string& spec, Index p, Index q);

extern const char* const kBenchCsvHeader;

}  // namespace specsdp
