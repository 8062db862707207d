#pragma once

#include <string>
#include <vector>

#include "specsdp/constraint_set.hpp"
#include "specsdp/ipm.hpp"
#include "specsdp/matcomp.hpp"
#include "specsdp/types.hpp"

namespace specsdp {

// Shortest decimal representation that round-trips the binary value exactly.
std::string format_double(double value);

// Matrix-completion instance format ("MCI 1"):
//   MCI 1
//   p q k m seed
//   i j value        (m lines, 1-based indices)
// Writers emit observations sorted row-major; identical instances produce
// identical bytes. Reading regenerates the generator factors from the stored
// seed and attaches them when the regenerated values match the file exactly.
void write_instance(const MatrixCompletionInstance& inst,
                    const std::string& path);
MatrixCompletionInstance read_instance(const std::string& path);

// SDPA sparse format (.dat-s), single PSD block only. The reader takes the
// vector line as b, matrix 0 as the cost C and matrix i as A_i, i.e. the
// problem read is: min C.X s.t. A_i.X = b_i, X >= 0. Entries are upper
// triangle and are mirrored. LP (negative) blocks and multiple blocks raise
// UnsupportedFeatureError.
ConstraintSet parse_sdpa(const std::string& path);
void write_sdpa(const ConstraintSet& cs, const std::string& path);

// Strictly feasible start point file ("SDPSTART 1"): n, m, then y (m
// values), X and S (n*n values each, row-major), whitespace separated.
Iterate read_start(const std::string& path);
void write_start(const Iterate& it, const std::string& path);

// Iteration log CSV. Schema version 1, header always present:
//   iter,mu,gap,pinf,dinf,ktilde,tau,kappaW0,pcg_iters,pcg_status,alpha,time_ms
// With zero_time the time_ms column is written as 0 so that rows are
// byte-identical across runs.
extern const char* const kIterationCsvHeader;
void write_iteration_csv(const std::vector<IterationRecord>& records,
                         const std::string& path, bool zero_time);
std::string iteration_csv_row(const IterationRecord& r, bool zero_time);

}  // namespace specsdp
