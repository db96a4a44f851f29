#pragma once

#include <vector>

#include "grasslearn/optim.hpp"

namespace grasslearn {

// Partially observed n x k matrix. mask entries are exactly 0 or 1; values
// must be finite wherever observed.
struct MaskedMatrix {
  Matrix values;
  Matrix mask;
};

MaskedMatrix make_masked(Matrix values, Matrix mask);

// Zero fill of the unobserved entries.
Matrix mask_apply(const MaskedMatrix& m);

enum class CompletionObjective { Frobenius, Projection };

CompletionObjective completion_objective_from_string(const std::string& name);
std::string to_string(CompletionObjective kind);

// Residual of the best per-column least squares fit over observed rows.
// Columns with fewer observations than the rank get the minimum norm
// solution and are reported in underdetermined.
struct FrobeniusEval {
  double value;
  Matrix w;  // k x r coefficients, one row per data column
  std::vector<Index> underdetermined;
};

FrobeniusEval objective_frobenius(const GrassmannPoint& u, const MaskedMatrix& m);

// Sum over columns of 1 - sigma_max(B_j^T U), where B_j spans the zero fill
// of column j together with the ambient axes of its missing rows. Terms are
// clamped to [0, 1]; columns whose zero fill vanishes contribute 0.
double objective_projection(const GrassmannPoint& u, const MaskedMatrix& m);

struct CompletionConfig {
  CompletionObjective kind = CompletionObjective::Frobenius;
  int restarts = 5;
  OptimConfig optim;
};

struct CompletionResult {
  GrassmannPoint u;
  Matrix w;          // k x r coefficients from the Frobenius inner solve
  Matrix completed;  // u * w^T
  double residual;   // value of the chosen objective at u
  OptimStatus status;
  std::vector<TracePoint> trace;  // optimizer trace of this (or the best) run
  std::vector<double> restart_values;
  int best_restart;
};

// One optimization run from a seeded random subspace.
CompletionResult complete_one(const MaskedMatrix& m, int rank,
                              const CompletionConfig& config, uint64_t seed);

// Multi-start wrapper: runs config.restarts seeds drawn from rng and keeps
// the lowest objective value (ties to the earliest restart).
CompletionResult complete(const MaskedMatrix& m, int rank,
                          const CompletionConfig& config, Rng& rng);

}  // namespace grasslearn
