#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "evlcp/model.hpp"

namespace evlcp {

enum class SolveMethod { newton, enumerate };

struct SolveResult {
  Vector x;
  double residual_inf = 0.0;
  std::size_t iterations = 0;
  std::vector<std::vector<int>> active_map;
  SolveMethod method = SolveMethod::newton;
};

struct NewtonOptions {
  double tol = 1e-12;
  std::size_t max_iter = 100;
  std::optional<Vector> x0;  // zero vector when absent
};

// Piecewise-linear Newton iteration: each step solves the linear model of the
// active rows (row s taken from the block attaining the residual minimum,
// smallest index on ties) and applies the full step. On a cycle or iteration
// exhaustion the enumeration oracle takes over when its budget allows.
SolveResult solve_newton(const EvlcpProblem& p, const NewtonOptions& opts = {});

// Exhaustive search over active structures: every row-representative system is
// solved and accepted when all residuals stay (numerically) nonnegative.
// Distinct accepted solutions indicate a missing row W-property.
SolveResult solve_enumerate(const EvlcpProblem& p);

}  // namespace evlcp
