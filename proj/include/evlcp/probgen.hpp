#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "evlcp/model.hpp"

namespace evlcp {

// Interior grid of the rectangle (0,2) x (0,1); components are ordered
// lexicographically by (x-index, y-index).
struct HjbGrid {
  std::size_t mx = 1;
  std::size_t my = 1;

  double hx() const { return 2.0 / static_cast<double>(mx + 1); }
  double hy() const { return 1.0 / static_cast<double>(my + 1); }
  std::size_t size() const { return mx * my; }
};

// Random perturbation scaled so that ||dM_i||_inf = eps ||M_i||_inf and
// ||dq_i||_inf = eps ||q_i||_inf exactly.
struct PerturbationSpec {
  double eps = 0.0;
  std::uint64_t seed = 0;
  BlockMatrix dM;
  BlockVector dq;
  std::vector<double> dm_norms;
  std::vector<double> dq_norms;
};

// Two 2x2 blocks with a known solution (2.25, 2).
EvlcpProblem gen_example51();

// Two strictly diagonally dominant 3x3 blocks with solution (1, 1, 1).
EvlcpProblem gen_example52();

// Central-difference discretization of a two-operator obstacle problem on the
// grid: M_i = c_i I + second differences with coefficients (a_i, b_i), zero
// Dirichlet boundary, q_0 = q_1 = -e.
EvlcpProblem gen_hjb(const HjbGrid& grid);

// Strictly diagonally dominant random instance with positive diagonals;
// deterministic in (n, k, seed).
EvlcpProblem gen_random_certified(std::size_t n, std::size_t k,
                                  std::uint64_t seed);

// Draws standard-normal directions per block from a counter-based stream
// keyed by (seed, block) and scales them to the exact target norms. For a
// vlcp instance block 0 stays untouched so the form is preserved.
std::pair<EvlcpProblem, PerturbationSpec> perturb(const EvlcpProblem& p,
                                                  double eps,
                                                  std::uint64_t seed);

}  // namespace evlcp
