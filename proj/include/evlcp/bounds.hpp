#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "evlcp/model.hpp"

namespace evlcp {

// gamma kinds come with the per-block estimate matrices; the *_vlcp kinds
// cover blocks 1..k only (block 0 is pinned to the identity).
enum class BoundKind { gamma, delta, gamma_vlcp, delta_vlcp, alpha_sample };

struct BoundSet {
  BoundKind kind = BoundKind::alpha_sample;
  std::vector<double> values;     // one per covered block
  std::vector<Matrix> per_block;  // gamma kinds: the estimate matrices
  NormTag norm = NormTag::inf;

  bool vlcp() const {
    return kind == BoundKind::gamma_vlcp || kind == BoundKind::delta_vlcp;
  }
  // Index of the first covered block (1 for vlcp kinds, else 0).
  std::size_t first_block() const { return vlcp() ? 1 : 0; }
  double value_for(std::size_t block) const {
    return values[block - first_block()];
  }
};

// Relative-perturbation quantities for one bound set. Any quantity whose
// hypothesis (eta < 1) fails stays unset; it is never clamped to a number.
struct BoundReport {
  double eta = 0.0;
  std::optional<double> tau;      // 2 eta / (1 - eta)
  std::optional<double> tau_bar;  // norm-weighted mixed bound
  std::optional<double> nu;       // componentwise bound (gamma sets only)
  std::optional<double> upsilon;  // alias of tau for delta sets

  bool applicable() const { return tau.has_value(); }
};

// Certified upper estimates ||(I - W)^-1 diag(M_l)^-1|| per block, where W is
// the maximal scaled off-diagonal matrix. Requires positive diagonals and
// rho(W) < 1; vlcp restricts W and the estimates to blocks 1..k.
BoundSet gamma_upper(const BlockMatrix& m, bool vlcp = false);

// Certified upper estimates 1 / min_s (<M_l> e)_s per block. Requires every
// block strictly diagonally dominant with per-row shared diagonal signs; the
// vlcp variant insists on positive diagonals over blocks 1..k.
BoundSet delta_upper(const BlockMatrix& m, bool vlcp = false);

// Sampled lower estimate of the condition constant alpha_i: the maximum of
// ||S_M^-1 D_i||_inf over `trials` random selections (per-component uniform
// simplex weights) plus every 0/1 vertex selection when (k+1)^n <= 4096.
double alpha_sample(const BlockMatrix& m, std::size_t i, std::size_t trials,
                    std::uint64_t seed);

// sum_i alpha_i ||q~_i - q_i||_inf: solution shift under a pure q
// perturbation.
double bound_q_perturbation(const BoundSet& alpha_hat, const BlockVector& q,
                            const BlockVector& q_tilde);

// Solution distance between two problems in the eta-neighbourhood of m:
// (sum tau_i ||A_i - B_i||)(sum tau_i ||p_i||) + sum tau_i ||q_i - p_i||
// with tau_i = alpha_i / (1 - eta).
double bound_general(const BlockMatrix& m, const BoundSet& alpha_hat,
                     double eta, const BlockMatrix& a, const BlockMatrix& b,
                     const BlockVector& qbar, const BlockVector& pbar);

// Vertical variant over blocks 1..k with ||(-p_i)_+|| replacing ||p_i||.
double bound_vlcp(const BlockMatrix& m, const BoundSet& alpha_hat, double eta,
                  const BlockMatrix& a, const BlockMatrix& b,
                  const BlockVector& qhat, const BlockVector& phat);

// eta = sum eps_i * value_i * ||M_i||_inf, tau = 2 eta/(1-eta), and
// tau_bar = (sum value_i dm_i + sum value_i dq_i / x_norm) / (1 - eta).
BoundReport relative_bounds(const BlockMatrix& m, const BoundSet& bound_set,
                            const std::vector<double>& eps, double x_norm,
                            const std::vector<double>& dq_norms,
                            const std::vector<double>& dm_norms);

// Componentwise relative bound 2 (sum eps_i ||gamma_i |M_i| ||_inf) / (1-eta^)
// for |dM_i| <= eps_i |M_i| perturbations; gamma sets only.
double relative_bound_componentwise(const BlockMatrix& m,
                                    const BoundSet& gamma_set,
                                    const std::vector<double>& eps);

}  // namespace evlcp
