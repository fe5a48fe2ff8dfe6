#pragma once

#include <cstddef>
#include <vector>

#include "evlcp/matrix.hpp"

namespace evlcp {

// Ordered tuple (M_0, ..., M_k) of square matrices of equal order; k >= 1.
class BlockMatrix {
 public:
  explicit BlockMatrix(std::vector<Matrix> blocks);

  std::size_t n() const { return n_; }
  std::size_t k() const { return blocks_.size() - 1; }
  const Matrix& block(std::size_t i) const { return blocks_[i]; }
  const std::vector<Matrix>& blocks() const { return blocks_; }

  friend bool operator==(const BlockMatrix& a, const BlockMatrix& b) = default;

 private:
  std::size_t n_;
  std::vector<Matrix> blocks_;
};

// Ordered tuple (q_0, ..., q_k) of vectors of equal length.
class BlockVector {
 public:
  explicit BlockVector(std::vector<Vector> parts);

  std::size_t n() const { return n_; }
  std::size_t k() const { return parts_.size() - 1; }
  const Vector& part(std::size_t i) const { return parts_[i]; }
  const std::vector<Vector>& parts() const { return parts_; }

  friend bool operator==(const BlockVector& a, const BlockVector& b) = default;

 private:
  std::size_t n_;
  std::vector<Vector> parts_;
};

// Find x with min_i { M_i x + q_i } = 0 componentwise. The vlcp flag records
// that the instance encodes a vertical LCP (M_0 = I, q_0 = 0), which routes
// bound computations through the reduced block-1..k estimates.
struct EvlcpProblem {
  EvlcpProblem(BlockMatrix m, BlockVector rhs, bool vlcp_form = false);

  std::size_t n() const { return M.n(); }
  std::size_t k() const { return M.k(); }

  BlockMatrix M;
  BlockVector q;
  bool vlcp = false;
};

// Element of the weight set: k+1 nonnegative diagonal weight vectors that sum
// to one in every component (within 1e-12).
class DiagonalSelection {
 public:
  explicit DiagonalSelection(std::vector<Vector> weights);

  // 0/1 selection: component s fully assigned to block sigma[s].
  static DiagonalSelection vertex(std::size_t n, std::size_t k,
                                  const std::vector<int>& sigma);

  std::size_t n() const { return n_; }
  std::size_t k() const { return weights_.size() - 1; }
  const Vector& weight(std::size_t i) const { return weights_[i]; }
  const std::vector<Vector>& weights() const { return weights_; }

 private:
  std::size_t n_;
  std::vector<Vector> weights_;
};

// r_i = M_i x + q_i for every block.
std::vector<Vector> residuals(const EvlcpProblem& p, const Vector& x);

// Componentwise minimum of the residuals; the piecewise-linear map whose root
// solves the problem.
Vector min_map(const EvlcpProblem& p, const Vector& x);

// Equal weights over the argmin blocks of each component. Ties are certified
// at 1e-12 * (1 + |min|).
DiagonalSelection selection_matrices(const std::vector<Vector>& rs);

// Weights realizing min having a - min having b = sum_i d_i (a_i - b_i) per
// component. Support is at most {argmin a, argmin b}; the convex split between
// the two is chosen so the identity holds exactly.
DiagonalSelection mean_value_selection(const std::vector<Vector>& a,
                                       const std::vector<Vector>& b);

// sum_i diag(d_i) M_i.
Matrix assemble_S(const BlockMatrix& m, const DiagonalSelection& d);

struct SolutionCheck {
  bool is_solution = false;
  double residual_norm = 0.0;
  // Per component: block indices attaining the residual minimum.
  std::vector<std::vector<int>> active_map;
};

// x solves the problem at tolerance tol iff the min map vanishes to tol and
// no residual dips below -tol.
SolutionCheck verify_solution(const EvlcpProblem& p, const Vector& x,
                              double tol);

// Active blocks per component under the selection tie rule.
std::vector<std::vector<int>> active_blocks(const std::vector<Vector>& rs);

}  // namespace evlcp
