#include "evlcp/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace evlcp {

namespace {

constexpr double kTieRel = 1e-12;

bool is_identity(const Matrix& m) {
  if (!m.square()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != (i == j ? 1.0 : 0.0)) return false;
  return true;
}

bool is_zero(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
}

}  // namespace

BlockMatrix::BlockMatrix(std::vector<Matrix> blocks)
    : blocks_(std::move(blocks)) {
  if (blocks_.size() < 2) {
    throw std::invalid_argument("block matrix needs at least two blocks");
  }
  n_ = blocks_.front().rows();
  for (const Matrix& b : blocks_) {
    if (!b.square() || b.rows() != n_) {
      throw ShapeMismatch("block matrix: blocks must be square of equal order");
    }
  }
}

BlockVector::BlockVector(std::vector<Vector> parts) : parts_(std::move(parts)) {
  if (parts_.size() < 2) {
    throw std::invalid_argument("block vector needs at least two parts");
  }
  n_ = parts_.front().size();
  if (n_ == 0) {
    throw std::invalid_argument("block vector parts must be nonempty");
  }
  for (const Vector& p : parts_) {
    if (p.size() != n_) {
      throw ShapeMismatch("block vector: parts must have equal length");
    }
    for (double v : p) {
      if (!std::isfinite(v)) {
        throw std::invalid_argument("block vector entries must be finite");
      }
    }
  }
}

EvlcpProblem::EvlcpProblem(BlockMatrix m, BlockVector rhs, bool vlcp_form)
    : M(std::move(m)), q(std::move(rhs)), vlcp(vlcp_form) {
  if (M.n() != q.n() || M.k() != q.k()) {
    throw ShapeMismatch("problem: matrix and vector blocks disagree");
  }
  if (vlcp && (!is_identity(M.block(0)) || !is_zero(q.part(0)))) {
    throw std::invalid_argument(
        "vlcp form requires M_0 = I and q_0 = 0");
  }
}

DiagonalSelection::DiagonalSelection(std::vector<Vector> weights)
    : weights_(std::move(weights)) {
  if (weights_.size() < 2) {
    throw std::invalid_argument("selection needs at least two weight vectors");
  }
  n_ = weights_.front().size();
  for (const Vector& w : weights_) {
    if (w.size() != n_) {
      throw ShapeMismatch("selection: weight vectors must have equal length");
    }
  }
  for (std::size_t s = 0; s < n_; ++s) {
    double sum = 0.0;
    for (const Vector& w : weights_) {
      if (w[s] < 0.0 || w[s] > 1.0) {
        throw std::invalid_argument("selection weights must lie in [0, 1]");
      }
      sum += w[s];
    }
    if (std::abs(sum - 1.0) > 1e-12) {
      throw std::invalid_argument("selection weights must sum to 1");
    }
  }
}

DiagonalSelection DiagonalSelection::vertex(std::size_t n, std::size_t k,
                                            const std::vector<int>& sigma) {
  if (sigma.size() != n) {
    throw ShapeMismatch("vertex selection: sigma length differs from n");
  }
  std::vector<Vector> w(k + 1, Vector(n, 0.0));
  for (std::size_t s = 0; s < n; ++s) {
    const int i = sigma[s];
    if (i < 0 || static_cast<std::size_t>(i) > k) {
      throw std::invalid_argument("vertex selection: block index out of range");
    }
    w[static_cast<std::size_t>(i)][s] = 1.0;
  }
  return DiagonalSelection(std::move(w));
}

std::vector<Vector> residuals(const EvlcpProblem& p, const Vector& x) {
  if (x.size() != p.n()) {
    throw ShapeMismatch("residuals: x length differs from problem order");
  }
  std::vector<Vector> rs;
  rs.reserve(p.k() + 1);
  for (std::size_t i = 0; i <= p.k(); ++i) {
    Vector r = p.M.block(i) * x;
    const Vector& qi = p.q.part(i);
    for (std::size_t s = 0; s < r.size(); ++s) r[s] += qi[s];
    rs.push_back(std::move(r));
  }
  return rs;
}

Vector min_map(const EvlcpProblem& p, const Vector& x) {
  const std::vector<Vector> rs = residuals(p, x);
  Vector f = rs.front();
  for (std::size_t i = 1; i < rs.size(); ++i) {
    for (std::size_t s = 0; s < f.size(); ++s) {
      f[s] = std::min(f[s], rs[i][s]);
    }
  }
  return f;
}

std::vector<std::vector<int>> active_blocks(const std::vector<Vector>& rs) {
  const std::size_t n = rs.front().size();
  std::vector<std::vector<int>> active(n);
  for (std::size_t s = 0; s < n; ++s) {
    double lo = rs[0][s];
    for (std::size_t i = 1; i < rs.size(); ++i) lo = std::min(lo, rs[i][s]);
    const double tie = kTieRel * (1.0 + std::abs(lo));
    for (std::size_t i = 0; i < rs.size(); ++i) {
      if (rs[i][s] <= lo + tie) active[s].push_back(static_cast<int>(i));
    }
  }
  return active;
}

DiagonalSelection selection_matrices(const std::vector<Vector>& rs) {
  if (rs.size() < 2) {
    throw std::invalid_argument("selection_matrices: need at least two stacks");
  }
  const std::size_t n = rs.front().size();
  for (const Vector& r : rs) {
    if (r.size() != n) {
      throw ShapeMismatch("selection_matrices: uneven stack lengths");
    }
  }
  const std::vector<std::vector<int>> active = active_blocks(rs);
  std::vector<Vector> w(rs.size(), Vector(n, 0.0));
  for (std::size_t s = 0; s < n; ++s) {
    const double share = 1.0 / static_cast<double>(active[s].size());
    for (int i : active[s]) w[static_cast<std::size_t>(i)][s] = share;
  }
  return DiagonalSelection(std::move(w));
}

DiagonalSelection mean_value_selection(const std::vector<Vector>& a,
                                       const std::vector<Vector>& b) {
  if (a.size() != b.size() || a.size() < 2) {
    throw ShapeMismatch("mean_value_selection: stacks must match");
  }
  const std::size_t n = a.front().size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != n || b[i].size() != n) {
      throw ShapeMismatch("mean_value_selection: uneven stack lengths");
    }
  }
  std::vector<Vector> w(a.size(), Vector(n, 0.0));
  for (std::size_t s = 0; s < n; ++s) {
    std::size_t ia = 0, ib = 0;
    for (std::size_t i = 1; i < a.size(); ++i) {
      if (a[i][s] < a[ia][s]) ia = i;
      if (b[i][s] < b[ib][s]) ib = i;
    }
    const double target = a[ia][s] - b[ib][s];
    const double at_ia = a[ia][s] - b[ia][s];  // <= target
    const double at_ib = a[ib][s] - b[ib][s];  // >= target
    if (ia == ib || at_ib == at_ia) {
      w[ia][s] = 1.0;
      continue;
    }
    double theta = (at_ib - target) / (at_ib - at_ia);
    theta = std::clamp(theta, 0.0, 1.0);
    w[ia][s] += theta;
    w[ib][s] += 1.0 - theta;
  }
  return DiagonalSelection(std::move(w));
}

Matrix assemble_S(const BlockMatrix& m, const DiagonalSelection& d) {
  if (m.n() != d.n() || m.k() != d.k()) {
    throw ShapeMismatch("assemble_S: selection does not match block matrix");
  }
  const std::size_t n = m.n();
  Matrix s(n, n, 0.0);
  for (std::size_t i = 0; i <= m.k(); ++i) {
    const Vector& w = d.weight(i);
    const Matrix& mi = m.block(i);
    for (std::size_t r = 0; r < n; ++r) {
      if (w[r] == 0.0) continue;
      for (std::size_t c = 0; c < n; ++c) {
        s(r, c) += w[r] * mi(r, c);
      }
    }
  }
  return s;
}

SolutionCheck verify_solution(const EvlcpProblem& p, const Vector& x,
                              double tol) {
  if (tol <= 0.0) {
    throw std::invalid_argument("verify_solution: tol must be positive");
  }
  const std::vector<Vector> rs = residuals(p, x);
  SolutionCheck out;
  out.active_map = active_blocks(rs);

  double min_norm = 0.0;
  bool nonneg = true;
  for (std::size_t s = 0; s < p.n(); ++s) {
    double lo = rs[0][s];
    for (std::size_t i = 1; i < rs.size(); ++i) lo = std::min(lo, rs[i][s]);
    min_norm = std::max(min_norm, std::abs(lo));
    if (lo < -tol) nonneg = false;
  }
  out.residual_norm = min_norm;
  out.is_solution = nonneg && min_norm <= tol;
  return out;
}

}  // namespace evlcp
