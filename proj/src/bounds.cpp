#include "evlcp/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "evlcp/rng.hpp"
#include "evlcp/wcheck.hpp"

namespace evlcp {

namespace {

constexpr std::uint64_t kVertexBudget = 4096;

bool next_sigma(std::vector<int>& sigma, int base) {
  for (std::size_t pos = 0; pos < sigma.size(); ++pos) {
    if (++sigma[pos] < base) return true;
    sigma[pos] = 0;
  }
  return false;
}

// ||S^-1 diag(d)||_inf via one factorization and n column solves.
double weighted_inverse_norm(const LuFactorization& lu, const Vector& d) {
  const std::size_t n = d.size();
  Vector row_sums(n, 0.0);
  Vector e(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    if (d[j] == 0.0) continue;
    e[j] = d[j];
    const Vector col = lu.solve(e);
    e[j] = 0.0;
    for (std::size_t s = 0; s < n; ++s) row_sums[s] += std::abs(col[s]);
  }
  return *std::max_element(row_sums.begin(), row_sums.end());
}

void require_same_layout(const BlockMatrix& a, const BlockMatrix& b,
                         const char* op) {
  if (a.n() != b.n() || a.k() != b.k()) {
    throw ShapeMismatch(std::string(op) + ": block layouts differ");
  }
}

void require_membership(const BlockMatrix& m, const BoundSet& alpha_hat,
                        double eta, const BlockMatrix& candidate,
                        const char* who) {
  double sum = 0.0;
  for (std::size_t i = alpha_hat.first_block(); i <= m.k(); ++i) {
    sum += alpha_hat.value_for(i) *
           norm(candidate.block(i) - m.block(i), NormTag::inf);
  }
  if (sum > eta * (1.0 + 1e-12) + 1e-15) {
    throw MembershipViolated(std::string(who) +
                             " lies outside the eta-neighbourhood");
  }
}

bool is_identity(const Matrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != (i == j ? 1.0 : 0.0)) return false;
  return true;
}

double positive_part_norm_inf(const Vector& v) {
  double best = 0.0;
  for (double x : v) best = std::max(best, std::max(0.0, -x));
  return best;
}

}  // namespace

BoundSet gamma_upper(const BlockMatrix& m, bool vlcp) {
  const std::size_t from = vlcp ? 1 : 0;
  for (std::size_t i = from; i <= m.k(); ++i) {
    for (std::size_t s = 0; s < m.n(); ++s) {
      if (m.block(i)(s, s) <= 0.0) {
        throw NotApplicable("gamma_upper: nonpositive diagonal entry", i, s);
      }
    }
  }
  const Matrix w = spectral_weight_matrix(m, from);
  const SpectralRadius rho = spectral_radius_nonneg(w);
  if (rho.upper >= 1.0 - 1e-10) {
    throw NotApplicable("gamma_upper: spectral condition fails", rho.value);
  }

  const std::size_t n = m.n();
  const LuFactorization lu(Matrix::identity(n) - w);
  const Matrix resolvent = lu.solve(Matrix::identity(n));

  BoundSet set;
  set.kind = vlcp ? BoundKind::gamma_vlcp : BoundKind::gamma;
  for (std::size_t l = from; l <= m.k(); ++l) {
    Matrix gamma_l = resolvent;
    for (std::size_t j = 0; j < n; ++j) {
      const double inv_d = 1.0 / m.block(l)(j, j);
      for (std::size_t i = 0; i < n; ++i) gamma_l(i, j) *= inv_d;
    }
    set.values.push_back(norm(gamma_l, NormTag::inf));
    set.per_block.push_back(std::move(gamma_l));
  }
  return set;
}

BoundSet delta_upper(const BlockMatrix& m, bool vlcp) {
  const std::size_t from = vlcp ? 1 : 0;
  if (vlcp) {
    for (std::size_t i = 1; i <= m.k(); ++i) {
      for (std::size_t s = 0; s < m.n(); ++s) {
        if (m.block(i)(s, s) <= 0.0) {
          throw NotApplicable("delta_upper: vlcp variant needs positive "
                              "diagonals",
                              i, s);
        }
      }
    }
  } else {
    const WCheckReport sdd = check_sdd(m);
    if (sdd.verdict != WVerdict::holds) {
      const auto [block, row] = sdd.sdd->violation.value();
      throw NotApplicable("delta_upper: blocks are not uniformly sdd with "
                          "shared diagonal signs",
                          block, row);
    }
  }

  BoundSet set;
  set.kind = vlcp ? BoundKind::delta_vlcp : BoundKind::delta;
  for (std::size_t l = from; l <= m.k(); ++l) {
    const Matrix comp = comparison_matrix(m.block(l));
    double lo = std::numeric_limits<double>::infinity();
    std::size_t lo_row = 0;
    for (std::size_t s = 0; s < m.n(); ++s) {
      double row = 0.0;
      for (std::size_t j = 0; j < m.n(); ++j) row += comp(s, j);
      if (row < lo) {
        lo = row;
        lo_row = s;
      }
    }
    if (lo <= 0.0) {
      throw NotApplicable("delta_upper: block is not strictly diagonally "
                          "dominant",
                          l, lo_row);
    }
    set.values.push_back(1.0 / lo);
  }
  return set;
}

double alpha_sample(const BlockMatrix& m, std::size_t i, std::size_t trials,
                    std::uint64_t seed) {
  if (i > m.k()) {
    throw ShapeMismatch("alpha_sample: block index out of range");
  }
  const std::size_t n = m.n();
  double best = 0.0;

  auto visit = [&](const DiagonalSelection& d) {
    const LuFactorization lu(assemble_S(m, d));
    if (lu.singular()) {
      throw SampleSingular(
          "alpha_sample: sampled combination is singular (evidence against "
          "the row W-property)");
    }
    best = std::max(best, weighted_inverse_norm(lu, d.weight(i)));
  };

  if (representative_count(n, m.k(), kVertexBudget)) {
    std::vector<int> sigma(n, 0);
    do {
      visit(DiagonalSelection::vertex(n, m.k(), sigma));
    } while (next_sigma(sigma, static_cast<int>(m.k()) + 1));
  }

  for (std::size_t t = 0; t < trials; ++t) {
    RngStream rng(seed, t);
    std::vector<Vector> w(m.k() + 1, Vector(n, 0.0));
    for (std::size_t s = 0; s < n; ++s) {
      const std::vector<double> weights = rng.simplex(m.k() + 1);
      for (std::size_t b = 0; b <= m.k(); ++b) w[b][s] = weights[b];
    }
    visit(DiagonalSelection(std::move(w)));
  }
  return best;
}

double bound_q_perturbation(const BoundSet& alpha_hat, const BlockVector& q,
                            const BlockVector& q_tilde) {
  if (q.n() != q_tilde.n() || q.k() != q_tilde.k()) {
    throw ShapeMismatch("bound_q_perturbation: block vectors differ in shape");
  }
  if (alpha_hat.values.size() != q.k() + 1 - alpha_hat.first_block()) {
    throw ShapeMismatch("bound_q_perturbation: bound set does not cover the "
                        "blocks");
  }
  if (alpha_hat.vlcp() && q.part(0) != q_tilde.part(0)) {
    throw ShapeMismatch("bound_q_perturbation: vlcp bound cannot account for "
                        "a block-0 difference");
  }
  double sum = 0.0;
  for (std::size_t i = alpha_hat.first_block(); i <= q.k(); ++i) {
    double diff = 0.0;
    for (std::size_t s = 0; s < q.n(); ++s) {
      diff = std::max(diff, std::abs(q_tilde.part(i)[s] - q.part(i)[s]));
    }
    sum += alpha_hat.value_for(i) * diff;
  }
  return sum;
}

double bound_general(const BlockMatrix& m, const BoundSet& alpha_hat,
                     double eta, const BlockMatrix& a, const BlockMatrix& b,
                     const BlockVector& qbar, const BlockVector& pbar) {
  if (eta >= 1.0) {
    throw EtaTooLarge("bound_general: eta must be below 1");
  }
  require_same_layout(m, a, "bound_general");
  require_same_layout(m, b, "bound_general");
  if (qbar.n() != m.n() || qbar.k() != m.k() || pbar.n() != m.n() ||
      pbar.k() != m.k()) {
    throw ShapeMismatch("bound_general: vectors do not match the blocks");
  }
  if (alpha_hat.values.size() != m.k() + 1) {
    throw ShapeMismatch("bound_general: bound set does not cover the blocks");
  }
  require_membership(m, alpha_hat, eta, a, "bound_general: A");
  require_membership(m, alpha_hat, eta, b, "bound_general: B");

  const double scale = 1.0 / (1.0 - eta);
  double matrix_term = 0.0;
  double p_term = 0.0;
  double q_term = 0.0;
  for (std::size_t i = 0; i <= m.k(); ++i) {
    const double tau_i = alpha_hat.values[i] * scale;
    matrix_term += tau_i * norm(a.block(i) - b.block(i), NormTag::inf);
    p_term += tau_i * norm_inf(pbar.part(i));
    double diff = 0.0;
    for (std::size_t s = 0; s < m.n(); ++s) {
      diff = std::max(diff, std::abs(qbar.part(i)[s] - pbar.part(i)[s]));
    }
    q_term += tau_i * diff;
  }
  return matrix_term * p_term + q_term;
}

double bound_vlcp(const BlockMatrix& m, const BoundSet& alpha_hat, double eta,
                  const BlockMatrix& a, const BlockMatrix& b,
                  const BlockVector& qhat, const BlockVector& phat) {
  if (eta >= 1.0) {
    throw EtaTooLarge("bound_vlcp: eta must be below 1");
  }
  require_same_layout(m, a, "bound_vlcp");
  require_same_layout(m, b, "bound_vlcp");
  if (!is_identity(m.block(0)) || !is_identity(a.block(0)) ||
      !is_identity(b.block(0))) {
    throw NotVlcp("bound_vlcp: block 0 must be the identity");
  }
  for (double v : qhat.part(0)) {
    if (v != 0.0) throw NotVlcp("bound_vlcp: q_0 must vanish");
  }
  for (double v : phat.part(0)) {
    if (v != 0.0) throw NotVlcp("bound_vlcp: p_0 must vanish");
  }
  if (alpha_hat.values.size() != m.k()) {
    throw ShapeMismatch("bound_vlcp: bound set must cover blocks 1..k");
  }
  require_membership(m, alpha_hat, eta, a, "bound_vlcp: A");
  require_membership(m, alpha_hat, eta, b, "bound_vlcp: B");

  const double scale = 1.0 / (1.0 - eta);
  double matrix_term = 0.0;
  double p_term = 0.0;
  double q_term = 0.0;
  for (std::size_t i = 1; i <= m.k(); ++i) {
    const double tau_i = alpha_hat.value_for(i) * scale;
    matrix_term += tau_i * norm(a.block(i) - b.block(i), NormTag::inf);
    p_term += tau_i * positive_part_norm_inf(phat.part(i));
    double diff = 0.0;
    for (std::size_t s = 0; s < m.n(); ++s) {
      diff = std::max(diff, std::abs(qhat.part(i)[s] - phat.part(i)[s]));
    }
    q_term += tau_i * diff;
  }
  return matrix_term * p_term + q_term;
}

BoundReport relative_bounds(const BlockMatrix& m, const BoundSet& bound_set,
                            const std::vector<double>& eps, double x_norm,
                            const std::vector<double>& dq_norms,
                            const std::vector<double>& dm_norms) {
  if (eps.size() != m.k() + 1 || dq_norms.size() != m.k() + 1 ||
      dm_norms.size() != m.k() + 1) {
    throw ShapeMismatch("relative_bounds: per-block inputs must cover all "
                        "blocks");
  }
  if (bound_set.values.size() != m.k() + 1 - bound_set.first_block()) {
    throw ShapeMismatch("relative_bounds: bound set does not cover the blocks");
  }
  if (x_norm <= 0.0) {
    throw std::invalid_argument("relative_bounds: x_norm must be positive");
  }
  for (double e : eps) {
    if (e < 0.0) {
      throw std::invalid_argument("relative_bounds: eps must be nonnegative");
    }
  }

  BoundReport report;
  double eta = 0.0;
  double mixed = 0.0;
  for (std::size_t i = bound_set.first_block(); i <= m.k(); ++i) {
    const double v = bound_set.value_for(i);
    eta += eps[i] * v * norm(m.block(i), NormTag::inf);
    mixed += v * dm_norms[i] + v * dq_norms[i] / x_norm;
  }
  report.eta = eta;
  if (eta < 1.0) {
    report.tau = 2.0 * eta / (1.0 - eta);
    report.tau_bar = mixed / (1.0 - eta);
    if (bound_set.kind == BoundKind::delta ||
        bound_set.kind == BoundKind::delta_vlcp) {
      report.upsilon = report.tau;
    }
  }
  return report;
}

double relative_bound_componentwise(const BlockMatrix& m,
                                    const BoundSet& gamma_set,
                                    const std::vector<double>& eps) {
  if (gamma_set.kind != BoundKind::gamma) {
    throw NotApplicable(
        "relative_bound_componentwise: a gamma bound set is required");
  }
  if (eps.size() != m.k() + 1 ||
      gamma_set.per_block.size() != m.k() + 1 ||
      gamma_set.values.size() != m.k() + 1) {
    throw ShapeMismatch("relative_bound_componentwise: inputs must cover all "
                        "blocks");
  }
  double eta_hat = 0.0;
  double numerator = 0.0;
  for (std::size_t i = 0; i <= m.k(); ++i) {
    eta_hat += eps[i] * gamma_set.values[i] * norm(m.block(i), NormTag::inf);
    numerator +=
        eps[i] * norm(gamma_set.per_block[i] * abs(m.block(i)), NormTag::inf);
  }
  if (eta_hat >= 1.0) {
    throw EtaTooLarge("relative_bound_componentwise: eta must be below 1");
  }
  return 2.0 * numerator / (1.0 - eta_hat);
}

}  // namespace evlcp
