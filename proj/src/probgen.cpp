#include "evlcp/probgen.hpp"

#include <cmath>
#include <stdexcept>

#include "evlcp/rng.hpp"

namespace evlcp {

EvlcpProblem gen_example51() {
  BlockMatrix m({Matrix{{3.0, -2.0}, {-4.0, 5.0}},
                 Matrix{{4.0, -4.0}, {-1.0, 2.0}}});
  BlockVector q({{-1.0, -1.0}, {-1.0, -1.0}});
  return {std::move(m), std::move(q)};
}

EvlcpProblem gen_example52() {
  BlockMatrix m({Matrix{{1.0, 0.75, 0.0}, {0.75, 1.0, 0.0}, {0.0, 0.75, 1.0}},
                 Matrix{{1.0, 0.0, 0.75}, {0.0, 1.0, 0.75}, {0.75, 0.0, 1.0}}});
  BlockVector q({{-1.75, -1.75, -1.75}, {-1.75, -1.75, -1.75}});
  return {std::move(m), std::move(q)};
}

EvlcpProblem gen_hjb(const HjbGrid& grid) {
  if (grid.mx < 1 || grid.my < 1) {
    throw std::invalid_argument("gen_hjb: grid must have interior points");
  }
  const std::size_t n = grid.size();
  const double ihx2 = 1.0 / (grid.hx() * grid.hx());
  const double ihy2 = 1.0 / (grid.hy() * grid.hy());

  const double coeff[2][3] = {{0.002, 0.001, 20.0}, {0.001, 0.001, 10.0}};

  std::vector<Matrix> blocks;
  for (const auto& [a, b, c] : coeff) {
    Matrix mi(n, n, 0.0);
    for (std::size_t ix = 0; ix < grid.mx; ++ix) {
      for (std::size_t iy = 0; iy < grid.my; ++iy) {
        const std::size_t row = ix * grid.my + iy;
        mi(row, row) = 2.0 * a * ihx2 + 2.0 * b * ihy2 + c;
        if (ix > 0) mi(row, row - grid.my) = -a * ihx2;
        if (ix + 1 < grid.mx) mi(row, row + grid.my) = -a * ihx2;
        if (iy > 0) mi(row, row - 1) = -b * ihy2;
        if (iy + 1 < grid.my) mi(row, row + 1) = -b * ihy2;
      }
    }
    blocks.push_back(std::move(mi));
  }

  BlockVector q({Vector(n, -1.0), Vector(n, -1.0)});
  return {BlockMatrix(std::move(blocks)), std::move(q)};
}

EvlcpProblem gen_random_certified(std::size_t n, std::size_t k,
                                  std::uint64_t seed) {
  if (n < 1 || k < 1) {
    throw std::invalid_argument("gen_random_certified: n and k must be >= 1");
  }
  std::vector<Matrix> blocks;
  for (std::size_t i = 0; i <= k; ++i) {
    RngStream rng(seed, i);
    Matrix b(n, n, 0.0);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) b(r, c) = rng.uniform_sym();
    for (std::size_t r = 0; r < n; ++r) {
      double row_abs = 0.0;
      for (std::size_t c = 0; c < n; ++c) row_abs += std::abs(b(r, c));
      b(r, r) += 1.0 + row_abs;
    }
    blocks.push_back(std::move(b));
  }
  std::vector<Vector> parts;
  for (std::size_t i = 0; i <= k; ++i) {
    RngStream rng(seed, (k + 1) + i);
    Vector qi(n);
    for (double& v : qi) v = rng.uniform_sym();
    parts.push_back(std::move(qi));
  }
  return {BlockMatrix(std::move(blocks)), BlockVector(std::move(parts))};
}

std::pair<EvlcpProblem, PerturbationSpec> perturb(const EvlcpProblem& p,
                                                  double eps,
                                                  std::uint64_t seed) {
  if (eps < 0.0) {
    throw std::invalid_argument("perturb: eps must be nonnegative");
  }
  const std::size_t n = p.n();
  const std::size_t k = p.k();

  std::vector<Matrix> dm_blocks;
  std::vector<Vector> dq_parts;
  std::vector<double> dm_norms(k + 1, 0.0);
  std::vector<double> dq_norms(k + 1, 0.0);

  for (std::size_t i = 0; i <= k; ++i) {
    Matrix dm(n, n, 0.0);
    Vector dq(n, 0.0);

    // A vlcp instance keeps its identity block and zero q_0 exact.
    if (!(p.vlcp && i == 0)) {
      RngStream rng(seed, i);
      const double m_norm = norm(p.M.block(i), NormTag::inf);
      const double q_norm = norm_inf(p.q.part(i));

      Matrix direction(n, n, 0.0);
      double dir_norm = 0.0;
      for (int attempt = 0; attempt < 8 && dir_norm == 0.0; ++attempt) {
        for (std::size_t r = 0; r < n; ++r)
          for (std::size_t c = 0; c < n; ++c) direction(r, c) = rng.normal();
        dir_norm = norm(direction, NormTag::inf);
      }
      if (dir_norm == 0.0) {
        throw DegenerateSample("perturb: zero-norm direction matrix");
      }
      if (eps > 0.0 && m_norm > 0.0) {
        const double scale = eps * m_norm / dir_norm;
        for (std::size_t r = 0; r < n; ++r)
          for (std::size_t c = 0; c < n; ++c)
            dm(r, c) = scale * direction(r, c);
      }

      Vector t(n, 0.0);
      double t_norm = 0.0;
      for (int attempt = 0; attempt < 8 && t_norm == 0.0; ++attempt) {
        for (double& v : t) v = rng.normal();
        t_norm = norm_inf(t);
      }
      if (t_norm == 0.0) {
        throw DegenerateSample("perturb: zero-norm direction vector");
      }
      if (eps > 0.0 && q_norm > 0.0) {
        const double scale = eps * q_norm / t_norm;
        for (std::size_t s = 0; s < n; ++s) dq[s] = scale * t[s];
      }
    }

    dm_norms[i] = norm(dm, NormTag::inf);
    dq_norms[i] = norm_inf(dq);
    dm_blocks.push_back(std::move(dm));
    dq_parts.push_back(std::move(dq));
  }

  std::vector<Matrix> new_blocks;
  std::vector<Vector> new_parts;
  for (std::size_t i = 0; i <= k; ++i) {
    new_blocks.push_back(p.M.block(i) + dm_blocks[i]);
    Vector qi = p.q.part(i);
    for (std::size_t s = 0; s < n; ++s) qi[s] += dq_parts[i][s];
    new_parts.push_back(std::move(qi));
  }

  PerturbationSpec spec{eps,
                        seed,
                        BlockMatrix(std::move(dm_blocks)),
                        BlockVector(std::move(dq_parts)),
                        std::move(dm_norms),
                        std::move(dq_norms)};
  EvlcpProblem perturbed(BlockMatrix(std::move(new_blocks)),
                         BlockVector(std::move(new_parts)), p.vlcp);
  return {std::move(perturbed), std::move(spec)};
}

}  // namespace evlcp
