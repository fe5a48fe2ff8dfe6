#include "evlcp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "evlcp/wcheck.hpp"

namespace evlcp {

namespace {

constexpr std::uint64_t kEnumerateBudget = 1000000;

bool next_sigma(std::vector<int>& sigma, int base) {
  for (std::size_t pos = 0; pos < sigma.size(); ++pos) {
    if (++sigma[pos] < base) return true;
    sigma[pos] = 0;
  }
  return false;
}

SolveResult finish(const EvlcpProblem& p, Vector x, std::size_t iterations,
                   SolveMethod method) {
  SolveResult out;
  const std::vector<Vector> rs = residuals(p, x);
  out.active_map = active_blocks(rs);
  double res = 0.0;
  for (std::size_t s = 0; s < p.n(); ++s) {
    double lo = rs[0][s];
    for (std::size_t i = 1; i < rs.size(); ++i) lo = std::min(lo, rs[i][s]);
    res = std::max(res, std::abs(lo));
  }
  out.residual_inf = res;
  out.x = std::move(x);
  out.iterations = iterations;
  out.method = method;
  return out;
}

}  // namespace

SolveResult solve_newton(const EvlcpProblem& p, const NewtonOptions& opts) {
  const std::size_t n = p.n();
  Vector x = opts.x0.value_or(Vector(n, 0.0));
  if (x.size() != n) {
    throw ShapeMismatch("solve_newton: x0 length differs from problem order");
  }

  double q_scale = 0.0;
  for (std::size_t i = 0; i <= p.k(); ++i) {
    q_scale = std::max(q_scale, norm_inf(p.q.part(i)));
  }
  const double stop = opts.tol * (1.0 + q_scale);

  // Active configuration -> best residual seen there; a revisit without
  // improvement means the iteration is cycling.
  std::map<std::vector<int>, double> seen;
  bool cycled = false;
  std::size_t iter = 0;

  for (; iter < opts.max_iter; ++iter) {
    const std::vector<Vector> rs = residuals(p, x);
    Vector f(n);
    std::vector<int> config(n);
    for (std::size_t s = 0; s < n; ++s) {
      double lo = rs[0][s];
      int arg = 0;
      for (std::size_t i = 1; i < rs.size(); ++i) {
        if (rs[i][s] < lo) {
          lo = rs[i][s];
          arg = static_cast<int>(i);
        }
      }
      f[s] = lo;
      config[s] = arg;
    }
    const double res = norm_inf(f);
    if (res <= stop) return finish(p, std::move(x), iter, SolveMethod::newton);

    const auto it = seen.find(config);
    if (it != seen.end() && res >= it->second) {
      cycled = true;
      break;
    }
    if (it == seen.end()) {
      seen.emplace(config, res);
    } else {
      it->second = res;
    }

    Matrix jac(n, n, 0.0);
    for (std::size_t s = 0; s < n; ++s) {
      const Matrix& src = p.M.block(static_cast<std::size_t>(config[s]));
      for (std::size_t j = 0; j < n; ++j) jac(s, j) = src(s, j);
    }
    LuFactorization lu(jac);
    if (lu.singular()) {
      throw SingularJacobian(
          "solve_newton: active-row matrix is singular (row W-property may "
          "fail)");
    }
    Vector rhs(n);
    for (std::size_t s = 0; s < n; ++s) rhs[s] = -f[s];
    const Vector step = lu.solve(rhs);
    for (std::size_t s = 0; s < n; ++s) x[s] += step[s];
  }

  if (representative_count(n, p.k(), kEnumerateBudget)) {
    return solve_enumerate(p);
  }
  throw NoConvergence(cycled
                          ? "solve_newton: active set cycled and the problem "
                            "is too large to enumerate"
                          : "solve_newton: iteration limit reached and the "
                            "problem is too large to enumerate");
}

SolveResult solve_enumerate(const EvlcpProblem& p) {
  const std::size_t n = p.n();
  const auto total = representative_count(n, p.k(), kEnumerateBudget);
  if (!total) {
    throw TooLarge("solve_enumerate: representative count exceeds budget");
  }

  std::vector<Vector> accepted;
  std::vector<int> sigma(n, 0);
  Matrix sys(n, n, 0.0);
  Vector rhs(n);
  std::size_t visited = 0;
  do {
    ++visited;
    for (std::size_t s = 0; s < n; ++s) {
      const auto i = static_cast<std::size_t>(sigma[s]);
      const Matrix& src = p.M.block(i);
      for (std::size_t j = 0; j < n; ++j) sys(s, j) = src(s, j);
      rhs[s] = -p.q.part(i)[s];
    }
    LuFactorization lu(sys);
    if (lu.singular()) continue;
    const Vector x = lu.solve(rhs);

    const double slack = 1e-9 * (1.0 + norm_inf(x));
    bool feasible = true;
    for (std::size_t i = 0; i <= p.k() && feasible; ++i) {
      Vector r = p.M.block(i) * x;
      const Vector& qi = p.q.part(i);
      for (std::size_t s = 0; s < n; ++s) {
        if (r[s] + qi[s] < -slack) {
          feasible = false;
          break;
        }
      }
    }
    if (!feasible) continue;

    bool fresh = true;
    for (const Vector& prev : accepted) {
      double diff = 0.0;
      for (std::size_t s = 0; s < n; ++s) {
        diff = std::max(diff, std::abs(prev[s] - x[s]));
      }
      if (diff <= 1e-8) {
        fresh = false;
        break;
      }
    }
    if (fresh) accepted.push_back(x);
  } while (next_sigma(sigma, static_cast<int>(p.k()) + 1));

  if (accepted.empty()) {
    throw NoSolution("solve_enumerate: no feasible active structure");
  }
  if (accepted.size() > 1) {
    throw MultipleSolutions(
        "solve_enumerate: distinct solutions found (row W-property violated)");
  }
  return finish(p, std::move(accepted.front()), visited,
                SolveMethod::enumerate);
}

}  // namespace evlcp
