#include "evlcp/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

namespace evlcp {

namespace {

void require_finite(const std::vector<double>& entries) {
  for (double v : entries) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("matrix entries must be finite");
    }
  }
}

void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeMismatch(std::string(op) + ": shapes differ");
  }
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {
  if (rows == 0 || cols == 0) {
    throw std::invalid_argument("matrix dimensions must be positive");
  }
  if (!std::isfinite(fill)) {
    throw std::invalid_argument("matrix entries must be finite");
  }
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (rows == 0 || cols == 0) {
    throw std::invalid_argument("matrix dimensions must be positive");
  }
  if (data_.size() != rows * cols) {
    throw std::invalid_argument("entry count does not match dimensions");
  }
  require_finite(data_);
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  if (rows_ == 0) {
    throw std::invalid_argument("matrix dimensions must be positive");
  }
  cols_ = rows.begin()->size();
  if (cols_ == 0) {
    throw std::invalid_argument("matrix dimensions must be positive");
  }
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) {
      throw std::invalid_argument("rows must have equal length");
    }
    data_.insert(data_.end(), row.begin(), row.end());
  }
  require_finite(data_);
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(const Vector& d) {
  Matrix m(d.size(), d.size(), 0.0);
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  require_finite(m.data_);
  return m;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  require_same_shape(*this, other, "operator+=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  require_same_shape(*this, other, "operator-=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

Matrix operator+(Matrix a, const Matrix& b) {
  a += b;
  return a;
}

Matrix operator-(Matrix a, const Matrix& b) {
  a -= b;
  return a;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw ShapeMismatch("matrix product: inner dimensions differ");
  }
  Matrix c(a.rows(), b.cols(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        c(i, j) += aik * b(k, j);
      }
    }
  }
  return c;
}

Vector operator*(const Matrix& a, const Vector& x) {
  if (a.cols() != x.size()) {
    throw ShapeMismatch("matrix-vector product: dimensions differ");
  }
  Vector y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

double norm(const Matrix& a, NormTag which) {
  double best = 0.0;
  if (which == NormTag::inf) {
    for (std::size_t i = 0; i < a.rows(); ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < a.cols(); ++j) s += std::abs(a(i, j));
      best = std::max(best, s);
    }
  } else {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < a.rows(); ++i) s += std::abs(a(i, j));
      best = std::max(best, s);
    }
  }
  return best;
}

double norm_inf(const Vector& v) {
  double best = 0.0;
  for (double x : v) best = std::max(best, std::abs(x));
  return best;
}

double norm_one(const Vector& v) {
  double s = 0.0;
  for (double x : v) s += std::abs(x);
  return s;
}

Matrix abs(const Matrix& a) {
  Matrix r = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = std::abs(a(i, j));
  return r;
}

Matrix comparison_matrix(const Matrix& a) {
  if (!a.square()) {
    throw ShapeMismatch("comparison_matrix: matrix must be square");
  }
  Matrix r = a;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      r(i, j) = (i == j) ? std::abs(a(i, j)) : -std::abs(a(i, j));
    }
  }
  return r;
}

Matrix elementwise_max(const std::vector<Matrix>& as) {
  if (as.empty()) {
    throw ShapeMismatch("elementwise_max: empty list");
  }
  Matrix r = as.front();
  for (std::size_t m = 1; m < as.size(); ++m) {
    require_same_shape(r, as[m], "elementwise_max");
    for (std::size_t i = 0; i < r.rows(); ++i)
      for (std::size_t j = 0; j < r.cols(); ++j)
        r(i, j) = std::max(r(i, j), as[m](i, j));
  }
  return r;
}

LuFactorization::LuFactorization(const Matrix& a) {
  if (!a.square()) {
    throw ShapeMismatch("LU: matrix must be square");
  }
  n_ = a.rows();
  lu_ = a.entries();
  perm_.resize(n_);
  for (std::size_t i = 0; i < n_; ++i) perm_[i] = i;

  const double pivot_floor = 1e-14 * norm(a, NormTag::inf);
  auto at = [&](std::size_t i, std::size_t j) -> double& {
    return lu_[i * n_ + j];
  };

  for (std::size_t col = 0; col < n_; ++col) {
    std::size_t pivot_row = col;
    double pivot_mag = std::abs(at(col, col));
    for (std::size_t i = col + 1; i < n_; ++i) {
      const double m = std::abs(at(i, col));
      if (m > pivot_mag) {
        pivot_mag = m;
        pivot_row = i;
      }
    }
    if (pivot_mag < pivot_floor || pivot_mag == 0.0) {
      singular_ = true;
      return;
    }
    if (pivot_row != col) {
      for (std::size_t j = 0; j < n_; ++j) {
        std::swap(at(col, j), at(pivot_row, j));
      }
      std::swap(perm_[col], perm_[pivot_row]);
      perm_sign_ = -perm_sign_;
    }
    const double pivot = at(col, col);
    for (std::size_t i = col + 1; i < n_; ++i) {
      const double mult = at(i, col) / pivot;
      at(i, col) = mult;
      for (std::size_t j = col + 1; j < n_; ++j) {
        at(i, j) -= mult * at(col, j);
      }
    }
  }
}

double LuFactorization::det() const {
  if (singular_) return 0.0;
  double d = static_cast<double>(perm_sign_);
  for (std::size_t i = 0; i < n_; ++i) d *= lu_[i * n_ + i];
  return d;
}

int LuFactorization::det_sign() const {
  if (singular_) return 0;
  int s = perm_sign_;
  for (std::size_t i = 0; i < n_; ++i) {
    if (lu_[i * n_ + i] < 0.0) s = -s;
  }
  return s;
}

Vector LuFactorization::solve(const Vector& b) const {
  if (singular_) {
    throw SingularMatrix("solve: matrix is numerically singular");
  }
  if (b.size() != n_) {
    throw ShapeMismatch("solve: right-hand side length differs from order");
  }
  Vector x(n_);
  for (std::size_t i = 0; i < n_; ++i) x[i] = b[perm_[i]];
  for (std::size_t i = 1; i < n_; ++i) {
    double s = x[i];
    for (std::size_t j = 0; j < i; ++j) s -= lu_[i * n_ + j] * x[j];
    x[i] = s;
  }
  for (std::size_t ii = n_; ii-- > 0;) {
    double s = x[ii];
    for (std::size_t j = ii + 1; j < n_; ++j) s -= lu_[ii * n_ + j] * x[j];
    x[ii] = s / lu_[ii * n_ + ii];
  }
  return x;
}

Matrix LuFactorization::solve(const Matrix& rhs) const {
  if (rhs.rows() != n_) {
    throw ShapeMismatch("solve: right-hand side rows differ from order");
  }
  Matrix x(n_, rhs.cols(), 0.0);
  Vector col(n_);
  for (std::size_t j = 0; j < rhs.cols(); ++j) {
    for (std::size_t i = 0; i < n_; ++i) col[i] = rhs(i, j);
    Vector sol = solve(col);
    for (std::size_t i = 0; i < n_; ++i) x(i, j) = sol[i];
  }
  return x;
}

Vector solve_linear(const Matrix& a, const Vector& b) {
  LuFactorization lu(a);
  Vector x = lu.solve(b);
  // One refinement pass tightens the residual to working precision.
  Vector r(b.size());
  const Vector ax = a * x;
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = b[i] - ax[i];
  const Vector dx = lu.solve(r);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += dx[i];
  return x;
}

SpectralRadius spectral_radius_nonneg(const Matrix& w) {
  if (!w.square()) {
    throw ShapeMismatch("spectral_radius_nonneg: matrix must be square");
  }
  for (std::size_t i = 0; i < w.rows(); ++i) {
    for (std::size_t j = 0; j < w.cols(); ++j) {
      if (w(i, j) < 0.0) {
        throw NotNonnegative("spectral_radius_nonneg: negative entry");
      }
    }
  }

  const std::size_t n = w.rows();
  const double sigma = 1e-3 * (1.0 + norm(w, NormTag::inf));
  const std::size_t cap = 1000000;
  const double tol = 1e-12;

  Vector x(n, 1.0);
  double prev = std::numeric_limits<double>::infinity();
  SpectralRadius out;

  for (std::size_t iter = 1; iter <= cap; ++iter) {
    Vector y = w * x;
    for (std::size_t i = 0; i < n; ++i) y[i] += sigma * x[i];

    // Collatz-Wielandt: for x > 0, min_i y_i/x_i <= rho(W)+sigma <= max_i.
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double ratio = y[i] / x[i];
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }

    out.value = std::max(0.0, hi - sigma);
    out.lower = std::max(0.0, lo - sigma);
    out.upper = hi - sigma;
    out.iterations = iter;

    if (hi - lo <= 1e-14 * (1.0 + hi)) return out;
    if (std::abs(hi - prev) <= tol) return out;
    prev = hi;

    const double scale = norm_inf(y);
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / scale;
  }
  throw NoConvergence("spectral_radius_nonneg: iteration cap reached");
}

}  // namespace evlcp
