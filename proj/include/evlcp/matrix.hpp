#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "evlcp/errors.hpp"

namespace evlcp {

using Vector = std::vector<double>;

enum class NormTag { inf, one };

// Dense real matrix, row-major. Entries must be finite; constructors that
// accept data validate this.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(const Vector& d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  const std::vector<double>& entries() const { return data_; }

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(double s);

  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, const Vector& x);

// Induced p-norm for p in {1, inf}; for a single column this coincides with
// the vector norm.
double norm(const Matrix& a, NormTag which);
double norm_inf(const Vector& v);
double norm_one(const Vector& v);

// Entrywise absolute value.
Matrix abs(const Matrix& a);

// <A>: |diagonal| on the diagonal, -|off-diagonal| elsewhere.
Matrix comparison_matrix(const Matrix& a);

// Entrywise maximum across a nonempty list of same-shape matrices.
Matrix elementwise_max(const std::vector<Matrix>& as);

// Row-pivoted LU of a square matrix. A column whose best pivot falls below
// 1e-14 * ||A||_inf marks the factorization singular.
class LuFactorization {
 public:
  explicit LuFactorization(const Matrix& a);

  bool singular() const { return singular_; }
  double det() const;  // 0 when singular
  int det_sign() const;

  Vector solve(const Vector& b) const;  // throws SingularMatrix
  Matrix solve(const Matrix& rhs) const;

 private:
  std::size_t n_ = 0;
  std::vector<double> lu_;
  std::vector<std::size_t> perm_;
  int perm_sign_ = 1;
  bool singular_ = false;
};

// Factor, solve, and apply one step of iterative refinement.
Vector solve_linear(const Matrix& a, const Vector& b);

struct SpectralRadius {
  double value = 0.0;
  // Collatz-Wielandt bracket: lower <= rho <= upper holds at the reported
  // iterate, so strict comparisons against thresholds can use the bracket.
  double lower = 0.0;
  double upper = 0.0;
  std::size_t iterations = 0;
};

// Spectral radius of an entrywise-nonnegative square matrix by power
// iteration on W + sigma*I, sigma = 1e-3 * (1 + ||W||_inf). The shift keeps
// iterates strictly positive and de-periodizes cyclic patterns; sigma is
// subtracted from the converged estimate.
SpectralRadius spectral_radius_nonneg(const Matrix& w);

}  // namespace evlcp
