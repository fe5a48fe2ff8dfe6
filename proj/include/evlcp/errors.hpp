#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace evlcp {

// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

class NotNonnegative : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

class TooLarge : public Error {
 public:
  using Error::Error;
};

class SingularJacobian : public Error {
 public:
  using Error::Error;
};

class MultipleSolutions : public Error {
 public:
  using Error::Error;
};

class NoSolution : public Error {
 public:
  using Error::Error;
};

class EtaTooLarge : public Error {
 public:
  using Error::Error;
};

class MembershipViolated : public Error {
 public:
  using Error::Error;
};

class NotVlcp : public Error {
 public:
  using Error::Error;
};

class SampleSingular : public Error {
 public:
  using Error::Error;
};

class DegenerateSample : public Error {
 public:
  using Error::Error;
};

class EmptyInput : public Error {
 public:
  using Error::Error;
};

class CertificateLost : public Error {
 public:
  using Error::Error;
};

class BoundViolation : public Error {
 public:
  using Error::Error;
};

// A bound estimate whose precondition does not hold. Carries either the
// offending spectral radius or the first (block, row) that breaks diagonal
// dominance / sign requirements.
class NotApplicable : public Error {
 public:
  NotApplicable(const std::string& what, double rho_value)
      : Error(what), rho(rho_value) {}
  NotApplicable(const std::string& what, std::size_t block, std::size_t row)
      : Error(what), violation(std::make_pair(block, row)) {}
  explicit NotApplicable(const std::string& what) : Error(what) {}

  std::optional<double> rho;
  std::optional<std::pair<std::size_t, std::size_t>> violation;
};

}  // namespace evlcp
