#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace amenlab {

using Scalar = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;

/// Scalar field the algebras are defined over. Values are always stored as
/// complex numbers; in real mode every stored imaginary part is zero.
enum class ScalarField { kReal, kComplex };

std::string_view to_string(ScalarField field);
ScalarField parse_scalar_field(std::string_view text);

/// Base class for every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad arguments (empty dimensions, malformed tables, out-of-range indices).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Elements or tensors living over different algebras were combined.
class AlgebraMismatch : public Error {
 public:
  using Error::Error;
};

/// The request is outside the supported instance class (e.g. exact LP on
/// complex data).
class UnsupportedInstance : public Error {
 public:
  using Error::Error;
};

/// A numerical routine failed (e.g. singular values did not converge).
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

/// A construction could not be completed on the given data.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// A construction precondition does not hold. `constant()` names the
/// schedule quantity that failed, e.g. "eps/(4cNL)".
class PreconditionViolation : public Error {
 public:
  PreconditionViolation(std::string constant, const std::string& what)
      : Error(what), constant_(std::move(constant)) {}

  const std::string& constant() const noexcept { return constant_; }

 private:
  std::string constant_;
};

}  // namespace amenlab
