#pragma once

#include <stdexcept>
#include <string>

namespace orthobias {

// Base class for every library error so callers can catch them in one place.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class ZeroVarianceColumn : public Error {
 public:
  explicit ZeroVarianceColumn(const std::string& column)
      : Error("column has (near-)zero variance: " + column), column_(column) {}
  const std::string& column() const { return column_; }

 private:
  std::string column_;
};

class RankOutOfRange : public Error {
 public:
  RankOutOfRange(int k, int max_rank)
      : Error("rank " + std::to_string(k) + " outside [1, " + std::to_string(max_rank) + "]") {}
};

class ConvergenceFailure : public Error {
 public:
  explicit ConvergenceFailure(int iterations)
      : Error("iterative scheme failed to converge after " + std::to_string(iterations) +
              " iterations") {}
};

class SingularDesign : public Error {
 public:
  SingularDesign() : Error("design matrix is rank deficient within conditioning tolerance") {}
};

class ShapeMismatch : public Error {
 public:
  explicit ShapeMismatch(const std::string& what) : Error("shape mismatch: " + what) {}
};

class NotStandardized : public Error {
 public:
  explicit NotStandardized(const std::string& column)
      : Error("column is not standardized (nonzero mean): " + column), column_(column) {}
  const std::string& column() const { return column_; }

 private:
  std::string column_;
};

class SingularSensitiveGram : public Error {
 public:
  SingularSensitiveGram()
      : Error("sensitive gram matrix B'B is ill-conditioned (duplicated or collinear columns?)") {}
};

class UnivariateOnly : public Error {
 public:
  UnivariateOnly() : Error("operation requires a single sensitive column") {}
};

class DegenerateComponent : public Error {
 public:
  explicit DegenerateComponent(int component)
      : Error("component " + std::to_string(component) +
              " collapsed: residual direction has vanishing norm") {}
};

class FeatureMismatch : public Error {
 public:
  explicit FeatureMismatch(const std::string& what)
      : Error("feature names do not match predictor: " + what) {}
};

class RequiresGroups : public Error {
 public:
  RequiresGroups()
      : Error("metric requires discrete sensitive groups (none attached to dataset)") {}
};

class MissingNoise : public Error {
 public:
  MissingNoise()
      : Error("dataset has no retained exogenous noise; counterfactuals cannot be regenerated") {}
};

class InvalidParams : public Error {
 public:
  explicit InvalidParams(const std::string& what) : Error("invalid parameters: " + what) {}
};

class IoError : public Error {
 public:
  IoError(const std::string& what, const std::string& path)
      : Error(what + ": " + path), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace orthobias
