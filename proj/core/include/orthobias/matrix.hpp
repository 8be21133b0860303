#pragma once

#include <Eigen/Core>
#include <string>
#include <utility>
#include <vector>

#include "orthobias/errors.hpp"

namespace orthobias {

/*
 Dense n x m data matrix with named columns. Values are validated on
 construction: no NaN/Inf, at least one row and one column, unique column
 names. All operations on it are pure; instances are safe to share across
 threads read-only.
*/
class DataMatrix {
 public:
  DataMatrix(Eigen::MatrixXd values, std::vector<std::string> col_names);

  // Builds from row-major values, e.g. literal test fixtures.
  static DataMatrix from_rows(Eigen::Index rows, Eigen::Index cols,
                              const std::vector<double>& row_major,
                              std::vector<std::string> col_names);

  Eigen::Index rows() const { return values_.rows(); }
  Eigen::Index cols() const { return values_.cols(); }
  const Eigen::MatrixXd& matrix() const { return values_; }
  const std::vector<std::string>& col_names() const { return names_; }

  double operator()(Eigen::Index i, Eigen::Index j) const { return values_(i, j); }

  // Index of a named column; throws FeatureMismatch when absent.
  Eigen::Index col_index(const std::string& name) const;

  // Same values under new names (must still be unique and of matching length).
  DataMatrix renamed(std::vector<std::string> col_names) const;

 private:
  Eigen::MatrixXd values_;
  std::vector<std::string> names_;
};

struct StandardizationParams {
  Eigen::VectorXd means;
  Eigen::VectorXd stdevs;  // strictly positive, sample (n-1) convention
};

struct SvdResult {
  Eigen::MatrixXd left;             // n x k, orthonormal columns
  Eigen::VectorXd singular_values;  // k, nonincreasing, >= 0
  Eigen::MatrixXd right;            // m x k, orthonormal columns
};

inline constexpr double kVarianceEps = 1e-12;
inline constexpr double kConditioningTol = 1e-10;  // relative smallest/largest singular value

// Centers and scales each column to mean 0, sample stdev 1.
// Throws ZeroVarianceColumn for constant columns.
std::pair<DataMatrix, StandardizationParams> standardize(const DataMatrix& m);

// Applies previously fitted parameters (e.g. to held-out rows).
DataMatrix apply_standardization(const DataMatrix& m, const StandardizationParams& params);

// Exact inverse of standardize.
DataMatrix unstandardize(const DataMatrix& m, const StandardizationParams& params);

/*
 Best rank-k factorization (Eckart-Young). Deterministic for a fixed input:
 each right singular vector is sign-fixed so its largest-magnitude entry is
 positive, and ties between equal singular values are broken by lexicographic
 order of the right vectors.
*/
SvdResult truncated_svd(const DataMatrix& m, int k);
SvdResult truncated_svd(const Eigen::MatrixXd& m, int k);

// sign(x) * (|x| - theta) where |x| >= theta, else 0, elementwise.
Eigen::VectorXd soft_threshold(const Eigen::VectorXd& x, double theta);

// argmin_beta ||y - X beta||_2 via SVD. Throws SingularDesign when the
// smallest singular value is below kConditioningTol relative to the largest.
Eigen::VectorXd least_squares(const Eigen::MatrixXd& x, const Eigen::VectorXd& y);
Eigen::VectorXd least_squares(const DataMatrix& x, const Eigen::VectorXd& y);

}  // namespace orthobias
