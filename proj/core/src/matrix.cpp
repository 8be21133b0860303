#include "orthobias/matrix.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace orthobias {

DataMatrix::DataMatrix(Eigen::MatrixXd values, std::vector<std::string> col_names)
    : values_(std::move(values)), names_(std::move(col_names)) {
  if (values_.rows() < 1 || values_.cols() < 1)
    throw ShapeMismatch("matrix must have at least one row and one column");
  if (static_cast<Eigen::Index>(names_.size()) != values_.cols())
    throw ShapeMismatch("column name count " + std::to_string(names_.size()) +
                        " != column count " + std::to_string(values_.cols()));
  std::unordered_set<std::string> seen;
  for (const auto& n : names_)
    if (!seen.insert(n).second) throw ShapeMismatch("duplicate column name: " + n);
  if (!values_.allFinite()) throw ShapeMismatch("matrix contains NaN or Inf");
}

DataMatrix DataMatrix::from_rows(Eigen::Index rows, Eigen::Index cols,
                                 const std::vector<double>& row_major,
                                 std::vector<std::string> col_names) {
  if (static_cast<Eigen::Index>(row_major.size()) != rows * cols)
    throw ShapeMismatch("value count does not match rows*cols");
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = row_major[i * cols + j];
  return DataMatrix(std::move(m), std::move(col_names));
}

Eigen::Index DataMatrix::col_index(const std::string& name) const {
  for (size_t j = 0; j < names_.size(); ++j)
    if (names_[j] == name) return static_cast<Eigen::Index>(j);
  throw FeatureMismatch("no column named " + name);
}

DataMatrix DataMatrix::renamed(std::vector<std::string> col_names) const {
  return DataMatrix(values_, std::move(col_names));
}

std::pair<DataMatrix, StandardizationParams> standardize(const DataMatrix& m) {
  const Eigen::Index n = m.rows(), p = m.cols();
  StandardizationParams params;
  params.means = m.matrix().colwise().mean();
  params.stdevs.resize(p);
  for (Eigen::Index j = 0; j < p; ++j) {
    double ss = (m.matrix().col(j).array() - params.means(j)).square().sum();
    double sd = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
    if (sd <= kVarianceEps) throw ZeroVarianceColumn(m.col_names()[j]);
    params.stdevs(j) = sd;
  }
  Eigen::MatrixXd out = (m.matrix().rowwise() - params.means.transpose()).array().rowwise() /
                        params.stdevs.transpose().array();
  return {DataMatrix(std::move(out), m.col_names()), std::move(params)};
}

DataMatrix apply_standardization(const DataMatrix& m, const StandardizationParams& params) {
  if (params.means.size() != m.cols())
    throw ShapeMismatch("standardization parameters fitted on a different column count");
  Eigen::MatrixXd out = (m.matrix().rowwise() - params.means.transpose()).array().rowwise() /
                        params.stdevs.transpose().array();
  return DataMatrix(std::move(out), m.col_names());
}

DataMatrix unstandardize(const DataMatrix& m, const StandardizationParams& params) {
  if (params.means.size() != m.cols())
    throw ShapeMismatch("standardization parameters fitted on a different column count");
  Eigen::MatrixXd out =
      (m.matrix().array().rowwise() * params.stdevs.transpose().array()).rowwise() +
      params.means.transpose().array();
  return DataMatrix(std::move(out), m.col_names());
}

namespace {

// Lexicographic comparison of two right singular vectors, used only to break
// ties between numerically equal singular values.
bool lex_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i) < b(i) - 1e-14) return true;
    if (a(i) > b(i) + 1e-14) return false;
  }
  return false;
}

}  // namespace

SvdResult truncated_svd(const Eigen::MatrixXd& m, int k) {
  const int max_rank = static_cast<int>(std::min(m.rows(), m.cols()));
  if (k < 1 || k > max_rank) throw RankOutOfRange(k, max_rank);

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) throw ConvergenceFailure(-1);

  Eigen::MatrixXd u = svd.matrixU().leftCols(k);
  Eigen::MatrixXd v = svd.matrixV().leftCols(k);
  Eigen::VectorXd d = svd.singularValues().head(k);

  // Canonical sign: largest-magnitude entry of each right vector positive.
  for (int j = 0; j < k; ++j) {
    Eigen::Index imax = 0;
    v.col(j).cwiseAbs().maxCoeff(&imax);
    if (v(imax, j) < 0) {
      v.col(j) = -v.col(j);
      u.col(j) = -u.col(j);
    }
  }

  // Equal singular values have no intrinsic order; sort their right vectors
  // lexicographically so the result is a function of the input alone.
  const double tie_tol = 1e-12 * std::max(1.0, d.size() > 0 ? d(0) : 1.0);
  for (int a = 0; a < k; ++a) {
    for (int b = a + 1; b < k && std::abs(d(b) - d(a)) <= tie_tol; ++b) {
      if (lex_less(v.col(b), v.col(a))) {
        v.col(a).swap(v.col(b));
        u.col(a).swap(u.col(b));
        std::swap(d(a), d(b));
      }
    }
  }

  return {std::move(u), std::move(d), std::move(v)};
}

SvdResult truncated_svd(const DataMatrix& m, int k) { return truncated_svd(m.matrix(), k); }

Eigen::VectorXd soft_threshold(const Eigen::VectorXd& x, double theta) {
  if (theta < 0) throw InvalidParams("soft threshold requires theta >= 0");
  Eigen::VectorXd out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    double a = std::abs(x(i)) - theta;
    out(i) = a > 0 ? (x(i) > 0 ? a : -a) : 0.0;
  }
  return out;
}

Eigen::VectorXd least_squares(const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
  if (x.rows() != y.size()) throw ShapeMismatch("design rows != response length");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& d = svd.singularValues();
  if (d.size() == 0 || d(d.size() - 1) <= kConditioningTol * d(0)) throw SingularDesign();
  return svd.solve(y);
}

Eigen::VectorXd least_squares(const DataMatrix& x, const Eigen::VectorXd& y) {
  return least_squares(x.matrix(), y);
}

}  // namespace orthobias
