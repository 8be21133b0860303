#include "orthobias/ob.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace orthobias {

namespace {

void check_centered(const DataMatrix& m, double tol) {
  Eigen::VectorXd means = m.matrix().colwise().mean();
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    if (std::abs(means(j)) > tol) throw NotStandardized(m.col_names()[j]);
}

// Solver for B'B x = rhs with the same conditioning gate as least_squares.
Eigen::LDLT<Eigen::MatrixXd> sensitive_gram_solver(const Eigen::MatrixXd& b) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(b);
  const auto& d = svd.singularValues();
  if (d.size() == 0 || d(d.size() - 1) <= kConditioningTol * d(0))
    throw SingularSensitiveGram();
  return (b.transpose() * b).ldlt();
}

double tail_energy(const Eigen::MatrixXd& a, int k) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const auto& d = svd.singularValues();
  double s = 0.0;
  for (Eigen::Index j = k; j < d.size(); ++j) s += d(j) * d(j);
  return std::sqrt(s);
}

}  // namespace

FactorPair fit_ob(const DataMatrix& a, const DataMatrix& b, const ObConfig& cfg) {
  if (a.rows() != b.rows()) throw ShapeMismatch("A and B row counts differ");
  const int q = static_cast<int>(a.cols());
  const int k = cfg.k == 0 ? q : cfg.k;
  if (k < 1 || k > q) throw RankOutOfRange(k, q);

  check_centered(a, cfg.center_check_tol);
  check_centered(b, cfg.center_check_tol);

  const Eigen::MatrixXd& A = a.matrix();
  const Eigen::MatrixXd& B = b.matrix();

  auto gram = sensitive_gram_solver(B);

  // Basis from the component of A orthogonal to B's column space; this is
  // where the constrained problem attains its minimum.
  Eigen::MatrixXd projected = A - B * gram.solve(B.transpose() * A);
  SvdResult svd = truncated_svd(projected, k);

  FactorPair fp;
  fp.basis = svd.right;                                         // q x k
  Eigen::MatrixXd au = A * fp.basis;                            // n x k
  fp.multipliers = gram.solve(B.transpose() * au).transpose();  // k x p
  fp.scores = au - B * fp.multipliers.transpose();              // n x k

  fp.recon_error = (A - fp.scores * fp.basis.transpose()).norm();
  fp.svd_error = tail_energy(A, k);
  return fp;
}

DataMatrix transform(const DataMatrix& a, const FactorPair& fp) {
  if (fp.scores.rows() != a.rows()) throw ShapeMismatch("scores fitted on a different row count");
  if (fp.basis.rows() != a.cols()) throw ShapeMismatch("basis fitted on a different column count");
  return DataMatrix(fp.scores * fp.basis.transpose(), a.col_names());
}

DataMatrix transform_new_data(const DataMatrix& a_new, const DataMatrix& b_new,
                              const FactorPair& fp) {
  if (a_new.rows() != b_new.rows()) throw ShapeMismatch("A and B row counts differ");
  if (fp.basis.rows() != a_new.cols())
    throw ShapeMismatch("basis fitted on a different column count");
  if (fp.multipliers.cols() != b_new.cols())
    throw ShapeMismatch("multipliers fitted on a different sensitive column count");
  Eigen::MatrixXd s = a_new.matrix() * fp.basis - b_new.matrix() * fp.multipliers.transpose();
  return DataMatrix(s * fp.basis.transpose(), a_new.col_names());
}

LemmaGapDiagnostic lemma_gap_diagnostic(const DataMatrix& a, const DataMatrix& b, int k) {
  if (b.cols() != 1) throw UnivariateOnly();

  ObConfig cfg;
  cfg.k = k;
  FactorPair fp = fit_ob(a, b, cfg);

  const Eigen::Index n = a.rows();
  const Eigen::VectorXd bv = b.matrix().col(0);
  const double bb = bv.squaredNorm();

  Eigen::MatrixXd p = Eigen::MatrixXd::Constant(n, n, 1.0 / static_cast<double>(n));
  p += (bv * bv.transpose()) / bb;

  SvdResult svd = truncated_svd(a, k);
  Eigen::MatrixXd vd = svd.left * svd.singular_values.asDiagonal();  // n x k

  LemmaGapDiagnostic diag;
  diag.lemma_value = (static_cast<double>(k) * p * vd).norm();
  diag.direct_gap = fp.recon_error - fp.svd_error;
  return diag;
}

}  // namespace orthobias
