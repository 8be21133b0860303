#include "orthobias/sob.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <random>

namespace orthobias {

double select_theta(const Eigen::VectorXd& v, double h) {
  const double l2 = v.norm();
  if (l2 <= 0) throw InvalidParams("select_theta requires a nonzero vector");
  if (h < 1) throw InvalidParams("l1 budget must be >= 1");
  if (v.lpNorm<1>() / l2 <= h) return 0.0;

  auto normalized_l1 = [&](double theta) {
    Eigen::VectorXd t = soft_threshold(v, theta);
    double n2 = t.norm();
    return n2 > 0 ? t.lpNorm<1>() / n2 : 1.0;
  };

  // normalized_l1 decreases from ||v||_1/||v||_2 (> h) toward 1 (<= h) as
  // theta approaches the largest magnitude, so a root exists in between.
  double lo = 0.0, hi = v.cwiseAbs().maxCoeff() * (1.0 - 1e-12);
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    double val = normalized_l1(mid);
    if (std::abs(val - h) <= 1e-8) return mid;
    (val > h ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

struct Deflation {
  std::vector<Eigen::VectorXd> dirs;  // accumulated unit score vectors

  // P v = v - sum_l s_l (s_l' v)
  Eigen::VectorXd apply(Eigen::VectorXd v) const {
    for (const auto& s : dirs) v -= s * s.dot(v);
    return v;
  }
};

}  // namespace

SobResult fit_sob(const DataMatrix& a, const DataMatrix& b, const SobConfig& cfg) {
  if (a.rows() != b.rows()) throw ShapeMismatch("A and B row counts differ");
  const Eigen::Index n = a.rows();
  const Eigen::Index q = a.cols();
  if (cfg.k < 1 || cfg.k > std::min(n, q))
    throw InvalidParams("rank must lie in [1, min(n, cols)]");
  if (cfg.h < 1) throw InvalidParams("l1 budget must be >= 1");
  if (cfg.eta <= 0) throw InvalidParams("termination tolerance must be positive");

  const Eigen::MatrixXd& A = a.matrix();
  const Eigen::MatrixXd& B = b.matrix();

  {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(B);
    const auto& d = svd.singularValues();
    if (d.size() == 0 || d(d.size() - 1) <= kConditioningTol * d(0))
      throw SingularSensitiveGram();
  }
  Eigen::LDLT<Eigen::MatrixXd> gram = (B.transpose() * B).ldlt();

  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  SobResult res;
  res.scores.resize(n, cfg.k);
  res.basis.resize(q, cfg.k);
  res.d.resize(cfg.k);
  res.iters.assign(cfg.k, 0);
  res.converged.assign(cfg.k, false);

  Deflation deflate;

  for (int i = 0; i < cfg.k; ++i) {
    Eigen::VectorXd u(q);
    for (Eigen::Index j = 0; j < q; ++j) u(j) = gauss(rng);
    u.normalize();

    Eigen::VectorXd s = Eigen::VectorXd::Zero(n);
    bool converged = false;
    int t = 0;

    while (t < cfg.max_iters) {
      ++t;
      Eigen::VectorXd pau = deflate.apply(A * u);
      Eigen::VectorXd beta = gram.solve(B.transpose() * pau);
      Eigen::VectorXd z = pau - B * beta;
      double zn = z.norm();
      if (zn <= 1e-12) throw DegenerateComponent(i);
      Eigen::VectorXd s_new = z / zn;

      Eigen::VectorXd w = A.transpose() * s_new;
      if (w.norm() <= 1e-12) throw DegenerateComponent(i);
      double theta = select_theta(w, cfg.h);
      Eigen::VectorXd u_new = soft_threshold(w, theta);
      u_new.normalize();

      double du = (u_new - u).norm();
      double ds = (s_new - s).norm();
      u = u_new;
      s = s_new;
      if (du <= cfg.eta && ds <= cfg.eta) {
        converged = true;
        break;
      }
    }

    // Final l1 projection of the basis vector from the settled scores.
    {
      Eigen::VectorXd w = A.transpose() * s;
      if (w.norm() <= 1e-12) throw DegenerateComponent(i);
      double theta = select_theta(w, cfg.h);
      u = soft_threshold(w, theta);
      u.normalize();
    }

    res.basis.col(i) = u;
    res.d(i) = s.dot(A * u);
    res.scores.col(i) = res.d(i) * s;
    res.iters[i] = t;
    res.converged[i] = converged;
    deflate.dirs.push_back(s);
  }

  return res;
}

DataMatrix transform(const DataMatrix& a, const SobResult& res) {
  if (res.scores.rows() != a.rows()) throw ShapeMismatch("scores fitted on a different row count");
  if (res.basis.rows() != a.cols()) throw ShapeMismatch("basis fitted on a different column count");
  return DataMatrix(res.scores * res.basis.transpose(), a.col_names());
}

}  // namespace orthobias
