#include "orthobias/predictors.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include <nlohmann/json.hpp>

namespace orthobias {

double expit(double u) {
  if (u >= 0) {
    double e = std::exp(-u);
    return 1.0 / (1.0 + e);
  }
  double e = std::exp(u);
  return e / (1.0 + e);
}

namespace {

double clamp_unit_open(double p) {
  constexpr double lo = 1e-300;
  const double hi = std::nextafter(1.0, 0.0);
  return std::min(hi, std::max(lo, p));
}

// sum_i softplus(m_i) - y_i m_i, the negative Bernoulli log-likelihood.
double nll(const Eigen::VectorXd& margins, const std::vector<int>& y) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < margins.size(); ++i) {
    double m = margins(i);
    double softplus = m > 30 ? m : (m < -30 ? std::exp(m) : std::log1p(std::exp(m)));
    s += softplus - (y[static_cast<size_t>(i)] ? m : 0.0);
  }
  return s;
}

}  // namespace

Predictor fit_logistic(const DataMatrix& x, const std::vector<int>& y,
                       const LogisticOptions& opts) {
  const Eigen::Index n = x.rows(), p = x.cols();
  if (static_cast<Eigen::Index>(y.size()) != n)
    throw ShapeMismatch("label count != row count");
  for (int v : y)
    if (v != 0 && v != 1) throw InvalidParams("labels must be 0 or 1");

  Eigen::MatrixXd xb(n, p + 1);
  xb.col(0).setOnes();
  xb.rightCols(p) = x.matrix();

  Eigen::VectorXd w = Eigen::VectorXd::Zero(p + 1);
  Eigen::VectorXd yv(n);
  for (Eigen::Index i = 0; i < n; ++i) yv(i) = y[static_cast<size_t>(i)];

  Eigen::VectorXd ridge_diag = Eigen::VectorXd::Constant(p + 1, opts.ridge);
  ridge_diag(0) = 0.0;

  bool separated = false;
  double current = nll(xb * w, y) + 0.5 * opts.ridge * w.tail(p).squaredNorm();

  for (int it = 0; it < opts.max_iters; ++it) {
    Eigen::VectorXd margins = xb * w;
    Eigen::VectorXd prob(n), weight(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      prob(i) = expit(margins(i));
      weight(i) = std::max(prob(i) * (1.0 - prob(i)), 1e-10);
    }
    Eigen::VectorXd grad = xb.transpose() * (yv - prob) - ridge_diag.cwiseProduct(w);
    if (grad.lpNorm<Eigen::Infinity>() <= opts.tol) break;

    Eigen::MatrixXd hess = xb.transpose() * weight.asDiagonal() * xb;
    hess.diagonal() += ridge_diag;
    Eigen::VectorXd step = hess.ldlt().solve(grad);
    if (!step.allFinite()) {
      separated = true;
      break;
    }

    // Step halving keeps the loss nonincreasing.
    double scale = 1.0;
    Eigen::VectorXd w_new;
    double next = current;
    for (int half = 0; half < 40; ++half) {
      w_new = w + scale * step;
      next = nll(xb * w_new, y) + 0.5 * opts.ridge * w_new.tail(p).squaredNorm();
      if (next <= current + 1e-12) break;
      scale *= 0.5;
    }
    w = w_new;
    current = next;

    if (w.norm() > 1e6) {
      separated = true;
      break;
    }
  }

  Predictor out;
  out.kind = PredictorKind::logistic;
  out.intercept = w(0);
  out.weights = w.tail(p);
  out.feature_names = x.col_names();
  out.separation_detected = separated;
  return out;
}

Predictor fit_linear(const DataMatrix& x, const Eigen::VectorXd& y) {
  const Eigen::Index n = x.rows(), p = x.cols();
  if (y.size() != n) throw ShapeMismatch("response length != row count");
  Eigen::MatrixXd xb(n, p + 1);
  xb.col(0).setOnes();
  xb.rightCols(p) = x.matrix();
  Eigen::VectorXd beta = least_squares(xb, y);

  Predictor out;
  out.kind = PredictorKind::linear;
  out.intercept = beta(0);
  out.weights = beta.tail(p);
  out.feature_names = x.col_names();
  return out;
}

Eigen::VectorXd predict_score(const Predictor& p, const DataMatrix& x) {
  if (x.col_names() != p.feature_names)
    throw FeatureMismatch("columns differ from the predictor's training features");
  Eigen::VectorXd margins = (x.matrix() * p.weights).array() + p.intercept;
  if (p.kind == PredictorKind::linear) return margins;
  for (Eigen::Index i = 0; i < margins.size(); ++i)
    margins(i) = clamp_unit_open(expit(margins(i)));
  return margins;
}

EmpiricalBDistribution EmpiricalBDistribution::from_rows(const DataMatrix& b) {
  std::map<std::vector<double>, int> counts;
  for (Eigen::Index i = 0; i < b.rows(); ++i) {
    std::vector<double> row(static_cast<size_t>(b.cols()));
    for (Eigen::Index j = 0; j < b.cols(); ++j) row[static_cast<size_t>(j)] = b(i, j);
    ++counts[row];
  }
  EmpiricalBDistribution dist;
  dist.support.resize(static_cast<Eigen::Index>(counts.size()), b.cols());
  dist.probabilities.resize(static_cast<Eigen::Index>(counts.size()));
  Eigen::Index r = 0;
  for (const auto& [row, c] : counts) {
    for (Eigen::Index j = 0; j < b.cols(); ++j) dist.support(r, j) = row[static_cast<size_t>(j)];
    dist.probabilities(r) = static_cast<double>(c) / static_cast<double>(b.rows());
    ++r;
  }
  return dist;
}

AveragedScorer::AveragedScorer(Predictor predictor, std::vector<std::string> sensitive_names,
                               EmpiricalBDistribution dist)
    : predictor_(std::move(predictor)), dist_(std::move(dist)) {
  const auto& names = predictor_.feature_names;
  std::vector<Eigen::Index> sens_idx;
  for (const auto& s : sensitive_names) {
    auto it = std::find(names.begin(), names.end(), s);
    if (it == names.end()) throw FeatureMismatch("sensitive feature " + s + " not in predictor");
    sens_idx.push_back(static_cast<Eigen::Index>(it - names.begin()));
  }
  if (dist_.support.cols() != static_cast<Eigen::Index>(sens_idx.size()))
    throw ShapeMismatch("distribution support width != sensitive feature count");
  if (dist_.support.rows() == 0) throw InvalidParams("empty sensitive distribution");

  Eigen::VectorXd w_sens(sens_idx.size());
  std::vector<bool> is_sens(names.size(), false);
  for (size_t j = 0; j < sens_idx.size(); ++j) {
    w_sens(static_cast<Eigen::Index>(j)) = predictor_.weights(sens_idx[j]);
    is_sens[static_cast<size_t>(sens_idx[j])] = true;
  }
  nonsensitive_weights_.resize(static_cast<Eigen::Index>(names.size()) - w_sens.size());
  Eigen::Index r = 0;
  for (size_t j = 0; j < names.size(); ++j) {
    if (!is_sens[j]) {
      nonsensitive_names_.push_back(names[j]);
      nonsensitive_weights_(r++) = predictor_.weights(static_cast<Eigen::Index>(j));
    }
  }
  sensitive_offsets_ = dist_.support * w_sens;
}

Eigen::VectorXd AveragedScorer::score(const DataMatrix& x) const {
  if (x.col_names() != nonsensitive_names_)
    throw FeatureMismatch("columns differ from the scorer's non-sensitive features");
  Eigen::VectorXd base = (x.matrix() * nonsensitive_weights_).array() + predictor_.intercept;
  if (predictor_.kind == PredictorKind::linear)
    return base.array() + dist_.probabilities.dot(sensitive_offsets_);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(x.rows());
  for (Eigen::Index m = 0; m < sensitive_offsets_.size(); ++m) {
    double pm = dist_.probabilities(m), off = sensitive_offsets_(m);
    for (Eigen::Index i = 0; i < out.size(); ++i) out(i) += pm * expit(base(i) + off);
  }
  for (Eigen::Index i = 0; i < out.size(); ++i) out(i) = clamp_unit_open(out(i));
  return out;
}

nlohmann::json Predictor::to_json() const {
  nlohmann::json j;
  j["kind"] = kind == PredictorKind::logistic ? "logistic" : "linear";
  j["intercept"] = intercept;
  j["weights"] = std::vector<double>(weights.data(), weights.data() + weights.size());
  j["feature_names"] = feature_names;
  j["uses_sensitive"] = uses_sensitive;
  j["separation_detected"] = separation_detected;
  return j;
}

Predictor Predictor::from_json(const nlohmann::json& j) {
  Predictor p;
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "logistic")
    p.kind = PredictorKind::logistic;
  else if (kind == "linear")
    p.kind = PredictorKind::linear;
  else
    throw InvalidParams("unknown predictor kind: " + kind);
  p.intercept = j.at("intercept").get<double>();
  auto w = j.at("weights").get<std::vector<double>>();
  p.weights = Eigen::Map<const Eigen::VectorXd>(w.data(), static_cast<Eigen::Index>(w.size()));
  p.feature_names = j.at("feature_names").get<std::vector<std::string>>();
  p.uses_sensitive = j.value("uses_sensitive", false);
  p.separation_detected = j.value("separation_detected", false);
  if (p.weights.size() != static_cast<Eigen::Index>(p.feature_names.size()))
    throw InvalidParams("weight count != feature name count");
  return p;
}

}  // namespace orthobias
