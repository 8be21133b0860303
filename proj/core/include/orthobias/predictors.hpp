#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "orthobias/matrix.hpp"

namespace orthobias {

enum class PredictorKind { logistic, linear };

struct Predictor {
  PredictorKind kind = PredictorKind::linear;
  Eigen::VectorXd weights;  // one per feature column
  double intercept = 0.0;
  bool uses_sensitive = false;
  std::vector<std::string> feature_names;
  bool separation_detected = false;  // logistic fits on separable data

  nlohmann::json to_json() const;
  static Predictor from_json(const nlohmann::json& j);
};

struct LogisticOptions {
  double tol = 1e-8;   // max |gradient| at convergence
  int max_iters = 100;
  double ridge = 0.0;  // optional stabilizer, not applied to the intercept
};

// Maximum-likelihood logistic regression via damped Newton steps. Perfectly
// separable data is returned with separation_detected set once the
// coefficient norm exceeds 1e6 rather than thrown.
Predictor fit_logistic(const DataMatrix& x, const std::vector<int>& y,
                       const LogisticOptions& opts = {});

// Ordinary least squares with an intercept.
Predictor fit_linear(const DataMatrix& x, const Eigen::VectorXd& y);

// Logistic predictors return expit(Xw + b) in (0,1); linear returns Xw + b.
// Column names must match the predictor's feature names exactly.
Eigen::VectorXd predict_score(const Predictor& p, const DataMatrix& x);

double expit(double u);

/*
 Distinct rows of a sensitive matrix with their empirical frequencies,
 the mixing distribution for averaged predictors.
*/
struct EmpiricalBDistribution {
  Eigen::MatrixXd support;        // one distinct row per entry
  Eigen::VectorXd probabilities;  // nonnegative, sums to 1

  static EmpiricalBDistribution from_rows(const DataMatrix& b);
};

/*
 Marginalizes a predictor trained on [non-sensitive, sensitive] features over
 the empirical distribution of the sensitive rows:

   score(a) = sum_b f(a, b) P(b).

 For logistic predictors this is the probability mixture, not the expit of
 averaged logits.
*/
class AveragedScorer {
 public:
  AveragedScorer(Predictor predictor, std::vector<std::string> sensitive_names,
                 EmpiricalBDistribution dist);

  // x carries only the non-sensitive columns, in the predictor's order.
  Eigen::VectorXd score(const DataMatrix& x) const;

  const std::vector<std::string>& nonsensitive_names() const { return nonsensitive_names_; }

 private:
  Predictor predictor_;
  std::vector<std::string> nonsensitive_names_;
  Eigen::VectorXd nonsensitive_weights_;
  Eigen::VectorXd sensitive_offsets_;  // w_b' b_m per support row
  EmpiricalBDistribution dist_;
};

}  // namespace orthobias
