#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "orthobias/matrix.hpp"

namespace orthobias {

/*
 Loan-approval generator. A three-group sensitive label drives education and
 income through

   B   = 1{U_B > 0.76} + 1{U_B > 0.92},          U_B ~ Uniform(0,1)
   E   = max{0, U_E},                            U_E ~ Normal(mu_E, 1)
   I   = exp{0.1 U_E + U_I},                     U_I ~ Normal(mu_I, 1)
   Y   = 1{U_Y < expit(b0 + b1 1{B=1} + b2 1{B=2} + b_E E + b_I I)}

 with mu_E = lambda_e0 + 1{B=1} lambda_e1 + 1{B=2} lambda_e2 and
 mu_I = log(lambda_a0 + 1{B=1} lambda_a1 + 1{B=2} lambda_a2). Group shares
 are (0.76, 0.16, 0.08). All exogenous draws are retained so counterfactual
 worlds can be regenerated exactly.
*/
struct LoanParams {
  double lambda_e0 = 2.0, lambda_e1 = 0.2, lambda_e2 = 0.4;
  double lambda_a0 = 10.0, lambda_a1 = 0.0, lambda_a2 = 0.0;
  double beta0 = -1.4, beta1 = 2.0, beta2 = 4.0;
  double beta_e = 0.25, beta_i = 0.005;
  int n = 5000;
  std::uint64_t seed = 0;
};

/*
 High-dimensional continuous-outcome generator. p_b independent Bernoulli
 sensitive columns feed p_a descendant features a_j = (sum_i b_i + eps_j) * j,
 p_x extra features are independent of B, and
 y = sum_j a_j + sum_l x_l + eps_y.
*/
struct ContYParams {
  int n = 10000;
  int p_b = 3, p_a = 40, p_x = 8;
  double noise_sd_a = 0.5;
  double noise_sd_y = 0.5;
  double bernoulli_p = 0.7;
  double cf_fraction = 0.8;     // share of test rows whose B is flipped
  double split_fraction = 0.75; // train share
  std::uint64_t seed = 0;
  bool per_column_flips = false;  // flip each (row, column) independently
};

struct LoanNoise {
  Eigen::VectorXd u_b, z_e, z_i, u_y;  // z_* are the standard-normal parts
};

struct ContYNoise {
  Eigen::MatrixXd eps_a;  // per-row, per-descendant-feature
  Eigen::VectorXd eps_y;
};

/*
 A generated or ingested sample: non-sensitive matrix A, numeric sensitive
 matrix B, outcome vector, and (for generated data) the exogenous noise that
 regenerates counterfactual worlds. groups carries discrete sensitive labels
 when the data has them; descendant_cols names the A columns that are causal
 descendants of B (all of them when unknown).
*/
struct Dataset {
  Dataset(DataMatrix a_, DataMatrix b_, Eigen::VectorXd y_, bool binary_y_)
      : a(std::move(a_)), b(std::move(b_)), y(std::move(y_)), binary_y(binary_y_) {}

  DataMatrix a;
  DataMatrix b;
  Eigen::VectorXd y;
  bool binary_y = false;
  std::optional<std::vector<int>> groups;
  std::vector<std::string> descendant_cols;

  std::optional<LoanNoise> loan_noise;
  std::optional<LoanParams> loan_params;
  std::optional<ContYNoise> cont_y_noise;
};

// Observed rows and one counterfactual world, aligned index-wise; flipped
// marks the rows whose sensitive values were altered.
struct CounterfactualPair {
  Dataset observed;
  Dataset counterfactual;
  std::vector<bool> flipped;
};

Dataset gen_loan(const LoanParams& params);

// Sets every row's group to target_group and regenerates E, I, Y from the
// retained draws; rows already in target_group come back bit-identical.
Dataset counterfactual_loan(const Dataset& ds, int target_group);

struct ContYData {
  Dataset train;
  CounterfactualPair test;  // observed test rows and their flipped world
};

ContYData gen_cont_y(const ContYParams& params);

}  // namespace orthobias
