#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orthobias/datagen.hpp"
#include "orthobias/metrics.hpp"
#include "orthobias/ob.hpp"
#include "orthobias/sob.hpp"

namespace orthobias {

/*
 Predictor wirings compared in the experiments:
   ml    logistic/linear on the raw features plus the sensitive columns
   ftu   raw features only (fairness through unawareness); `none` is an alias
   ob1   orthogonalized features plus sensitive columns; deployed scores for
         fairness metrics marginalize the sensitive inputs over their
         empirical distribution, accuracy metrics use the full predictor
   ob2   orthogonalized features only
   sob1/sob2  as ob1/ob2 with the sparse transform
*/
enum class Method { ml, ftu, none, ob1, ob2, sob1, sob2 };

Method method_from_string(const std::string& s);
std::string to_string(Method m);
bool method_uses_transform(Method m);

struct ExperimentOptions {
  int k = 0;        // transform rank; 0 = full (column count of A)
  double h = 0.0;   // sob l1 budget; 0 = sqrt(column count of A)
  double eta = 1e-6;
  int sob_max_iters = 500;
  std::uint64_t transform_seed = 0;  // sob basis initialization
};

// Diagnostics of a fitted transform, written next to transformed data.
struct TransformInfo {
  double recon_error = 0.0;
  double svd_error = 0.0;
  double orthogonality_residual = 0.0;  // max |A_tilde' B| entry
  double modification_norm = 0.0;
  std::vector<int> basis_nonzeros;      // per basis vector (sob)
  bool all_converged = true;
};

// Full loan protocol: generate, standardize, transform, fit, and score every
// applicable metric on the generated sample.
MetricsReport evaluate_loan(const LoanParams& params, Method method,
                            const ExperimentOptions& opts = {});

// Continuous-outcome protocol with the train/test split and flipped-B world.
MetricsReport evaluate_cont_y(const ContYParams& params, Method method,
                              const ExperimentOptions& opts = {});

/*
 Evaluation for ingested data without a causal model. Counterfactual worlds
 substitute the first sensitive column's level and keep everything else
 fixed. When test is absent the rows are split split_fraction/rest with the
 given seed.
*/
MetricsReport evaluate_ingested(const Dataset& data, const std::optional<Dataset>& test,
                                Method method, const ExperimentOptions& opts = {},
                                std::uint64_t split_seed = 0, double split_fraction = 0.75);

// Repeats the loan evaluation over a grid of education effects; one row per
// (beta_e, method, metric) with mean and sample standard deviation across
// `repeats` seeds.
std::vector<SweepRow> beta_sweep(const std::vector<double>& beta_e_grid, const LoanParams& base,
                                 const std::vector<Method>& methods, int repeats = 10);

// Standardizes and transforms a dataset's features, for the transform
// command. Returns the processed matrix and diagnostics.
std::pair<DataMatrix, TransformInfo> run_transform(const Dataset& data, Method method,
                                                   const ExperimentOptions& opts);

}  // namespace orthobias
