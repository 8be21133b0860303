#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "orthobias/matrix.hpp"

namespace orthobias {

/*
 Named metric values plus a provenance note per metric recording which
 definition variant produced the number (e.g. whether counterfactuals were
 regenerated through a causal model or substituted).
*/
struct MetricsReport {
  std::map<std::string, double> values;
  std::map<std::string, std::string> provenance;

  void set(const std::string& name, double value, const std::string& note = "");
  nlohmann::json to_json() const;
};

struct AccAuc {
  double acc = 0.0;
  std::optional<double> auc;  // absent when only one label class is present
};

// Accuracy at the 0.5 threshold; AUC by rank statistic with half credit for
// tied scores.
AccAuc acc_auc(const Eigen::VectorXd& scores, const std::vector<int>& y);

double rmse(const Eigen::VectorXd& pred, const Eigen::VectorXd& y);

// KL(observed || counterfactual) over a shared equal-width histogram spanning
// the pooled range, with Laplace smoothing 1e-9 per bin.
double kl_observed_vs_counterfactual(const Eigen::VectorXd& scores_obs,
                                     const Eigen::VectorXd& scores_cf, int bins = 50);

// Mean absolute Pearson correlation over all (column of X, column of B) pairs.
double avg_pairwise_corr(const DataMatrix& x, const DataMatrix& b);

// ||A_tilde - A||_F, the total change imposed by pre-processing.
double modification_norm(const DataMatrix& a, const DataMatrix& a_tilde);

/*
 Equalized-odds gap: max over label classes and group pairs of the difference
 in positive-prediction rates at threshold 0.5. Strata missing a (group,
 label) cell are skipped; skipped_strata reports how many.
*/
double eo_gap(const Eigen::VectorXd& scores, const std::vector<int>& y,
              const std::vector<int>& groups, int* skipped_strata = nullptr);

/*
 Counterfactual-fairness metric over precomputed scores. For every ordered
 pair of groups (g, g'), averages |cf_scores_by_group[g'] - observed| over the
 rows whose observed group is g and returns the maximum. cf_scores_by_group
 maps a target group label to the scores of the world where every row is set
 to that group.
*/
double cf_metric(const Eigen::VectorXd& observed_scores,
                 const std::map<int, Eigen::VectorXd>& cf_scores_by_group,
                 const std::vector<int>& row_groups);

// Max over group pairs of |mean score with all rows set to g - mean with all
// rows set to g'|.
double aa_gap(const std::map<int, Eigen::VectorXd>& cf_scores_by_group);

// One sweep line per (x, method, metric) cell, plot-ready.
struct SweepRow {
  double x = 0.0;
  std::string method;
  std::string metric;
  double mean = 0.0;
  double stddev = 0.0;
};
void write_sweep_tsv(std::ostream& os, const std::string& x_name,
                     const std::vector<SweepRow>& rows);

}  // namespace orthobias
