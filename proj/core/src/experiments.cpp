#include "orthobias/experiments.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "orthobias/predictors.hpp"

namespace orthobias {

Method method_from_string(const std::string& s) {
  if (s == "ml") return Method::ml;
  if (s == "ftu") return Method::ftu;
  if (s == "none") return Method::none;
  if (s == "ob1") return Method::ob1;
  if (s == "ob2" || s == "ob") return Method::ob2;
  if (s == "sob1") return Method::sob1;
  if (s == "sob2" || s == "sob") return Method::sob2;
  throw InvalidParams("unknown method: " + s);
}

std::string to_string(Method m) {
  switch (m) {
    case Method::ml: return "ml";
    case Method::ftu: return "ftu";
    case Method::none: return "none";
    case Method::ob1: return "ob1";
    case Method::ob2: return "ob2";
    case Method::sob1: return "sob1";
    case Method::sob2: return "sob2";
  }
  return "?";
}

bool method_uses_transform(Method m) {
  return m == Method::ob1 || m == Method::ob2 || m == Method::sob1 || m == Method::sob2;
}

namespace {

bool method_uses_sensitive(Method m) {
  return m == Method::ml || m == Method::ob1 || m == Method::sob1;
}

bool method_is_sob(Method m) { return m == Method::sob1 || m == Method::sob2; }

DataMatrix hcat(const DataMatrix& a, const DataMatrix& b) {
  Eigen::MatrixXd m(a.rows(), a.cols() + b.cols());
  m.leftCols(a.cols()) = a.matrix();
  m.rightCols(b.cols()) = b.matrix();
  std::vector<std::string> names = a.col_names();
  names.insert(names.end(), b.col_names().begin(), b.col_names().end());
  return DataMatrix(std::move(m), std::move(names));
}

std::vector<int> binary_labels(const Eigen::VectorXd& y) {
  std::vector<int> out(static_cast<size_t>(y.size()));
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    if (y(i) != 0.0 && y(i) != 1.0) throw InvalidParams("outcome is not binary");
    out[static_cast<size_t>(i)] = y(i) == 1.0 ? 1 : 0;
  }
  return out;
}

double orth_residual(const DataMatrix& at, const DataMatrix& bs) {
  return (at.matrix().transpose() * bs.matrix()).cwiseAbs().maxCoeff();
}

/*
 The fitted pre-processing step. OB rows extend out of sample through the
 stored basis and multipliers; SOB is transductive (its deflation lives in
 row space), so new rows go through a least-squares surrogate map fitted from
 [A|B] to the transformed rows. Identity for methods without a transform.
*/
class TransformStage {
 public:
  TransformStage(Method method, const ExperimentOptions& opts) : method_(method), opts_(opts) {}

  void fit(const DataMatrix& as, const DataMatrix& bs) {
    if (!method_uses_transform(method_)) {
      fitted_ = as;
      return;
    }
    const int q = static_cast<int>(as.cols());
    if (method_is_sob(method_)) {
      SobConfig cfg;
      cfg.k = opts_.k == 0 ? static_cast<int>(std::min<Eigen::Index>(as.rows(), q)) : opts_.k;
      cfg.h = opts_.h == 0.0 ? std::sqrt(static_cast<double>(q)) : opts_.h;
      cfg.eta = opts_.eta;
      cfg.max_iters = opts_.sob_max_iters;
      cfg.seed = opts_.transform_seed;
      SobResult res = fit_sob(as, bs, cfg);
      fitted_ = transform(as, res);
      info_.all_converged =
          std::all_of(res.converged.begin(), res.converged.end(), [](bool c) { return c; });
      info_.recon_error = (as.matrix() - fitted_->matrix()).norm();
      info_.svd_error = truncated_tail(as, cfg.k);
      for (Eigen::Index j = 0; j < res.basis.cols(); ++j)
        info_.basis_nonzeros.push_back(
            static_cast<int>((res.basis.col(j).cwiseAbs().array() > 1e-12).count()));
      Eigen::MatrixXd design(as.rows(), as.cols() + bs.cols());
      design.leftCols(as.cols()) = as.matrix();
      design.rightCols(bs.cols()) = bs.matrix();
      surrogate_ = design.colPivHouseholderQr().solve(fitted_->matrix());
    } else {
      ObConfig cfg;
      cfg.k = opts_.k;
      ob_ = fit_ob(as, bs, cfg);
      fitted_ = transform(as, *ob_);
      info_.recon_error = ob_->recon_error;
      info_.svd_error = ob_->svd_error;
    }
    info_.orthogonality_residual = orth_residual(*fitted_, bs);
    info_.modification_norm = (fitted_->matrix() - as.matrix()).norm();
  }

  const DataMatrix& fitted() const { return *fitted_; }
  const TransformInfo& info() const { return info_; }

  DataMatrix apply(const DataMatrix& as_new, const DataMatrix& bs_new) const {
    if (!method_uses_transform(method_)) return as_new;
    if (ob_) return transform_new_data(as_new, bs_new, *ob_);
    Eigen::MatrixXd design(as_new.rows(), as_new.cols() + bs_new.cols());
    design.leftCols(as_new.cols()) = as_new.matrix();
    design.rightCols(bs_new.cols()) = bs_new.matrix();
    return DataMatrix(design * (*surrogate_), as_new.col_names());
  }

 private:
  static double truncated_tail(const DataMatrix& as, int k) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(as.matrix());
    const auto& d = svd.singularValues();
    double s = 0.0;
    for (Eigen::Index j = k; j < d.size(); ++j) s += d(j) * d(j);
    return std::sqrt(s);
  }

  Method method_;
  ExperimentOptions opts_;
  std::optional<DataMatrix> fitted_;
  std::optional<FactorPair> ob_;
  std::optional<Eigen::MatrixXd> surrogate_;
  TransformInfo info_;
};

// Everything needed to score observed rows and counterfactual worlds for one
// fitted method.
struct FittedMethod {
  Method method;
  Predictor predictor;
  std::optional<AveragedScorer> aml;
  TransformStage stage;

  // Deployed scores: the averaged scorer when the method both consumes B and
  // promises B-free deployment, otherwise the predictor itself.
  Eigen::VectorXd deployed(const DataMatrix& at, const DataMatrix& bs) const {
    if (aml) return aml->score(at);
    if (method_uses_sensitive(method)) return predict_score(predictor, hcat(at, bs));
    return predict_score(predictor, at);
  }

  Eigen::VectorXd direct(const DataMatrix& at, const DataMatrix& bs) const {
    if (method_uses_sensitive(method)) return predict_score(predictor, hcat(at, bs));
    return predict_score(predictor, at);
  }
};

FittedMethod fit_method(Method method, const ExperimentOptions& opts, const DataMatrix& as,
                        const DataMatrix& bs, const Eigen::VectorXd& y, bool binary_y) {
  TransformStage stage(method, opts);
  stage.fit(as, bs);
  const DataMatrix& at = stage.fitted();
  DataMatrix x = method_uses_sensitive(method) ? hcat(at, bs) : at;

  Predictor pred = binary_y ? fit_logistic(x, binary_labels(y)) : fit_linear(x, y);
  pred.uses_sensitive = method_uses_sensitive(method);

  std::optional<AveragedScorer> aml;
  if (pred.uses_sensitive && method != Method::ml)
    aml.emplace(pred, bs.col_names(), EmpiricalBDistribution::from_rows(bs));

  return FittedMethod{method, std::move(pred), std::move(aml), std::move(stage)};
}

void add_transform_metrics(MetricsReport& report, const FittedMethod& fm, const DataMatrix& as,
                           const DataMatrix& bs) {
  if (!method_uses_transform(fm.method)) return;
  const TransformInfo& info = fm.stage.info();
  report.set("recon_error", info.recon_error);
  report.set("svd_error", info.svd_error);
  report.set("orthogonality_residual", orth_residual(fm.stage.fitted(), bs));
  report.set("modification_norm", modification_norm(as, fm.stage.fitted()));
  if (!info.all_converged) report.provenance["transform"] = "sob hit max_iters on some component";
}

// Columns of the standardized feature matrix that are causal descendants of
// B, for the pre/post correlation summary.
DataMatrix descendant_block(const DataMatrix& features, const std::vector<std::string>& names) {
  if (names.empty() || names.size() == features.col_names().size()) return features;
  Eigen::MatrixXd m(features.rows(), static_cast<Eigen::Index>(names.size()));
  for (size_t j = 0; j < names.size(); ++j)
    m.col(static_cast<Eigen::Index>(j)) = features.matrix().col(features.col_index(names[j]));
  return DataMatrix(std::move(m), names);
}

}  // namespace

MetricsReport evaluate_loan(const LoanParams& params, Method method,
                            const ExperimentOptions& opts) {
  Dataset ds = gen_loan(params);
  auto [as, pa] = standardize(ds.a);
  auto [bs, pb] = standardize(ds.b);

  FittedMethod fm = fit_method(method, opts, as, bs, ds.y, true);
  const DataMatrix& at = fm.stage.fitted();

  std::vector<int> y = binary_labels(ds.y);
  Eigen::VectorXd s_acc = fm.direct(at, bs);
  Eigen::VectorXd s_deploy = fm.aml ? fm.aml->score(at) : s_acc;

  MetricsReport report;
  AccAuc aa_metrics = acc_auc(s_acc, y);
  report.set("acc", aa_metrics.acc, "threshold 0.5 on the full predictor's observed scores");
  if (aa_metrics.auc) report.set("auc", *aa_metrics.auc);

  // One world per target group, regenerated through the structural equations
  // from the retained draws.
  std::map<int, Eigen::VectorXd> cf_scores, cf_scores_direct, aa_scores, aa_scores_direct;
  for (int g = 0; g <= 2; ++g) {
    Dataset world = counterfactual_loan(ds, g);
    DataMatrix as_g = apply_standardization(world.a, pa);
    DataMatrix bs_g = apply_standardization(world.b, pb);
    DataMatrix at_g = fm.stage.apply(as_g, bs_g);
    cf_scores[g] = fm.deployed(at_g, bs_g);
    if (fm.aml) cf_scores_direct[g] = fm.direct(at_g, bs_g);

    if (method_uses_transform(method)) {
      // Orthogonalized features are not descendants of B in the working
      // model, so the group intervention leaves them (and B-free scores)
      // unchanged.
      aa_scores[g] = s_deploy;
      if (fm.aml) aa_scores_direct[g] = fm.direct(at, bs_g);
    } else {
      aa_scores[g] = cf_scores[g];
    }
  }

  report.set("cf_metric", cf_metric(s_deploy, cf_scores, *ds.groups),
             fm.aml ? "scm counterfactuals; sensitive inputs marginalized (aml)"
                    : "scm counterfactuals; deployed predictor");
  if (fm.aml)
    report.set("cf_metric_direct", cf_metric(fm.direct(at, bs), cf_scores_direct, *ds.groups),
               "scm counterfactuals; counterfactual B substituted into the full predictor");

  report.set("aa_gap", aa_gap(aa_scores),
             method_uses_transform(method)
                 ? "transformed features invariant under group intervention"
                 : "scm counterfactuals, all rows set per group");
  if (fm.aml)
    report.set("aa_gap_direct", aa_gap(aa_scores_direct),
               "observed transformed features, group substituted into the full predictor");

  int skipped = 0;
  report.set("eo_gap", eo_gap(s_deploy, y, *ds.groups, &skipped),
             skipped ? std::to_string(skipped) + " strata skipped (missing label class)"
                     : "standard equalized-odds gap at threshold 0.5");

  report.set("avg_corr_raw", avg_pairwise_corr(as, bs));
  report.set("avg_corr",
             avg_pairwise_corr(method_uses_transform(method) ? at : as, bs),
             method_uses_transform(method) ? "transformed features vs B" : "raw features vs B");
  add_transform_metrics(report, fm, as, bs);
  return report;
}

MetricsReport evaluate_cont_y(const ContYParams& params, Method method,
                              const ExperimentOptions& opts) {
  ContYData data = gen_cont_y(params);
  auto [as, pa] = standardize(data.train.a);
  auto [bs, pb] = standardize(data.train.b);
  DataMatrix as_te = apply_standardization(data.test.observed.a, pa);
  DataMatrix bs_te = apply_standardization(data.test.observed.b, pb);
  DataMatrix as_cf = apply_standardization(data.test.counterfactual.a, pa);
  DataMatrix bs_cf = apply_standardization(data.test.counterfactual.b, pb);

  // SOB has no out-of-sample map; fit it on train and observed-test rows
  // together (unsupervised) and slice. OB extends naturally.
  FittedMethod fm = [&] {
    if (method_is_sob(method)) {
      Eigen::MatrixXd a_all(as.rows() + as_te.rows(), as.cols());
      a_all << as.matrix(), as_te.matrix();
      Eigen::MatrixXd b_all(bs.rows() + bs_te.rows(), bs.cols());
      b_all << bs.matrix(), bs_te.matrix();
      TransformStage stage(method, opts);
      stage.fit(DataMatrix(a_all, as.col_names()), DataMatrix(b_all, bs.col_names()));
      DataMatrix at_train(stage.fitted().matrix().topRows(as.rows()), as.col_names());
      DataMatrix x = method_uses_sensitive(method) ? hcat(at_train, bs) : at_train;
      Predictor pred = fit_linear(x, data.train.y);
      pred.uses_sensitive = method_uses_sensitive(method);
      std::optional<AveragedScorer> aml;
      if (pred.uses_sensitive)
        aml.emplace(pred, bs.col_names(), EmpiricalBDistribution::from_rows(bs));
      return FittedMethod{method, std::move(pred), std::move(aml), std::move(stage)};
    }
    return fit_method(method, opts, as, bs, data.train.y, false);
  }();

  DataMatrix at_te = fm.stage.apply(as_te, bs_te);
  DataMatrix at_cf = fm.stage.apply(as_cf, bs_cf);

  MetricsReport report;
  Eigen::VectorXd s_te = fm.direct(at_te, bs_te);
  report.set("rmse", rmse(s_te, data.test.observed.y),
             "full predictor's scores on the observed test split");

  Eigen::VectorXd s_deploy_te = fm.aml ? fm.aml->score(at_te) : s_te;
  Eigen::VectorXd s_deploy_cf = fm.aml ? fm.aml->score(at_cf) : fm.direct(at_cf, bs_cf);
  report.set("kl_divergence", kl_observed_vs_counterfactual(s_deploy_te, s_deploy_cf),
             fm.aml ? "flipped-B world, descendants regenerated; aml scorer"
                    : "flipped-B world, descendants regenerated");
  if (fm.aml)
    report.set("kl_divergence_direct",
               kl_observed_vs_counterfactual(s_te, fm.direct(at_cf, bs_cf)),
               "flipped-B world substituted into the full predictor");

  DataMatrix as_desc = descendant_block(as, data.train.descendant_cols);
  report.set("avg_corr_raw", avg_pairwise_corr(as_desc, bs), "B-descendant columns vs B");
  if (method_uses_transform(method)) {
    DataMatrix at_train(fm.stage.fitted().matrix().topRows(as.rows()), as.col_names());
    report.set("avg_corr",
               avg_pairwise_corr(descendant_block(at_train, data.train.descendant_cols), bs),
               "transformed B-descendant columns vs B");
  } else {
    report.set("avg_corr", report.values["avg_corr_raw"], "raw features vs B");
  }
  add_transform_metrics(report, fm, as, bs);
  return report;
}

MetricsReport evaluate_ingested(const Dataset& data, const std::optional<Dataset>& test,
                                Method method, const ExperimentOptions& opts,
                                std::uint64_t split_seed, double split_fraction) {
  // Assemble train/test row index sets.
  const auto n = data.a.rows();
  std::vector<Eigen::Index> train_rows, test_rows;
  if (!test) {
    std::vector<Eigen::Index> perm(static_cast<size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::mt19937_64 rng(split_seed);
    std::shuffle(perm.begin(), perm.end(), rng);
    auto n_train = static_cast<Eigen::Index>(std::lround(split_fraction * static_cast<double>(n)));
    n_train = std::clamp<Eigen::Index>(n_train, 1, n - 1);
    train_rows.assign(perm.begin(), perm.begin() + n_train);
    test_rows.assign(perm.begin() + n_train, perm.end());
  } else {
    train_rows.resize(static_cast<size_t>(n));
    std::iota(train_rows.begin(), train_rows.end(), 0);
    test_rows.resize(static_cast<size_t>(test->a.rows()));
    std::iota(test_rows.begin(), test_rows.end(), 0);
  }

  auto slice = [](const DataMatrix& m, const std::vector<Eigen::Index>& rows) {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), m.cols());
    for (size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = m.matrix().row(rows[i]);
    return DataMatrix(std::move(out), m.col_names());
  };
  auto slice_vec = [](const Eigen::VectorXd& v, const std::vector<Eigen::Index>& rows) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(rows.size()));
    for (size_t i = 0; i < rows.size(); ++i) out(static_cast<Eigen::Index>(i)) = v(rows[i]);
    return out;
  };

  const Dataset& test_src = test ? *test : data;
  DataMatrix a_tr_raw = slice(data.a, train_rows);
  DataMatrix a_te_raw = slice(test_src.a, test_rows);
  DataMatrix b_tr_raw = slice(data.b, train_rows);
  DataMatrix b_te_raw = slice(test_src.b, test_rows);
  Eigen::VectorXd y_tr = slice_vec(data.y, train_rows);
  Eigen::VectorXd y_te = slice_vec(test_src.y, test_rows);

  MetricsReport report;

  // Features that are constant on the training rows cannot be standardized;
  // drop them from both splits.
  {
    std::vector<std::string> keep;
    for (Eigen::Index j = 0; j < a_tr_raw.cols(); ++j) {
      const auto col = a_tr_raw.matrix().col(j);
      double mean = col.mean();
      double sd = std::sqrt((col.array() - mean).square().sum() /
                            std::max<double>(1.0, static_cast<double>(col.size() - 1)));
      if (sd > kVarianceEps) keep.push_back(a_tr_raw.col_names()[static_cast<size_t>(j)]);
    }
    if (keep.size() < a_tr_raw.col_names().size()) {
      report.provenance["features"] = std::to_string(a_tr_raw.col_names().size() - keep.size()) +
                                      " constant feature column(s) dropped";
      a_tr_raw = descendant_block(a_tr_raw, keep);
      a_te_raw = descendant_block(a_te_raw, keep);
    }
  }

  auto [as, pa] = standardize(a_tr_raw);
  auto [bs, pb] = standardize(b_tr_raw);
  DataMatrix as_te = apply_standardization(a_te_raw, pa);
  DataMatrix bs_te = apply_standardization(b_te_raw, pb);

  FittedMethod fm = [&] {
    if (method_is_sob(method)) {
      Eigen::MatrixXd a_all(as.rows() + as_te.rows(), as.cols());
      a_all << as.matrix(), as_te.matrix();
      Eigen::MatrixXd b_all(bs.rows() + bs_te.rows(), bs.cols());
      b_all << bs.matrix(), bs_te.matrix();
      TransformStage stage(method, opts);
      stage.fit(DataMatrix(a_all, as.col_names()), DataMatrix(b_all, bs.col_names()));
      DataMatrix at_train(stage.fitted().matrix().topRows(as.rows()), as.col_names());
      DataMatrix x = method_uses_sensitive(method) ? hcat(at_train, bs) : at_train;
      Predictor pred = data.binary_y ? fit_logistic(x, binary_labels(y_tr)) : fit_linear(x, y_tr);
      pred.uses_sensitive = method_uses_sensitive(method);
      std::optional<AveragedScorer> aml;
      if (pred.uses_sensitive && method != Method::ml)
        aml.emplace(pred, bs.col_names(), EmpiricalBDistribution::from_rows(bs));
      return FittedMethod{method, std::move(pred), std::move(aml), std::move(stage)};
    }
    return fit_method(method, opts, as, bs, y_tr, data.binary_y);
  }();

  DataMatrix at_te = fm.stage.apply(as_te, bs_te);
  Eigen::VectorXd s_te = fm.direct(at_te, bs_te);
  Eigen::VectorXd s_deploy = fm.aml ? fm.aml->score(at_te) : s_te;

  if (data.binary_y) {
    std::vector<int> y = binary_labels(y_te);
    AccAuc m = acc_auc(s_te, y);
    report.set("acc", m.acc);
    if (m.auc) report.set("auc", *m.auc);

    std::optional<std::vector<int>> groups;
    if (test)
      groups = test->groups;
    else if (data.groups) {
      std::vector<int> g;
      for (auto r : test_rows) g.push_back((*data.groups)[static_cast<size_t>(r)]);
      groups = std::move(g);
    }
    if (groups) {
      int skipped = 0;
      report.set("eo_gap", eo_gap(s_deploy, y, *groups, &skipped));

      // Substitution worlds: the group-defining sensitive columns (constant
      // within each group) are set to the target group's pattern; no causal
      // model is available for ingested data.
      std::set<int> levels(groups->begin(), groups->end());
      std::map<int, Eigen::VectorXd> cf_scores, aa_scores;
      for (int g : levels) {
        Eigen::MatrixXd b_sub = bs_te.matrix();
        for (Eigen::Index j = 0; j < bs_te.cols(); ++j) {
          bool constant_within = true;
          double pattern = 0.0;
          bool seen = false;
          for (size_t i = 0; i < groups->size() && constant_within; ++i) {
            if ((*groups)[i] != g) continue;
            if (!seen) {
              pattern = bs_te(static_cast<Eigen::Index>(i), j);
              seen = true;
            } else if (bs_te(static_cast<Eigen::Index>(i), j) != pattern) {
              constant_within = false;
            }
          }
          if (seen && constant_within) b_sub.col(j).setConstant(pattern);
        }
        DataMatrix bs_g(b_sub, bs_te.col_names());
        cf_scores[g] = fm.deployed(method_uses_transform(method) ? at_te
                                                                 : fm.stage.apply(as_te, bs_g),
                                   bs_g);
        aa_scores[g] = cf_scores[g];
      }
      report.set("cf_metric", cf_metric(s_deploy, cf_scores, *groups),
                 "substitution approximation (no causal model)");
      report.set("aa_gap", aa_gap(aa_scores), "substitution approximation (no causal model)");
    }
  } else {
    report.set("rmse", rmse(s_te, y_te));
  }

  report.set("avg_corr_raw", avg_pairwise_corr(as, bs));
  report.set("avg_corr", avg_pairwise_corr(method_uses_transform(method)
                                                ? DataMatrix(fm.stage.fitted().matrix().topRows(
                                                                 as.rows()),
                                                             as.col_names())
                                                : as,
                                            bs));
  add_transform_metrics(report, fm, as, bs);
  return report;
}

std::vector<SweepRow> beta_sweep(const std::vector<double>& beta_e_grid, const LoanParams& base,
                                 const std::vector<Method>& methods, int repeats) {
  if (beta_e_grid.empty()) throw InvalidParams("sweep grid is empty");
  if (repeats < 1) throw InvalidParams("sweep needs at least one repeat");
  std::vector<SweepRow> rows;
  for (double beta_e : beta_e_grid) {
    for (Method m : methods) {
      std::map<std::string, std::vector<double>> samples;
      for (int rep = 0; rep < repeats; ++rep) {
        LoanParams p = base;
        p.beta_e = beta_e;
        p.seed = base.seed + static_cast<std::uint64_t>(rep);
        MetricsReport r = evaluate_loan(p, m);
        for (const auto& [k, v] : r.values) samples[k].push_back(v);
      }
      for (const auto& [metric, vals] : samples) {
        if (static_cast<int>(vals.size()) != repeats) continue;  // metric not present every run
        double mean = std::accumulate(vals.begin(), vals.end(), 0.0) / vals.size();
        double var = 0.0;
        for (double v : vals) var += (v - mean) * (v - mean);
        double sd = vals.size() > 1 ? std::sqrt(var / (vals.size() - 1)) : 0.0;
        rows.push_back(SweepRow{beta_e, to_string(m), metric, mean, sd});
      }
    }
  }
  return rows;
}

std::pair<DataMatrix, TransformInfo> run_transform(const Dataset& data, Method method,
                                                   const ExperimentOptions& opts) {
  if (!method_uses_transform(method)) return {data.a, TransformInfo{}};
  auto [as, pa] = standardize(data.a);
  auto [bs, pb] = standardize(data.b);
  TransformStage stage(method, opts);
  stage.fit(as, bs);
  return {stage.fitted(), stage.info()};
}

}  // namespace orthobias
