#include "orthobias/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <set>

#include <nlohmann/json.hpp>

namespace orthobias {

void MetricsReport::set(const std::string& name, double value, const std::string& note) {
  if (!std::isfinite(value)) throw InvalidParams("metric " + name + " is not finite");
  values[name] = value;
  if (!note.empty()) provenance[name] = note;
}

nlohmann::json MetricsReport::to_json() const {
  nlohmann::json j;
  j["metrics"] = values;
  j["provenance"] = provenance;
  return j;
}

AccAuc acc_auc(const Eigen::VectorXd& scores, const std::vector<int>& y) {
  const Eigen::Index n = scores.size();
  if (static_cast<Eigen::Index>(y.size()) != n) throw ShapeMismatch("score/label length");
  AccAuc out;
  Eigen::Index correct = 0;
  Eigen::Index n1 = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    int pred = scores(i) > 0.5 ? 1 : 0;
    correct += pred == y[static_cast<size_t>(i)];
    n1 += y[static_cast<size_t>(i)];
  }
  out.acc = static_cast<double>(correct) / static_cast<double>(n);

  const Eigen::Index n0 = n - n1;
  if (n0 == 0 || n1 == 0) return out;  // AUC undefined with a single class

  // Midranks give tied scores half credit (Mann-Whitney convention).
  std::vector<Eigen::Index> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](Eigen::Index a, Eigen::Index b) { return scores(a) < scores(b); });
  std::vector<double> rank(static_cast<size_t>(n));
  Eigen::Index i = 0;
  while (i < n) {
    Eigen::Index j = i;
    while (j + 1 < n && scores(order[static_cast<size_t>(j + 1)]) ==
                            scores(order[static_cast<size_t>(i)]))
      ++j;
    double mid = 0.5 * static_cast<double>(i + j) + 1.0;
    for (Eigen::Index t = i; t <= j; ++t) rank[static_cast<size_t>(order[static_cast<size_t>(t)])] = mid;
    i = j + 1;
  }
  double rank_sum_pos = 0.0;
  for (Eigen::Index r = 0; r < n; ++r)
    if (y[static_cast<size_t>(r)]) rank_sum_pos += rank[static_cast<size_t>(r)];
  out.auc = (rank_sum_pos - 0.5 * static_cast<double>(n1) * static_cast<double>(n1 + 1)) /
            (static_cast<double>(n0) * static_cast<double>(n1));
  return out;
}

double rmse(const Eigen::VectorXd& pred, const Eigen::VectorXd& y) {
  if (pred.size() != y.size()) throw ShapeMismatch("prediction/target length");
  return std::sqrt((pred - y).squaredNorm() / static_cast<double>(y.size()));
}

double kl_observed_vs_counterfactual(const Eigen::VectorXd& scores_obs,
                                     const Eigen::VectorXd& scores_cf, int bins) {
  if (scores_obs.size() == 0 || scores_cf.size() == 0)
    throw InvalidParams("KL requires nonempty score vectors");
  if (bins < 1) throw InvalidParams("KL requires at least one bin");
  constexpr double alpha = 1e-9;

  double lo = std::min(scores_obs.minCoeff(), scores_cf.minCoeff());
  double hi = std::max(scores_obs.maxCoeff(), scores_cf.maxCoeff());
  if (hi <= lo) hi = lo + 1.0;  // all scores identical: a single occupied bin

  auto histogram = [&](const Eigen::VectorXd& s) {
    std::vector<double> counts(static_cast<size_t>(bins), 0.0);
    for (Eigen::Index i = 0; i < s.size(); ++i) {
      auto b = static_cast<Eigen::Index>((s(i) - lo) / (hi - lo) * bins);
      b = std::clamp<Eigen::Index>(b, 0, bins - 1);
      counts[static_cast<size_t>(b)] += 1.0;
    }
    double total = static_cast<double>(s.size()) + alpha * bins;
    for (auto& c : counts) c = (c + alpha) / total;
    return counts;
  };

  auto p = histogram(scores_obs), q = histogram(scores_cf);
  double kl = 0.0;
  for (size_t b = 0; b < p.size(); ++b) kl += p[b] * std::log(p[b] / q[b]);
  return std::max(kl, 0.0);
}

namespace {

double pearson(const Eigen::VectorXd& a, const Eigen::VectorXd& b, const std::string& a_name,
               const std::string& b_name) {
  const auto n = static_cast<double>(a.size());
  double ma = a.mean(), mb = b.mean();
  Eigen::ArrayXd ca = a.array() - ma, cb = b.array() - mb;
  double sa = std::sqrt(ca.square().sum() / (n - 1));
  double sb = std::sqrt(cb.square().sum() / (n - 1));
  if (sa <= kVarianceEps) throw ZeroVarianceColumn(a_name);
  if (sb <= kVarianceEps) throw ZeroVarianceColumn(b_name);
  return (ca * cb).sum() / ((n - 1) * sa * sb);
}

}  // namespace

double avg_pairwise_corr(const DataMatrix& x, const DataMatrix& b) {
  if (x.rows() != b.rows()) throw ShapeMismatch("X and B row counts differ");
  double total = 0.0;
  for (Eigen::Index j = 0; j < x.cols(); ++j)
    for (Eigen::Index l = 0; l < b.cols(); ++l)
      total += std::abs(pearson(x.matrix().col(j), b.matrix().col(l),
                                x.col_names()[static_cast<size_t>(j)],
                                b.col_names()[static_cast<size_t>(l)]));
  return total / static_cast<double>(x.cols() * b.cols());
}

double modification_norm(const DataMatrix& a, const DataMatrix& a_tilde) {
  if (a.rows() != a_tilde.rows() || a.cols() != a_tilde.cols())
    throw ShapeMismatch("matrices differ in shape");
  return (a_tilde.matrix() - a.matrix()).norm();
}

double eo_gap(const Eigen::VectorXd& scores, const std::vector<int>& y,
              const std::vector<int>& groups, int* skipped_strata) {
  const Eigen::Index n = scores.size();
  if (static_cast<Eigen::Index>(y.size()) != n || static_cast<Eigen::Index>(groups.size()) != n)
    throw ShapeMismatch("score/label/group length");
  std::set<int> gset(groups.begin(), groups.end());
  if (gset.size() < 2) throw RequiresGroups();

  int skipped = 0;
  double gap = 0.0;
  for (int cls = 0; cls <= 1; ++cls) {
    std::vector<double> rates;
    for (int g : gset) {
      Eigen::Index cnt = 0, pos = 0;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (groups[static_cast<size_t>(i)] == g && y[static_cast<size_t>(i)] == cls) {
          ++cnt;
          pos += scores(i) > 0.5;
        }
      }
      if (cnt == 0) {
        ++skipped;
        continue;
      }
      rates.push_back(static_cast<double>(pos) / static_cast<double>(cnt));
    }
    for (size_t a = 0; a < rates.size(); ++a)
      for (size_t b = a + 1; b < rates.size(); ++b)
        gap = std::max(gap, std::abs(rates[a] - rates[b]));
  }
  if (skipped_strata) *skipped_strata = skipped;
  return gap;
}

double cf_metric(const Eigen::VectorXd& observed_scores,
                 const std::map<int, Eigen::VectorXd>& cf_scores_by_group,
                 const std::vector<int>& row_groups) {
  const Eigen::Index n = observed_scores.size();
  if (static_cast<Eigen::Index>(row_groups.size()) != n)
    throw ShapeMismatch("score/group length");
  if (cf_scores_by_group.empty()) throw RequiresGroups();
  for (const auto& [g, s] : cf_scores_by_group)
    if (s.size() != n) throw ShapeMismatch("counterfactual score length for group " + std::to_string(g));

  double best = 0.0;
  for (const auto& [g_from, unused] : cf_scores_by_group) {
    (void)unused;
    std::vector<Eigen::Index> rows;
    for (Eigen::Index i = 0; i < n; ++i)
      if (row_groups[static_cast<size_t>(i)] == g_from) rows.push_back(i);
    if (rows.empty()) continue;
    for (const auto& [g_to, cf] : cf_scores_by_group) {
      if (g_to == g_from) continue;
      double s = 0.0;
      for (Eigen::Index i : rows) s += std::abs(cf(i) - observed_scores(i));
      best = std::max(best, s / static_cast<double>(rows.size()));
    }
  }
  return best;
}

double aa_gap(const std::map<int, Eigen::VectorXd>& cf_scores_by_group) {
  if (cf_scores_by_group.empty()) throw RequiresGroups();
  std::vector<double> means;
  for (const auto& [g, s] : cf_scores_by_group) {
    (void)g;
    if (s.size() == 0) throw InvalidParams("empty score vector in aa_gap");
    means.push_back(s.mean());
  }
  double gap = 0.0;
  for (size_t a = 0; a < means.size(); ++a)
    for (size_t b = a + 1; b < means.size(); ++b)
      gap = std::max(gap, std::abs(means[a] - means[b]));
  return gap;
}

void write_sweep_tsv(std::ostream& os, const std::string& x_name,
                     const std::vector<SweepRow>& rows) {
  os << x_name << "\tmethod\tmetric\tmean\tstd\n";
  os.precision(12);
  for (const auto& r : rows)
    os << r.x << '\t' << r.method << '\t' << r.metric << '\t' << r.mean << '\t' << r.stddev
       << '\n';
}

}  // namespace orthobias
