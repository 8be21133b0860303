#include "orthobias/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "orthobias/predictors.hpp"  // expit

namespace orthobias {

namespace {

void validate(const LoanParams& p) {
  if (p.n < 1) throw InvalidParams("loan n must be >= 1");
  for (double shift : {0.0, p.lambda_a1, p.lambda_a2})
    if (p.lambda_a0 + shift <= 0)
      throw InvalidParams("income location lambda_a0 + shift must be positive (log argument)");
}

int group_of(double u_b) { return (u_b > 0.76 ? 1 : 0) + (u_b > 0.92 ? 1 : 0); }

struct LoanRow {
  double e, i;
  int y;
};

LoanRow loan_structural(const LoanParams& p, int g, double z_e, double z_i, double u_y) {
  double mu_e = p.lambda_e0 + (g == 1 ? p.lambda_e1 : 0.0) + (g == 2 ? p.lambda_e2 : 0.0);
  double u_e = mu_e + z_e;
  double e = std::max(0.0, u_e);
  double mu_i =
      std::log(p.lambda_a0 + (g == 1 ? p.lambda_a1 : 0.0) + (g == 2 ? p.lambda_a2 : 0.0));
  double inc = std::exp(0.1 * u_e + (mu_i + z_i));
  double logit = p.beta0 + (g == 1 ? p.beta1 : 0.0) + (g == 2 ? p.beta2 : 0.0) + p.beta_e * e +
                 p.beta_i * inc;
  return {e, inc, u_y < expit(logit) ? 1 : 0};
}

Dataset assemble_loan(const LoanParams& p, const std::vector<int>& groups, LoanNoise noise) {
  const auto n = static_cast<Eigen::Index>(groups.size());
  Eigen::MatrixXd a(n, 2), b(n, 2);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    int g = groups[static_cast<size_t>(i)];
    LoanRow row = loan_structural(p, g, noise.z_e(i), noise.z_i(i), noise.u_y(i));
    a(i, 0) = row.e;
    a(i, 1) = row.i;
    b(i, 0) = g == 1 ? 1.0 : 0.0;
    b(i, 1) = g == 2 ? 1.0 : 0.0;
    y(i) = row.y;
  }
  Dataset ds(DataMatrix(std::move(a), {"education", "income"}),
             DataMatrix(std::move(b), {"group_1", "group_2"}), std::move(y), true);
  ds.groups = groups;
  ds.descendant_cols = {"education", "income"};
  ds.loan_noise = std::move(noise);
  ds.loan_params = p;
  return ds;
}

}  // namespace

Dataset gen_loan(const LoanParams& params) {
  validate(params);
  std::mt19937_64 rng(params.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  const auto n = static_cast<Eigen::Index>(params.n);
  LoanNoise noise{Eigen::VectorXd(n), Eigen::VectorXd(n), Eigen::VectorXd(n), Eigen::VectorXd(n)};
  std::vector<int> groups(static_cast<size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    noise.u_b(i) = unif(rng);
    noise.z_e(i) = gauss(rng);
    noise.z_i(i) = gauss(rng);
    noise.u_y(i) = unif(rng);
    groups[static_cast<size_t>(i)] = group_of(noise.u_b(i));
  }
  return assemble_loan(params, groups, std::move(noise));
}

Dataset counterfactual_loan(const Dataset& ds, int target_group) {
  if (!ds.loan_noise || !ds.loan_params) throw MissingNoise();
  if (target_group < 0 || target_group > 2)
    throw InvalidParams("target group must be 0, 1 or 2");
  std::vector<int> groups(static_cast<size_t>(ds.a.rows()), target_group);
  return assemble_loan(*ds.loan_params, groups, *ds.loan_noise);
}

namespace {

void validate(const ContYParams& p) {
  if (p.n < 1 || p.p_b < 1 || p.p_a < 1 || p.p_x < 1)
    throw InvalidParams("counts must be >= 1");
  if (p.cf_fraction <= 0 || p.cf_fraction > 1 || p.split_fraction <= 0 || p.split_fraction > 1)
    throw InvalidParams("fractions must lie in (0, 1]");
  if (p.bernoulli_p <= 0 || p.bernoulli_p >= 1)
    throw InvalidParams("bernoulli_p must lie in (0, 1)");
  if (p.noise_sd_a <= 0 || p.noise_sd_y <= 0) throw InvalidParams("noise sds must be positive");
}

std::vector<std::string> cont_y_feature_names(const ContYParams& p) {
  std::vector<std::string> names;
  for (int j = 1; j <= p.p_a; ++j) names.push_back("a" + std::to_string(j));
  for (int j = 1; j <= p.p_x; ++j) names.push_back("x" + std::to_string(j));
  return names;
}

// Descendant features from the sensitive rows plus retained noise; the x
// block is passed through untouched.
Eigen::MatrixXd cont_y_features(const ContYParams& p, const Eigen::MatrixXd& b,
                                const Eigen::MatrixXd& eps_a, const Eigen::MatrixXd& x) {
  Eigen::MatrixXd f(b.rows(), p.p_a + p.p_x);
  Eigen::VectorXd bsum = b.rowwise().sum();
  for (int j = 0; j < p.p_a; ++j)
    f.col(j) = (bsum + eps_a.col(j)) * static_cast<double>(j + 1);
  f.rightCols(p.p_x) = x;
  return f;
}

Dataset assemble_cont_y(const ContYParams& p, Eigen::MatrixXd b, const Eigen::MatrixXd& eps_a,
                        const Eigen::MatrixXd& x, const Eigen::VectorXd& eps_y) {
  Eigen::MatrixXd f = cont_y_features(p, b, eps_a, x);
  Eigen::VectorXd y = f.rowwise().sum() + eps_y;
  std::vector<std::string> b_names;
  for (int j = 1; j <= p.p_b; ++j) b_names.push_back("b" + std::to_string(j));
  Dataset ds(DataMatrix(std::move(f), cont_y_feature_names(p)),
             DataMatrix(std::move(b), std::move(b_names)), std::move(y), false);
  for (int j = 1; j <= p.p_a; ++j) ds.descendant_cols.push_back("a" + std::to_string(j));
  ds.cont_y_noise = ContYNoise{eps_a, eps_y};
  return ds;
}

}  // namespace

ContYData gen_cont_y(const ContYParams& params) {
  validate(params);
  std::mt19937_64 rng(params.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  const auto n = static_cast<Eigen::Index>(params.n);
  Eigen::MatrixXd b(n, params.p_b);
  for (Eigen::Index i = 0; i < n; ++i)
    for (int j = 0; j < params.p_b; ++j) b(i, j) = unif(rng) < params.bernoulli_p ? 1.0 : 0.0;

  Eigen::MatrixXd eps_a(n, params.p_a);
  for (Eigen::Index i = 0; i < n; ++i)
    for (int j = 0; j < params.p_a; ++j) eps_a(i, j) = params.noise_sd_a * gauss(rng);

  const double x_sd = std::sqrt(params.p_a * params.p_b * 0.05);
  Eigen::MatrixXd x(n, params.p_x);
  for (Eigen::Index i = 0; i < n; ++i)
    for (int j = 0; j < params.p_x; ++j) x(i, j) = x_sd * gauss(rng);

  Eigen::VectorXd eps_y(n);
  for (Eigen::Index i = 0; i < n; ++i) eps_y(i) = params.noise_sd_y * gauss(rng);

  std::vector<Eigen::Index> perm(static_cast<size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  const auto n_train =
      std::max<Eigen::Index>(1, static_cast<Eigen::Index>(std::lround(params.split_fraction * n)));
  const Eigen::Index n_test = n - n_train;
  if (n_test < 1) throw InvalidParams("split leaves no test rows");

  auto take = [&](Eigen::Index offset, Eigen::Index count, const Eigen::MatrixXd& m) {
    Eigen::MatrixXd out(count, m.cols());
    for (Eigen::Index r = 0; r < count; ++r) out.row(r) = m.row(perm[static_cast<size_t>(offset + r)]);
    return out;
  };
  auto take_vec = [&](Eigen::Index offset, Eigen::Index count, const Eigen::VectorXd& v) {
    Eigen::VectorXd out(count);
    for (Eigen::Index r = 0; r < count; ++r) out(r) = v(perm[static_cast<size_t>(offset + r)]);
    return out;
  };

  Dataset train = assemble_cont_y(params, take(0, n_train, b), take(0, n_train, eps_a),
                                  take(0, n_train, x), take_vec(0, n_train, eps_y));

  Eigen::MatrixXd b_test = take(n_train, n_test, b);
  Eigen::MatrixXd eps_a_test = take(n_train, n_test, eps_a);
  Eigen::MatrixXd x_test = take(n_train, n_test, x);
  Eigen::VectorXd eps_y_test = take_vec(n_train, n_test, eps_y);

  std::vector<bool> flipped(static_cast<size_t>(n_test), false);
  Eigen::MatrixXd b_cf = b_test;
  for (Eigen::Index i = 0; i < n_test; ++i) {
    if (params.per_column_flips) {
      for (int j = 0; j < params.p_b; ++j)
        if (unif(rng) < params.cf_fraction) {
          b_cf(i, j) = 1.0 - b_cf(i, j);
          flipped[static_cast<size_t>(i)] = true;
        }
    } else if (unif(rng) < params.cf_fraction) {
      b_cf.row(i) = Eigen::RowVectorXd::Ones(params.p_b) - b_cf.row(i);
      flipped[static_cast<size_t>(i)] = true;
    }
  }

  Dataset test = assemble_cont_y(params, std::move(b_test), eps_a_test, x_test, eps_y_test);
  Dataset cf = assemble_cont_y(params, std::move(b_cf), eps_a_test, x_test, eps_y_test);
  return ContYData{std::move(train), CounterfactualPair{std::move(test), std::move(cf),
                                                        std::move(flipped)}};
}

}  // namespace orthobias
