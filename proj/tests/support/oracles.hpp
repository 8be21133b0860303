#pragma once

// Independent reference implementations used only by the test suites. These
// deliberately avoid the library's linear-algebra backend: plain row-major
// buffers and textbook algorithms, so they can disagree with the production
// code when it is wrong.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <stdexcept>
#include <vector>

namespace oracle {

struct Mat {
  std::size_t rows = 0, cols = 0;
  std::vector<double> v;  // row-major

  Mat() = default;
  Mat(std::size_t r, std::size_t c) : rows(r), cols(c), v(r * c, 0.0) {}
  double& operator()(std::size_t i, std::size_t j) { return v[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return v[i * cols + j]; }
};

inline Mat matmul(const Mat& a, const Mat& b) {
  Mat out(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = 0; k < a.cols; ++k) {
      double aik = a(i, k);
      for (std::size_t j = 0; j < b.cols; ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

inline Mat transpose(const Mat& a) {
  Mat out(a.cols, a.rows);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j) out(j, i) = a(i, j);
  return out;
}

inline double fro_norm(const Mat& a) {
  double s = 0.0;
  for (double x : a.v) s += x * x;
  return std::sqrt(s);
}

// Cyclic Jacobi eigen-decomposition of a symmetric matrix; returns
// eigenvalues sorted nonincreasing.
inline std::vector<double> jacobi_eigenvalues(Mat s, int sweeps = 100) {
  const std::size_t m = s.rows;
  for (int sweep = 0; sweep < sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < m; ++p)
      for (std::size_t q = p + 1; q < m; ++q) off += s(p, q) * s(p, q);
    if (off < 1e-28) break;
    for (std::size_t p = 0; p < m; ++p) {
      for (std::size_t q = p + 1; q < m; ++q) {
        if (std::abs(s(p, q)) < 1e-30) continue;
        double theta = 0.5 * std::atan2(2.0 * s(p, q), s(q, q) - s(p, p));
        double c = std::cos(theta), sn = std::sin(theta);
        for (std::size_t k = 0; k < m; ++k) {
          double skp = s(k, p), skq = s(k, q);
          s(k, p) = c * skp - sn * skq;
          s(k, q) = sn * skp + c * skq;
        }
        for (std::size_t k = 0; k < m; ++k) {
          double spk = s(p, k), sqk = s(q, k);
          s(p, k) = c * spk - sn * sqk;
          s(q, k) = sn * spk + c * sqk;
        }
      }
    }
  }
  std::vector<double> eig(m);
  for (std::size_t i = 0; i < m; ++i) eig[i] = s(i, i);
  std::sort(eig.begin(), eig.end(), std::greater<>());
  return eig;
}

// Singular values of a general matrix via the eigenvalues of M'M.
inline std::vector<double> singular_values_via_gram(const Mat& m) {
  Mat gram = matmul(transpose(m), m);
  std::vector<double> eig = jacobi_eigenvalues(gram);
  for (double& e : eig) e = std::sqrt(std::max(0.0, e));
  return eig;
}

// 2-unknown least squares through the normal equations, solved by Cramer's
// rule.
inline std::pair<double, double> normal_equations_2x2(const Mat& x, const std::vector<double>& y) {
  if (x.cols != 2) throw std::logic_error("expects two columns");
  double a11 = 0, a12 = 0, a22 = 0, b1 = 0, b2 = 0;
  for (std::size_t i = 0; i < x.rows; ++i) {
    a11 += x(i, 0) * x(i, 0);
    a12 += x(i, 0) * x(i, 1);
    a22 += x(i, 1) * x(i, 1);
    b1 += x(i, 0) * y[i];
    b2 += x(i, 1) * y[i];
  }
  double det = a11 * a22 - a12 * a12;
  return {(b1 * a22 - b2 * a12) / det, (a11 * b2 - a12 * b1) / det};
}

/*
 Brute-force solver for the constrained factorization

   min ||A - S U'||_F  s.t.  U orthonormal (q x k),  S'b = 0,

 with a single sensitive vector b. U is parametrized as the first k columns
 of a product of Givens rotations over all q(q-1)/2 planes; a dense grid over
 the angles is followed by cyclic coordinate shrinking around the best point.
 S given U is solved per column by projecting A U off b.
*/
class ObGridOracle {
 public:
  ObGridOracle(Mat a, std::vector<double> b, std::size_t k)
      : a_(std::move(a)), b_(std::move(b)), k_(k), q_(a_.cols) {
    bb_ = 0.0;
    for (double x : b_) bb_ += x * x;
    n_angles_ = q_ * (q_ - 1) / 2;
  }

  double objective(const std::vector<double>& angles) const {
    Mat u = basis(angles);
    Mat au = matmul(a_, u);
    // project each score column off b
    for (std::size_t j = 0; j < k_; ++j) {
      double bv = 0.0;
      for (std::size_t i = 0; i < a_.rows; ++i) bv += b_[i] * au(i, j);
      double coef = bv / bb_;
      for (std::size_t i = 0; i < a_.rows; ++i) au(i, j) -= coef * b_[i];
    }
    Mat recon = matmul(au, transpose(u));
    double s = 0.0;
    for (std::size_t i = 0; i < a_.rows; ++i)
      for (std::size_t j = 0; j < q_; ++j) {
        double d = a_(i, j) - recon(i, j);
        s += d * d;
      }
    return std::sqrt(s);
  }

  // Returns the best Frobenius error found.
  double minimize(int grid_per_angle = 10, int shrink_rounds = 60) const {
    const double pi = 3.14159265358979323846;
    std::vector<double> best(n_angles_, 0.0);
    double best_val = objective(best);

    // dense grid
    std::vector<int> idx(n_angles_, 0);
    while (true) {
      std::vector<double> angles(n_angles_);
      for (std::size_t t = 0; t < n_angles_; ++t)
        angles[t] = -pi + (2.0 * pi) * (idx[t] + 0.5) / grid_per_angle;
      double val = objective(angles);
      if (val < best_val) {
        best_val = val;
        best = angles;
      }
      std::size_t t = 0;
      while (t < n_angles_ && ++idx[t] == grid_per_angle) idx[t++] = 0;
      if (t == n_angles_) break;
    }

    // cyclic coordinate shrink around the best grid point
    double range = 2.0 * pi / grid_per_angle;
    for (int round = 0; round < shrink_rounds; ++round) {
      for (std::size_t t = 0; t < n_angles_; ++t) {
        double center = best[t];
        for (int s = -8; s <= 8; ++s) {
          std::vector<double> cand = best;
          cand[t] = center + range * s / 8.0;
          double val = objective(cand);
          if (val < best_val) {
            best_val = val;
            best = cand;
          }
        }
      }
      range *= 0.5;
      if (range < 1e-12) break;
    }
    return best_val;
  }

 private:
  Mat basis(const std::vector<double>& angles) const {
    // identity
    Mat r(q_, q_);
    for (std::size_t i = 0; i < q_; ++i) r(i, i) = 1.0;
    std::size_t t = 0;
    for (std::size_t i = 0; i < q_; ++i) {
      for (std::size_t j = i + 1; j < q_; ++j, ++t) {
        double c = std::cos(angles[t]), s = std::sin(angles[t]);
        for (std::size_t row = 0; row < q_; ++row) {
          double ri = r(row, i), rj = r(row, j);
          r(row, i) = c * ri - s * rj;
          r(row, j) = s * ri + c * rj;
        }
      }
    }
    Mat u(q_, k_);
    for (std::size_t row = 0; row < q_; ++row)
      for (std::size_t col = 0; col < k_; ++col) u(row, col) = r(row, col);
    return u;
  }

  Mat a_;
  std::vector<double> b_;
  std::size_t k_, q_;
  double bb_ = 0.0;
  std::size_t n_angles_ = 0;
};

// Standardize columns in place (sample convention), for building small test
// instances without touching the library.
inline void standardize_cols(Mat& m) {
  for (std::size_t j = 0; j < m.cols; ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < m.rows; ++i) mean += m(i, j);
    mean /= static_cast<double>(m.rows);
    double ss = 0.0;
    for (std::size_t i = 0; i < m.rows; ++i) ss += (m(i, j) - mean) * (m(i, j) - mean);
    double sd = std::sqrt(ss / static_cast<double>(m.rows - 1));
    for (std::size_t i = 0; i < m.rows; ++i) m(i, j) = (m(i, j) - mean) / sd;
  }
}

inline Mat random_standardized(std::size_t n, std::size_t q, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat m(n, q);
  for (double& x : m.v) x = gauss(rng);
  standardize_cols(m);
  return m;
}

}  // namespace oracle
