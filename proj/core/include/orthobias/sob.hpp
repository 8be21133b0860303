#pragma once

#include <cstdint>
#include <vector>

#include "orthobias/matrix.hpp"

namespace orthobias {

struct SobConfig {
  int k = 1;
  double h = 1.0;           // l1 budget per basis vector, >= 1
  double eta = 1e-6;        // minimum change to terminate
  int max_iters = 500;
  std::uint64_t seed = 0;   // basis initialization
};

/*
 Sparse factorization A ~ S_hat U_hat^T built one component at a time.
 Column i of scores is d_i * s_i with unit s_i orthogonal to B and to every
 earlier s_l; column i of basis is the unit, l1-bounded u_i. Components that
 hit max_iters are returned with converged[i] = false rather than thrown.
*/
struct SobResult {
  Eigen::MatrixXd scores;  // n x k, columns d_i s_i
  Eigen::MatrixXd basis;   // q x k
  Eigen::VectorXd d;       // d_i = s_i' A u_i
  std::vector<int> iters;
  std::vector<bool> converged;
};

SobResult fit_sob(const DataMatrix& a, const DataMatrix& b, const SobConfig& cfg);

DataMatrix transform(const DataMatrix& a, const SobResult& res);

/*
 Smallest shrinkage theta such that the unit-normalized soft-thresholded v
 has l1 norm h; 0 when no shrinkage is needed. Found by bisection on
 theta in [0, max|v_j|).
*/
double select_theta(const Eigen::VectorXd& v, double h);

}  // namespace orthobias
