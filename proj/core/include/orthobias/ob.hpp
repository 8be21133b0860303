#pragma once

#include "orthobias/matrix.hpp"

namespace orthobias {

struct ObConfig {
  int k = 0;  // target rank; 0 means "full", i.e. the column count of A
  double center_check_tol = 1e-8;
};

/*
 Result of the orthogonal-to-bias factorization A ~ S U^T with S'B = 0.
 multipliers holds one row per basis vector: row j are the least-squares
 coefficients of A u_j on the sensitive columns, so

   S = A U - B multipliers^T.

 That identity is what extends the transform to rows outside the fitted
 sample. recon_error is ||A - S U^T||_F (unsquared); svd_error is the same
 quantity for the unconstrained rank-k SVD of A.
*/
struct FactorPair {
  Eigen::MatrixXd scores;       // S, n x k
  Eigen::MatrixXd basis;        // U, q x k, orthonormal columns
  Eigen::MatrixXd multipliers;  // k x p
  double recon_error = 0.0;
  double svd_error = 0.0;
};

/*
 Fits the minimal-change rank-k factorization of A subject to exact
 orthogonality between S and every column of B. Both inputs must be
 standardized (column means within center_check_tol of zero); orthogonality
 of centered columns is what makes the result uncorrelated with B.

 The basis is taken from the right singular vectors of the B-orthogonalized
 matrix (I - B(B'B)^-1 B')A, which attains the global optimum of the
 constrained problem; scores follow the per-row rule
 s_ij = <a_i, u_j> - <b_i, lambda_j>.
*/
FactorPair fit_ob(const DataMatrix& a, const DataMatrix& b, const ObConfig& cfg);

// Reconstructs the processed matrix S U^T with A's column names.
DataMatrix transform(const DataMatrix& a, const FactorPair& fp);

// Applies a fitted factorization to new rows: (A_new U - B_new L^T) U^T.
DataMatrix transform_new_data(const DataMatrix& a_new, const DataMatrix& b_new,
                              const FactorPair& fp);

/*
 Reports two quantities for a univariate sensitive vector: the printed
 collinearity bound ||k P V_k D_k||_F with [P]_ij = 1/n + b_i b_j / sum b^2,
 and the directly measured gap recon_error - svd_error. No relation between
 the two is asserted; callers compare them.
*/
struct LemmaGapDiagnostic {
  double lemma_value = 0.0;
  double direct_gap = 0.0;
};
LemmaGapDiagnostic lemma_gap_diagnostic(const DataMatrix& a, const DataMatrix& b, int k);

}  // namespace orthobias
