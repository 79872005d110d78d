#pragma once

#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "ahfsr/ahf_dictionary.hpp"

namespace ahfsr {

// Solver for the two-class coefficient model
//
//   min  ||L - Psi1 b1 - Psi2 b2||^2 + lambda1 ||b1||^2 + lambda2 ||b2||_1
//
// by ADMM with the splitting u = b2. The stacked coefficient vector is
// beta = (b1, b2) of length 2m; A selects b1 and B selects b2.

struct SolverConfig {
  double lambda1 = 1e-2;  // ridge weight on the smooth class
  double lambda2 = 1e-6;  // L1 weight on the edge class
  double rho = 1e-4;      // augmented Lagrangian weight
  int max_iters = 100;
  /// Stop once ||u - B beta||_2 <= primal_tol * sqrt(m).
  double primal_tol = 1e-6;

  void validate() const;
};

using CoefficientVector = Eigen::VectorXd;

struct SolverState {
  CoefficientVector beta;  // stacked (b1, b2), length 2m
  Eigen::VectorXd u;       // split copy of b2 after shrinkage
  Eigen::VectorXd b;       // scaled multiplier
  int iteration = 0;
  double primal_residual = 0.0;  // ||u - B beta||_2
  bool converged = false;        // false when the iteration budget ran out
};

struct AdmmResult {
  CoefficientVector beta1;
  CoefficientVector beta2;
  SolverState state;
};

/// Cholesky factorization of K = Psi^T Psi + lambda1 A^T A + (rho/2) B^T B
/// for Psi = (Psi1, Psi2).
///
/// K depends only on the dictionaries and (lambda1, rho), so one instance is
/// shared read-only by every patch and every iteration.
class NormalMatrix {
 public:
  NormalMatrix(const Dictionary& psi1, const Dictionary& psi2,
               const SolverConfig& config);

  Eigen::Index atoms() const noexcept { return atoms_; }    // m
  Eigen::Index pixels() const noexcept { return psi_.rows(); }  // n
  double lambda1() const noexcept { return lambda1_; }
  double rho() const noexcept { return rho_; }

  /// Combined dictionary (Psi1, Psi2), n x 2m.
  const Eigen::MatrixXd& psi() const noexcept { return psi_; }
  /// Assembles K explicitly; intended for tests and diagnostics.
  Eigen::MatrixXd matrix() const;

  /// K^{-1} rhs, column by column.
  Eigen::MatrixXd solve(const Eigen::MatrixXd& rhs) const;

 private:
  Eigen::Index atoms_;
  double lambda1_;
  double rho_;
  Eigen::MatrixXd psi_;
  Eigen::LLT<Eigen::MatrixXd> llt_;
};

/// Throws SingularSystem when lambda1 or rho is not positive or the
/// factorization fails.
NormalMatrix build_normal_matrix(const Dictionary& psi1, const Dictionary& psi2,
                                 const SolverConfig& config);

/// sign(a) * max(|a| - kappa, 0), the proximal map of kappa |.|.
double soft_threshold(double a, double kappa);

/// beta = K^{-1} r with r = Psi^T L + (rho/2) B^T (u + b).
CoefficientVector solve_beta(const NormalMatrix& normal, const Eigen::VectorXd& L,
                             const Eigen::VectorXd& u, const Eigen::VectorXd& b);

/// Column-wise batch form: column p of the result solves for column p of
/// L, u and b.
Eigen::MatrixXd solve_beta(const NormalMatrix& normal, const Eigen::MatrixXd& L,
                           const Eigen::MatrixXd& u, const Eigen::MatrixXd& b);

/// ADMM from beta = u = b = 0: beta-step by solve_beta, u-step by
/// soft thresholding with kappa = lambda2 / rho, then b += u - B beta.
///
/// `config.lambda1` and `config.rho` must match the ones `normal` was built
/// with. Throws DivergenceError on non-finite iterates.
AdmmResult admm_solve(const Eigen::VectorXd& L, const NormalMatrix& normal,
                      const SolverConfig& config);

/// Runs one independent ADMM per column of L in lockstep. Each column stops
/// updating once it meets the stopping rule, so results match admm_solve on
/// that column up to floating-point summation order.
std::vector<AdmmResult> admm_solve_batch(const Eigen::MatrixXd& L,
                                         const NormalMatrix& normal,
                                         const SolverConfig& config);

/// Value of the model objective at (beta1, beta2).
double model_objective(const Eigen::VectorXd& L, const Eigen::MatrixXd& psi,
                       const CoefficientVector& beta1,
                       const CoefficientVector& beta2, double lambda1,
                       double lambda2);

}  // namespace ahfsr
