#include "ahfsr/admm_solver.hpp"

#include <cmath>
#include <string>

#include "ahfsr/errors.hpp"

namespace ahfsr {

void SolverConfig::validate() const {
  if (!(lambda1 >= 0.0)) throw InvalidParameter("lambda1 must be >= 0");
  if (!(lambda2 >= 0.0)) throw InvalidParameter("lambda2 must be >= 0");
  if (!(rho > 0.0)) throw InvalidParameter("rho must be > 0");
  if (!(primal_tol > 0.0)) throw InvalidParameter("primal_tol must be > 0");
  if (max_iters < 1) throw InvalidParameter("max_iters must be >= 1");
}

NormalMatrix::NormalMatrix(const Dictionary& psi1, const Dictionary& psi2,
                           const SolverConfig& config)
    : atoms_(psi1.atoms()), lambda1_(config.lambda1), rho_(config.rho) {
  if (psi1.pixels() != psi2.pixels()) {
    throw ShapeError("normal matrix: dictionaries have different row counts");
  }
  if (psi1.atoms() != psi2.atoms()) {
    throw ShapeError("normal matrix: both classes must have the same atom count");
  }
  if (!(config.lambda1 > 0.0) || !(config.rho > 0.0)) {
    throw SingularSystem("normal matrix needs lambda1 > 0 and rho > 0");
  }
  psi_.resize(psi1.pixels(), 2 * atoms_);
  psi_ << psi1.values, psi2.values;

  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(2 * atoms_, 2 * atoms_);
  k.selfadjointView<Eigen::Lower>().rankUpdate(psi_.transpose());
  k.diagonal().head(atoms_).array() += lambda1_;
  k.diagonal().tail(atoms_).array() += rho_ / 2.0;
  llt_.compute(k);
  if (llt_.info() != Eigen::Success) {
    throw SingularSystem("Cholesky factorization of the normal matrix failed");
  }
}

Eigen::MatrixXd NormalMatrix::matrix() const {
  Eigen::MatrixXd k = psi_.transpose() * psi_;
  k.diagonal().head(atoms_).array() += lambda1_;
  k.diagonal().tail(atoms_).array() += rho_ / 2.0;
  return k;
}

Eigen::MatrixXd NormalMatrix::solve(const Eigen::MatrixXd& rhs) const {
  if (rhs.rows() != 2 * atoms_) {
    throw ShapeError("normal solve: right-hand side has " +
                     std::to_string(rhs.rows()) + " rows, expected " +
                     std::to_string(2 * atoms_));
  }
  return llt_.solve(rhs);
}

NormalMatrix build_normal_matrix(const Dictionary& psi1, const Dictionary& psi2,
                                 const SolverConfig& config) {
  return NormalMatrix(psi1, psi2, config);
}

double soft_threshold(double a, double kappa) {
  const double mag = std::abs(a) - kappa;
  if (!(mag > 0.0)) return 0.0;
  return a > 0.0 ? mag : -mag;
}

Eigen::MatrixXd solve_beta(const NormalMatrix& normal, const Eigen::MatrixXd& L,
                           const Eigen::MatrixXd& u, const Eigen::MatrixXd& b) {
  const Eigen::Index m = normal.atoms();
  if (L.rows() != normal.pixels() || u.rows() != m || b.rows() != m ||
      u.cols() != L.cols() || b.cols() != L.cols()) {
    throw ShapeError("solve_beta: operand dimensions are inconsistent");
  }
  Eigen::MatrixXd r = normal.psi().transpose() * L;
  r.bottomRows(m) += (normal.rho() / 2.0) * (u + b);
  return normal.solve(r);
}

CoefficientVector solve_beta(const NormalMatrix& normal, const Eigen::VectorXd& L,
                             const Eigen::VectorXd& u, const Eigen::VectorXd& b) {
  return solve_beta(normal, Eigen::MatrixXd(L), Eigen::MatrixXd(u),
                    Eigen::MatrixXd(b))
      .col(0);
}

std::vector<AdmmResult> admm_solve_batch(const Eigen::MatrixXd& L,
                                         const NormalMatrix& normal,
                                         const SolverConfig& config) {
  config.validate();
  if (config.lambda1 != normal.lambda1() || config.rho != normal.rho()) {
    throw InvalidParameter("admm_solve: lambda1/rho differ from the normal matrix");
  }
  const Eigen::Index m = normal.atoms();
  const Eigen::Index count = L.cols();
  if (L.rows() != normal.pixels()) {
    throw ShapeError("admm_solve: input has " + std::to_string(L.rows()) +
                     " pixels, dictionaries have " +
                     std::to_string(normal.pixels()));
  }

  const double kappa = config.lambda2 / config.rho;
  const double tol = config.primal_tol * std::sqrt(static_cast<double>(m));
  const Eigen::MatrixXd psi_t_l = normal.psi().transpose() * L;

  std::vector<AdmmResult> out(count);
  for (AdmmResult& res : out) {
    res.state.beta = Eigen::VectorXd::Zero(2 * m);
    res.state.u = Eigen::VectorXd::Zero(m);
    res.state.b = Eigen::VectorXd::Zero(m);
  }

  Eigen::MatrixXd rhs(2 * m, count);
  Eigen::Index active = count;
  for (int it = 1; it <= config.max_iters && active > 0; ++it) {
    rhs = psi_t_l;
    for (Eigen::Index p = 0; p < count; ++p) {
      const SolverState& s = out[p].state;
      rhs.col(p).tail(m) += (config.rho / 2.0) * (s.u + s.b);
    }
    const Eigen::MatrixXd beta = normal.solve(rhs);

    for (Eigen::Index p = 0; p < count; ++p) {
      SolverState& s = out[p].state;
      if (s.converged) continue;
      s.beta = beta.col(p);
      const auto beta2 = s.beta.tail(m);
      for (Eigen::Index i = 0; i < m; ++i) {
        s.u[i] = soft_threshold(beta2[i] - s.b[i], kappa);
      }
      s.b += s.u - beta2;
      s.primal_residual = (s.u - beta2).norm();
      s.iteration = it;
      if (!std::isfinite(s.primal_residual) || !s.beta.allFinite()) {
        throw DivergenceError(
            "admm_solve: non-finite iterate at iteration " + std::to_string(it),
            it, static_cast<long>(p));
      }
      if (s.primal_residual <= tol) {
        s.converged = true;
        --active;
      }
    }
  }

  for (AdmmResult& res : out) {
    res.beta1 = res.state.beta.head(m);
    res.beta2 = res.state.beta.tail(m);
  }
  return out;
}

AdmmResult admm_solve(const Eigen::VectorXd& L, const NormalMatrix& normal,
                      const SolverConfig& config) {
  return std::move(admm_solve_batch(Eigen::MatrixXd(L), normal, config).front());
}

double model_objective(const Eigen::VectorXd& L, const Eigen::MatrixXd& psi,
                       const CoefficientVector& beta1,
                       const CoefficientVector& beta2, double lambda1,
                       double lambda2) {
  const Eigen::Index m = beta1.size();
  if (psi.rows() != L.size() || psi.cols() != m + beta2.size()) {
    throw ShapeError("model_objective: dimensions are inconsistent");
  }
  const Eigen::VectorXd fit =
      L - psi.leftCols(m) * beta1 - psi.rightCols(beta2.size()) * beta2;
  return fit.squaredNorm() + lambda1 * beta1.squaredNorm() +
         lambda2 * beta2.lpNorm<1>();
}

}  // namespace ahfsr
