#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include <Eigen/Eigenvalues>

#include "ahfsr/admm_solver.hpp"
#include "ahfsr/ahf_dictionary.hpp"
#include "ahfsr/errors.hpp"

using namespace ahfsr;

namespace {

struct Dicts {
  Dictionary psi1;
  Dictionary psi2;
};

const Dicts& patch_dicts() {
  static const Dicts d{build_dictionary(AhfBasisSpec::uniform(0.1, 12, 36), 6, 6),
                       build_dictionary(AhfBasisSpec::uniform(1e-4, 12, 36), 6, 6)};
  return d;
}

// Plain Gaussian elimination with partial pivoting in long double.
Eigen::VectorXd eliminate(const Eigen::MatrixXd& a, const Eigen::VectorXd& rhs) {
  const int n = static_cast<int>(a.rows());
  std::vector<std::vector<long double>> m(n, std::vector<long double>(n + 1));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m[i][j] = a(i, j);
    m[i][n] = rhs[i];
  }
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i) {
      if (std::fabs(m[i][k]) > std::fabs(m[piv][k])) piv = i;
    }
    std::swap(m[k], m[piv]);
    for (int i = k + 1; i < n; ++i) {
      const long double f = m[i][k] / m[k][k];
      if (f == 0) continue;
      for (int j = k; j <= n; ++j) m[i][j] -= f * m[k][j];
    }
  }
  Eigen::VectorXd x(n);
  for (int i = n - 1; i >= 0; --i) {
    long double acc = m[i][n];
    for (int j = i + 1; j < n; ++j) acc -= m[i][j] * x[j];
    x[i] = static_cast<double>(acc / m[i][i]);
  }
  return x;
}

// Accelerated proximal gradient with restart on the model objective.
Eigen::VectorXd proximal_gradient(const Eigen::MatrixXd& psi, const Eigen::VectorXd& L,
                                  double lambda1, double lambda2, double tol) {
  const Eigen::Index n = psi.cols(), m = n / 2;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(psi * psi.transpose(),
                                                    Eigen::EigenvaluesOnly);
  const double lip = 2.0 * (es.eigenvalues().maxCoeff() + lambda1);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n), y = x, prev = x, grad(n);
  double t = 1.0;
  for (long k = 0; k < 5'000'000; ++k) {
    grad.noalias() = 2.0 * psi.transpose() * (psi * y - L);
    grad.head(m) += 2.0 * lambda1 * y.head(m);
    prev = x;
    x = y - grad / lip;
    for (Eigen::Index i = m; i < n; ++i) x[i] = soft_threshold(x[i], lambda2 / lip);
    double t_next = (1.0 + std::sqrt(1.0 + 4.0 * t * t)) / 2.0;
    if ((y - x).dot(x - prev) > 0.0) {
      t_next = 1.0;
      y = x;
    } else {
      y = x + ((t - 1.0) / t_next) * (x - prev);
    }
    t = t_next;
    if ((x - prev).norm() <= tol * std::max(1.0, x.norm())) break;
  }
  return x;
}

}  // namespace

TEST_SUITE("admm_solver") {

TEST_CASE("soft_threshold closed-form cases") {
  CHECK(soft_threshold(3.0, 1.0) == 2.0);
  CHECK(soft_threshold(-3.0, 1.0) == -2.0);
  CHECK(soft_threshold(0.5, 1.0) == 0.0);
  CHECK(soft_threshold(-1.0, 1.0) == 0.0);
  CHECK(soft_threshold(1.0, 1.0) == 0.0);
  CHECK(soft_threshold(0.25, 0.0) == 0.25);
  CHECK_FALSE(std::signbit(soft_threshold(-0.5, 1.0)));
}

TEST_CASE("soft_threshold matches a grid-searched prox") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ua(-3.0, 3.0), uk(0.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double a = ua(rng), k = uk(rng);
    double best_u = 0.0, best = std::numeric_limits<double>::infinity();
    const double lim = std::abs(a) + 1.0;
    for (double u = -lim; u <= lim; u += 1e-4) {
      const double f = k * std::abs(u) + 0.5 * (u - a) * (u - a);
      if (f < best) best = f, best_u = u;
    }
    CHECK(std::abs(soft_threshold(a, k) - best_u) <= 1e-4);
  }
}

TEST_CASE("normal matrix under defaults is symmetric positive definite") {
  const Dicts& d = patch_dicts();
  const NormalMatrix nm = build_normal_matrix(d.psi1, d.psi2, SolverConfig{});
  const Eigen::MatrixXd k = nm.matrix();
  REQUIRE(k.rows() == 864);
  CHECK((k - k.transpose()).cwiseAbs().maxCoeff() == 0.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(k, Eigen::EigenvaluesOnly);
  CHECK(eig.eigenvalues().minCoeff() > 0.0);
  // The penalty terms bound the spectrum from below.
  CHECK(eig.eigenvalues().minCoeff() >= 0.5 * std::min(1e-2, 1e-4 / 2.0));
}

TEST_CASE("normal matrix blocks") {
  const Dicts& d = patch_dicts();
  SolverConfig cfg;
  const NormalMatrix nm = build_normal_matrix(d.psi1, d.psi2, cfg);
  const Eigen::MatrixXd k = nm.matrix();
  const Eigen::MatrixXd g11 = d.psi1.values.transpose() * d.psi1.values;
  const Eigen::MatrixXd g22 = d.psi2.values.transpose() * d.psi2.values;
  const Eigen::MatrixXd g12 = d.psi1.values.transpose() * d.psi2.values;
  CHECK((k.topLeftCorner(432, 432) - g11 - cfg.lambda1 * Eigen::MatrixXd::Identity(432, 432))
            .cwiseAbs()
            .maxCoeff() < 1e-10);
  CHECK((k.bottomRightCorner(432, 432) - g22 -
         cfg.rho / 2 * Eigen::MatrixXd::Identity(432, 432))
            .cwiseAbs()
            .maxCoeff() < 1e-10);
  CHECK((k.topRightCorner(432, 432) - g12).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("non-positive penalties are rejected as singular") {
  const Dicts& d = patch_dicts();
  SolverConfig cfg;
  cfg.lambda1 = 0.0;
  CHECK_THROWS_AS(build_normal_matrix(d.psi1, d.psi2, cfg), SingularSystem);
  cfg = SolverConfig{};
  cfg.rho = -1.0;
  CHECK_THROWS_AS(build_normal_matrix(d.psi1, d.psi2, cfg), SingularSystem);
}

TEST_CASE("solve_beta agrees with long double elimination") {
  const Dicts& d = patch_dicts();
  const NormalMatrix nm = build_normal_matrix(d.psi1, d.psi2, SolverConfig{});
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0), sym(-1e-3, 1e-3);
  Eigen::VectorXd L(36), u(432), b(432);
  for (auto& v : L) v = unit(rng);
  for (auto& v : u) v = sym(rng);
  for (auto& v : b) v = sym(rng);

  const Eigen::VectorXd beta = solve_beta(nm, L, u, b);
  Eigen::VectorXd rhs(864);
  rhs << d.psi1.values.transpose() * L, d.psi2.values.transpose() * L + 0.5e-4 * (u + b);
  const Eigen::VectorXd ref = eliminate(nm.matrix(), rhs);
  CHECK((beta - ref).norm() / ref.norm() <= 1e-8);
  CHECK((nm.matrix() * beta - rhs).norm() / rhs.norm() <= 1e-10);
}

TEST_CASE("zero input yields zero coefficients") {
  const Dicts& d = patch_dicts();
  const SolverConfig cfg;
  const NormalMatrix nm = build_normal_matrix(d.psi1, d.psi2, cfg);
  const AdmmResult r = admm_solve(Eigen::VectorXd::Zero(36), nm, cfg);
  CHECK(r.beta1.cwiseAbs().maxCoeff() == 0.0);
  CHECK(r.beta2.cwiseAbs().maxCoeff() == 0.0);
  CHECK(r.state.converged);
}

TEST_CASE("a smooth atom is fitted as well as by the reference solver") {
  const Dicts& d = patch_dicts();
  const SolverConfig cfg;
  const NormalMatrix nm = build_normal_matrix(d.psi1, d.psi2, cfg);
  const Eigen::VectorXd L = d.psi1.values.col(0);
  const AdmmResult r = admm_solve(L, nm, cfg);
  const Eigen::VectorXd ref = proximal_gradient(nm.psi(), L, cfg.lambda1, cfg.lambda2, 1e-10);
  const double ours = (L - d.psi1.values * r.beta1 - d.psi2.values * r.beta2).norm();
  const double best = (L - nm.psi() * ref).norm();
  CHECK(ours <= best + 1e-6);
}

TEST_CASE("final iterate satisfies the shrinkage fixed point") {
  const Dicts& d = patch_dicts();
  SolverConfig cfg;
  cfg.lambda2 = 1e-5;
  cfg.rho = 1e-3;
  const NormalMatrix nm = build_normal_matrix(d.psi1, d.psi2, cfg);
  Eigen::VectorXd L(36);
  for (int i = 0; i < 36; ++i) L[i] = (i % 6) < 3 ? 0.2 : 0.8;
  const AdmmResult r = admm_solve(L, nm, cfg);
  const double kappa = cfg.lambda2 / cfg.rho;
  for (Eigen::Index i = 0; i < 432; ++i) {
    CHECK(r.state.u[i] ==
          doctest::Approx(soft_threshold(r.state.u[i] - r.state.b[i], kappa)).epsilon(1e-9));
  }
  CHECK(r.state.iteration >= 1);
  CHECK(r.state.iteration <= cfg.max_iters);
}

TEST_CASE("batch solve matches single solves") {
  const Dicts& d = patch_dicts();
  const SolverConfig cfg;
  const NormalMatrix nm = build_normal_matrix(d.psi1, d.psi2, cfg);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Eigen::MatrixXd L(36, 4);
  for (Eigen::Index i = 0; i < L.size(); ++i) L.data()[i] = unit(rng);
  const std::vector<AdmmResult> batch = admm_solve_batch(L, nm, cfg);
  REQUIRE(batch.size() == 4);
  for (int p = 0; p < 4; ++p) {
    const AdmmResult one = admm_solve(L.col(p), nm, cfg);
    CHECK(one.state.iteration == batch[p].state.iteration);
    CHECK((one.beta1 - batch[p].beta1).norm() <= 1e-6 * (1 + one.beta1.norm()));
    CHECK((one.beta2 - batch[p].beta2).norm() <= 1e-6 * (1 + one.beta2.norm()));
  }
}

TEST_CASE("invalid inputs") {
  const Dicts& d = patch_dicts();
  SolverConfig cfg;
  const NormalMatrix nm = build_normal_matrix(d.psi1, d.psi2, cfg);
  CHECK_THROWS_AS(admm_solve(Eigen::VectorXd::Zero(35), nm, cfg), ShapeError);

  SolverConfig other = cfg;
  other.rho = 1.0;
  CHECK_THROWS_AS(admm_solve(Eigen::VectorXd::Zero(36), nm, other), InvalidParameter);

  SolverConfig bad = cfg;
  bad.max_iters = 0;
  CHECK_THROWS_AS(bad.validate(), InvalidParameter);
  bad = cfg;
  bad.lambda2 = -1.0;
  CHECK_THROWS_AS(bad.validate(), InvalidParameter);

  Eigen::VectorXd L = Eigen::VectorXd::Constant(36, 0.5);
  L[4] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(admm_solve(L, nm, cfg), DivergenceError);
}

TEST_CASE("model_objective evaluates the three terms") {
  Eigen::MatrixXd psi(2, 4);
  psi << 1, 0, 1, 0,
         0, 1, 0, 1;
  Eigen::VectorXd L(2), b1(2), b2(2);
  L << 1, 2;
  b1 << 0.5, 0.5;
  b2 << -1, 1;
  // fit = (1 - 0.5 + 1, 2 - 0.5 - 1) = (1.5, 0.5)
  CHECK(model_objective(L, psi, b1, b2, 0.1, 0.2) == doctest::Approx(2.5 + 0.05 + 0.4));
}

}
