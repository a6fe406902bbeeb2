#include "wgband/eigensolve.hpp"

#include <cmath>
#include <random>

#include <Eigen/SparseCholesky>

namespace wgband {

namespace {

using SpMatR = Eigen::SparseMatrix<double>;
using SpMatC = Eigen::SparseMatrix<Complex>;

// Real 2N embedding of a Hermitian complex matrix; symmetric by construction.
SpMatR embed(const SpMatC& A) {
  const int n = static_cast<int>(A.rows());
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(4 * A.nonZeros());
  for (int k = 0; k < A.outerSize(); ++k)
    for (SpMatC::InnerIterator it(A, k); it; ++it) {
      const int i = static_cast<int>(it.row());
      const int j = static_cast<int>(it.col());
      const double re = it.value().real();
      const double im = it.value().imag();
      t.emplace_back(i, j, re);
      t.emplace_back(i + n, j + n, re);
      if (im != 0.0) {
        t.emplace_back(i, j + n, -im);
        t.emplace_back(i + n, j, im);
      }
    }
  SpMatR B(2 * n, 2 * n);
  B.setFromTriplets(t.begin(), t.end());
  return B;
}

}  // namespace

EigenResult solve_lowest(const HermitianPencil& pencil, const EigenOptions& opts) {
  const int n = pencil.free_count();
  if (opts.k < 1) throw ConfigError("eigenpair count must be positive");
  if (opts.k > n)
    throw ConfigError("requested " + std::to_string(opts.k) +
                      " eigenpairs but the pencil has only " + std::to_string(n) +
                      " free dofs");

  const bool embedded = !pencil.real_valued;
  SpMatC Kc, Mc;  // kept for the final complex residuals on the embedded path
  SpMatR A, B;
  if (embedded) {
    Kc = pencil.free_K();
    Mc = pencil.free_M();
    A = embed(Kc);
    B = embed(Mc);
  } else {
    A = pencil.free_K_real();
    B = pencil.free_M_real();
  }

  const int N = static_cast<int>(A.rows());
  const int want = std::min(N, embedded ? 2 * opts.k : opts.k);
  const int m = std::min(N, want + (embedded ? 10 : 8));

  SpMatR S = A;
  if (opts.sigma != 0.0) S = A - opts.sigma * B;
  Eigen::SimplicialLDLT<SpMatR> ldlt(S);
  if (ldlt.info() != Eigen::Success)
    throw SolverError("eigensolver: factorization failed (numerical breakdown)");
  if (!(ldlt.vectorD().array() > 0.0).all())
    throw SolverError("eigensolver: pencil is not positive definite at the shift");

  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> dist;
  Eigen::MatrixXd X(N, m);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < N; ++i) X(i, j) = dist(rng);

  Eigen::VectorXd theta;
  Eigen::MatrixXd V;
  bool converged = false;
  int used_iterations = 0;
  for (int it = 0; it < opts.max_iterations && !converged; ++it) {
    used_iterations = it + 1;
    Eigen::MatrixXd Y = ldlt.solve(B * X);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(Y);
    Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(N, m);

    const Eigen::MatrixXd AQ = A * Q;
    const Eigen::MatrixXd BQ = B * Q;
    Eigen::MatrixXd Ga = Q.transpose() * AQ;
    Eigen::MatrixXd Gb = Q.transpose() * BQ;
    Ga = 0.5 * (Ga + Ga.transpose()).eval();
    Gb = 0.5 * (Gb + Gb.transpose()).eval();
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> rr(Ga, Gb);
    if (rr.info() != Eigen::Success)
      throw SolverError("eigensolver: Rayleigh-Ritz extraction failed");
    theta = rr.eigenvalues();
    V = Q * rr.eigenvectors();  // B-orthonormal columns

    const Eigen::MatrixXd C = rr.eigenvectors().leftCols(want);
    const Eigen::MatrixXd AV = AQ * C;
    const Eigen::MatrixXd BV = BQ * C;
    converged = true;
    for (int i = 0; i < want && converged; ++i) {
      const double rnorm = (AV.col(i) - theta[i] * BV.col(i)).norm();
      if (!(rnorm <= opts.tol * AV.col(i).norm())) converged = false;
    }
    X = V;
  }
  if (!converged)
    throw SolverError("eigensolver did not converge within " +
                      std::to_string(opts.max_iterations) + " iterations");

  EigenResult result;
  result.iterations = used_iterations;
  result.values.resize(opts.k);
  result.residuals.resize(opts.k);

  if (!embedded) {
    const SpMatC KcR = pencil.free_K();
    const SpMatC McR = pencil.free_M();
    for (int i = 0; i < opts.k; ++i) {
      Eigen::VectorXcd u = V.col(i).cast<Complex>();
      result.values[i] = theta[i];
      const Eigen::VectorXcd Ku = KcR * u;
      const Eigen::VectorXcd Mu = McR * u;
      result.residuals[i] = (Ku - theta[i] * Mu).norm() / Ku.norm();
      result.vectors.push_back(std::move(u));
    }
    return result;
  }

  // Merge the two embedded copies of each complex pair: map each Ritz vector
  // back to C^n, M-orthogonalize against everything accepted so far, and keep
  // it only if an independent direction remains. Exact duplicates leave a
  // residue at roundoff scale; inside a degenerate cluster any surviving
  // direction is itself an eigenvector of that cluster.
  int taken = 0;
  for (int i = 0; i < m && taken < opts.k; ++i) {
    Eigen::VectorXcd u = V.col(i).head(n) + Complex(0, 1) * V.col(i).tail(n);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& w : result.vectors) {
        const Complex c = w.adjoint() * (Mc * u);
        u -= c * w;
      }
    const double nn = std::real(Complex(u.adjoint() * (Mc * u)));
    if (nn < 1e-4) continue;
    u /= std::sqrt(nn);
    const Eigen::VectorXcd Ku = Kc * u;
    const Eigen::VectorXcd Mu = Mc * u;
    result.values[taken] = theta[i];
    result.residuals[taken] = (Ku - theta[i] * Mu).norm() / Ku.norm();
    result.vectors.push_back(std::move(u));
    ++taken;
  }
  if (taken < opts.k)
    throw SolverError("eigensolver: failed to separate the embedded eigenpair copies");
  return result;
}

}  // namespace wgband
