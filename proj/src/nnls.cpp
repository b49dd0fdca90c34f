#include "levylab/nnls.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/QR>

namespace levylab {

namespace {

// Least squares on the passive columns; falls back to a rank-revealing
// factorization of A_P when the Gram block is not numerically positive definite.
Eigen::VectorXd solve_passive(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::MatrixXd& gram,
                              const Eigen::VectorXd& atb, const std::vector<int>& passive) {
  const auto k = static_cast<Eigen::Index>(passive.size());
  Eigen::MatrixXd block(k, k);
  Eigen::VectorXd rhs(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    rhs[i] = atb[passive[i]];
    for (Eigen::Index j = 0; j < k; ++j) block(i, j) = gram(passive[i], passive[j]);
  }
  Eigen::LLT<Eigen::MatrixXd> llt(block);
  if (llt.info() == Eigen::Success) {
    Eigen::VectorXd z = llt.solve(rhs);
    if (z.allFinite()) return z;
  }
  Eigen::MatrixXd columns(A.rows(), k);
  for (Eigen::Index i = 0; i < k; ++i) columns.col(i) = A.col(passive[i]);
  return columns.completeOrthogonalDecomposition().solve(b);
}

}  // namespace

NnlsResult solve_nnls(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const NnlsOptions& options) {
  if (A.rows() != b.size()) throw std::invalid_argument("solve_nnls: A and b disagree in row count");
  if (!A.allFinite() || !b.allFinite()) throw std::invalid_argument("solve_nnls: non-finite input");

  const Eigen::Index n = A.cols();
  const int cap = options.max_iterations > 0 ? options.max_iterations : static_cast<int>(10 * n);

  const Eigen::MatrixXd gram = A.transpose() * A;
  const Eigen::VectorXd atb = A.transpose() * b;
  const double dual_floor = options.dual_tol * (atb.size() > 0 ? atb.cwiseAbs().maxCoeff() : 0.0);

  NnlsResult result;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  std::vector<int> passive;
  std::vector<char> in_passive(static_cast<std::size_t>(n), 0);
  std::vector<char> blocked(static_cast<std::size_t>(n), 0);
  Eigen::VectorXd dual = atb;

  while (true) {
    Eigen::Index entering = -1;
    double best = dual_floor;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!in_passive[j] && !blocked[j] && dual[j] > best) {
        best = dual[j];
        entering = j;
      }
    }
    if (entering < 0) {
      result.converged = true;
      break;
    }
    if (result.iterations >= cap) break;

    passive.push_back(static_cast<int>(entering));
    in_passive[entering] = 1;

    bool first_pass = true;
    bool hit_cap = false;
    while (true) {
      ++result.iterations;
      const Eigen::VectorXd z = solve_passive(A, b, gram, atb, passive);

      if (first_pass && z[static_cast<Eigen::Index>(passive.size()) - 1] <= 0.0) {
        // Roundoff made the entering column useless; skip it until x changes.
        passive.pop_back();
        in_passive[entering] = 0;
        blocked[entering] = 1;
        break;
      }
      first_pass = false;

      double alpha = 1.0;
      bool feasible = true;
      for (std::size_t i = 0; i < passive.size(); ++i) {
        if (z[static_cast<Eigen::Index>(i)] <= 0.0) {
          feasible = false;
          const double xi = x[passive[i]];
          alpha = std::min(alpha, xi / (xi - z[static_cast<Eigen::Index>(i)]));
        }
      }
      if (feasible) {
        for (std::size_t i = 0; i < passive.size(); ++i) x[passive[i]] = z[static_cast<Eigen::Index>(i)];
        std::fill(blocked.begin(), blocked.end(), 0);
        break;
      }

      std::vector<int> kept;
      kept.reserve(passive.size());
      for (std::size_t i = 0; i < passive.size(); ++i) {
        const int j = passive[i];
        x[j] += alpha * (z[static_cast<Eigen::Index>(i)] - x[j]);
        if (x[j] <= 0.0) {
          x[j] = 0.0;
          in_passive[j] = 0;
        } else {
          kept.push_back(j);
        }
      }
      // The column that set alpha lands on zero up to roundoff; drop it explicitly.
      if (kept.size() == passive.size()) {
        double smallest = std::numeric_limits<double>::infinity();
        std::size_t drop = 0;
        for (std::size_t i = 0; i < passive.size(); ++i) {
          if (z[static_cast<Eigen::Index>(i)] <= 0.0 && x[passive[i]] < smallest) {
            smallest = x[passive[i]];
            drop = i;
          }
        }
        x[passive[drop]] = 0.0;
        in_passive[passive[drop]] = 0;
        kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(drop));
      }
      passive = std::move(kept);
      if (result.iterations >= cap) {
        hit_cap = true;
        break;
      }
      if (passive.empty()) break;
    }
    if (hit_cap) break;
    dual = atb - gram * x;
  }

  result.weights = x;
  const double bnorm = b.norm();
  const double rnorm = (A * x - b).norm();
  result.relative_residual = bnorm > 0.0 ? rnorm / bnorm : rnorm;
  return result;
}

}  // namespace levylab
