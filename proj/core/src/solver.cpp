#include "senlex/solver.hpp"

#include <cmath>
#include <stdexcept>

namespace senlex {

void HyperParams::validate() const {
  for (double l : {lambda1, lambda2, lambda3, lambda4}) {
    if (!(l >= 0.0) || !std::isfinite(l))
      throw std::runtime_error("hyperparams: lambdas must be finite and >= 0");
  }
  if (lambda1 + lambda2 + lambda3 + lambda4 <= 0.0)
    throw std::runtime_error("hyperparams: at least one lambda must be > 0");
  if (!(delta > 0.0)) throw std::runtime_error("hyperparams: delta must be > 0");
  if (max_iters < 1) throw std::runtime_error("hyperparams: max_iters must be >= 1");
  if (!(init_epsilon > 0.0))
    throw std::runtime_error("hyperparams: init_epsilon must be > 0");
  if (!(denom_guard > 0.0))
    throw std::runtime_error("hyperparams: denom_guard must be > 0");
}

namespace {

void check_dims(const Eigen::MatrixXd& X, const ConstraintSet& C) {
  if (X.rows() != C.X0.rows() || X.cols() != 2)
    throw std::runtime_error("solver: X dimensions disagree with the constraint set");
}

}  // namespace

ObjectiveTerms objective(const Eigen::MatrixXd& X, const ConstraintSet& C,
                         const HyperParams& h) {
  check_dims(X, C);
  ObjectiveTerms t;
  t.r1 = (C.A * X - C.Xtilde).squaredNorm();
  t.r2 = (C.G.asDiagonal() * (X - C.X0)).squaredNorm();

  const Eigen::MatrixXd WaX = C.Wa * X;
  const Eigen::MatrixXd WbXE = C.Wb * (X * C.E);
  const Eigen::MatrixXd WsX = C.Ws * X;
  const Eigen::MatrixXd DX = C.D.asDiagonal() * X;
  const Eigen::MatrixXd DsX = C.Ds.asDiagonal() * X;
  t.r3 = (X.transpose() * DX).trace() - (X.transpose() * WaX).trace() -
         (X.transpose() * WbXE).trace();
  t.r4 = (X.transpose() * DsX).trace() - (X.transpose() * WsX).trace();

  t.total = h.lambda1 * t.r1 + h.lambda2 * t.r2 + h.lambda3 * t.r3 + h.lambda4 * t.r4;
  return t;
}

Eigen::MatrixXd gradient(const Eigen::MatrixXd& X, const ConstraintSet& C,
                         const HyperParams& h) {
  check_dims(X, C);
  Eigen::MatrixXd g = 2.0 * h.lambda1 * (C.A.transpose() * (C.A * X - C.Xtilde));
  g += 2.0 * h.lambda2 * (C.G.asDiagonal() * (X - C.X0));
  g += 2.0 * h.lambda3 * (C.D.asDiagonal() * X - C.Wa * X);
  g += 2.0 * h.lambda4 * (C.Ds.asDiagonal() * X - C.Ws * X);
  g -= 2.0 * h.lambda3 * (C.Wb * (X * C.E));
  return g;
}

Eigen::MatrixXd update_step(const Eigen::MatrixXd& X, const ConstraintSet& C,
                            const HyperParams& h) {
  check_dims(X, C);
  // The update depends on the lambdas only through their ratios; dividing by
  // the maximum makes that invariance hold exactly in floating point.
  const double lmax =
      std::max({h.lambda1, h.lambda2, h.lambda3, h.lambda4});
  const double l1 = h.lambda1 / lmax;
  const double l2 = h.lambda2 / lmax;
  const double l3 = h.lambda3 / lmax;
  const double l4 = h.lambda4 / lmax;

  // Negation gives A mixed signs; A'Xtilde and A'A are sign-split across the
  // ratio so both sides stay non-negative. With A >= 0 the negative parts
  // vanish and this is the plain update.
  Eigen::MatrixXd numer = l1 * (C.AtXt_pos + C.AtA_neg * X);
  numer += l2 * (C.G.asDiagonal() * C.X0);
  numer += l3 * (C.Wa * X);
  numer += l3 * (C.Wb * (X * C.E));
  numer += l4 * (C.Ws * X);

  Eigen::MatrixXd denom = l1 * (C.AtXt_neg + C.AtA_pos * X);
  denom += l2 * (C.G.asDiagonal() * X);
  denom += l3 * (C.D.asDiagonal() * X);
  denom += l4 * (C.Ds.asDiagonal() * X);

  numer = numer.cwiseMax(0.0);
  denom = denom.cwiseMax(h.denom_guard);
  return X.array() * (numer.array() / denom.array()).sqrt();
}

SolveResult solve(const ConstraintSet& C, const HyperParams& h) {
  h.validate();
  SolveResult res;
  Eigen::MatrixXd X =
      C.X0 + Eigen::MatrixXd::Constant(C.X0.rows(), 2, h.init_epsilon);
  res.objective_trace.push_back(objective(X, C, h).total);
  res.converged = false;
  res.iterations = 0;
  while (res.iterations < h.max_iters) {
    Eigen::MatrixXd next = update_step(X, C, h);
    ++res.iterations;
    double residual = (next - X).squaredNorm();
    X = std::move(next);
    res.objective_trace.push_back(objective(X, C, h).total);
    if (residual < h.delta) {
      res.converged = true;
      break;
    }
  }
  res.X = std::move(X);
  std::tie(res.labels, res.scores) = label(res.X);
  return res;
}

std::pair<std::vector<Polarity>, Eigen::VectorXd> label(const Eigen::MatrixXd& X) {
  std::vector<Polarity> labels(static_cast<size_t>(X.rows()));
  Eigen::VectorXd scores(X.rows());
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    scores(i) = X(i, 0) - X(i, 1);
    labels[static_cast<size_t>(i)] =
        scores(i) >= 0.0 ? Polarity::Positive : Polarity::Negative;
  }
  return {std::move(labels), scores};
}

}  // namespace senlex
