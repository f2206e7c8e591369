#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "senlex/constraints.hpp"
#include "senlex/seedlex.hpp"

namespace senlex {

struct HyperParams {
  double lambda1 = 1.0;
  double lambda2 = 1.0;
  double lambda3 = 1.0;
  double lambda4 = 1.0;
  double delta = 0.01;        // convergence residual on ||X - X'||_F^2
  int max_iters = 100;
  double init_epsilon = 0.1;  // uniform positive offset added to X0 at init
  double denom_guard = 1e-12;

  /// Throws unless all lambdas are >= 0 with at least one > 0, delta > 0,
  /// max_iters >= 1 and the numeric guards are positive.
  void validate() const;
};

struct ObjectiveTerms {
  double total = 0.0;
  double r1 = 0.0;  // ||A X - Xtilde||_F^2
  double r2 = 0.0;  // ||G (X - X0)||_F^2
  double r3 = 0.0;  // Tr(X'DX) - Tr(X'WaX) - Tr(X'WbXE)
  double r4 = 0.0;  // Tr(X'DsX) - Tr(X'WsX)
};

ObjectiveTerms objective(const Eigen::MatrixXd& X, const ConstraintSet& C,
                         const HyperParams& h);

/// Gradient of the objective with respect to X:
///   2*l1*A'(AX - Xtilde) + 2*l2*G(X - X0)
///   + 2*(l3*D + l4*Ds - l3*Wa - l4*Ws)X - 2*l3*Wb*X*E
Eigen::MatrixXd gradient(const Eigen::MatrixXd& X, const ConstraintSet& C,
                         const HyperParams& h);

/// One whole-matrix multiplicative update:
///   X <- X .* sqrt(max(N,0) ./ max(Dn, guard))
/// with N  = l1*((A'Xtilde)+ + (A'A)- X) + l2*G*X0 + l3*Wa*X + l3*Wb*X*E + l4*Ws*X
/// and  Dn = l1*((A'Xtilde)- + (A'A)+ X) + l2*G*X  + l3*D*X  + l4*Ds*X,
/// where (M)+/(M)- are the elementwise positive/negative parts. For A >= 0
/// the negative parts vanish and this is the plain ratio of the update rule;
/// the split keeps both sides non-negative when negation gives A mixed signs,
/// without moving the fixed points (N - Dn = -gradient/2 either way).
/// Every element is computed from the input X (Jacobi style), so the result
/// is order-independent. Lambdas are normalized by their maximum first; the
/// ratio only depends on them through their ratios, which makes rescaling all
/// four by a common factor an exact no-op.
Eigen::MatrixXd update_step(const Eigen::MatrixXd& X, const ConstraintSet& C,
                            const HyperParams& h);

struct SolveResult {
  Eigen::MatrixXd X;                   // n x 2, non-negative
  std::vector<double> objective_trace; // index 0 is the initial objective
  int iterations = 0;
  bool converged = false;
  std::vector<Polarity> labels;
  Eigen::VectorXd scores;              // s(x_i) = x_i1 - x_i2
};

/// Iterates update_step from X = X0 + init_epsilon until the squared
/// Frobenius residual between consecutive iterates drops below delta or
/// max_iters steps have run.
SolveResult solve(const ConstraintSet& C, const HyperParams& h);

/// Overall polarity per row: score = x1 - x2, positive iff score >= 0.
std::pair<std::vector<Polarity>, Eigen::VectorXd> label(const Eigen::MatrixXd& X);

}  // namespace senlex
