// solab: compact limited-memory BFGS with Armijo backtracking, used by the
// reduced-distance path minimization.
#pragma once

#include <functional>

#include <Eigen/Core>

namespace solab {

struct LbfgsOptions {
  double grad_tol = 1e-8;  // infinity norm of the gradient
  int max_iterations = 500;
  int memory = 8;
  double armijo_c1 = 1e-4;
  double backtrack = 0.5;
  int max_backtracks = 40;
};

struct LbfgsResult {
  Eigen::VectorXd x;
  double fx = 0.0;
  int iterations = 0;
  bool converged = false;  // gradient tolerance met before the iteration cap
};

// fn(x, grad) must return f(x) and fill grad (same dimension as x).
LbfgsResult minimize_lbfgs(
    const std::function<double(const Eigen::VectorXd&, Eigen::VectorXd&)>& fn,
    Eigen::VectorXd x0, const LbfgsOptions& opts = {});

}  // namespace solab
