// solab: two-loop recursion L-BFGS implementation.
#include "solab/optimize.hpp"

#include <cmath>
#include <deque>

namespace solab {

LbfgsResult minimize_lbfgs(
    const std::function<double(const Eigen::VectorXd&, Eigen::VectorXd&)>& fn,
    Eigen::VectorXd x0, const LbfgsOptions& opts) {
  const auto dim = x0.size();
  LbfgsResult out;
  out.x = std::move(x0);

  Eigen::VectorXd grad(dim), grad_new(dim);
  out.fx = fn(out.x, grad);

  std::deque<Eigen::VectorXd> s_hist, y_hist;
  std::deque<double> rho_hist;

  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    out.iterations = iter;
    if (grad.lpNorm<Eigen::Infinity>() <= opts.grad_tol) {
      out.converged = true;
      return out;
    }

    // Two-loop recursion for the search direction.
    Eigen::VectorXd q = grad;
    std::vector<double> alpha(s_hist.size());
    for (int i = static_cast<int>(s_hist.size()) - 1; i >= 0; --i) {
      alpha[i] = rho_hist[i] * s_hist[i].dot(q);
      q -= alpha[i] * y_hist[i];
    }
    double gamma = 1.0;
    if (!s_hist.empty()) {
      const double yy = y_hist.back().squaredNorm();
      if (yy > 0.0) gamma = s_hist.back().dot(y_hist.back()) / yy;
    }
    Eigen::VectorXd dir = gamma * q;
    for (size_t i = 0; i < s_hist.size(); ++i) {
      const double beta = rho_hist[i] * y_hist[i].dot(dir);
      dir += (alpha[i] - beta) * s_hist[i];
    }
    dir = -dir;

    double slope = grad.dot(dir);
    if (!(slope < 0.0)) {  // not a descent direction: fall back to steepest
      dir = -grad;
      slope = grad.dot(dir);
    }

    // Armijo backtracking.
    double step = 1.0;
    double fx_new = out.fx;
    Eigen::VectorXd x_new;
    bool accepted = false;
    for (int bt = 0; bt < opts.max_backtracks; ++bt) {
      x_new = out.x + step * dir;
      fx_new = fn(x_new, grad_new);
      if (fx_new <= out.fx + opts.armijo_c1 * step * slope) {
        accepted = true;
        break;
      }
      step *= opts.backtrack;
    }
    if (!accepted) return out;  // line search exhausted; caller sees stall

    Eigen::VectorXd s = x_new - out.x;
    Eigen::VectorXd y = grad_new - grad;
    const double sy = s.dot(y);
    if (sy > 1e-16 * s.norm() * y.norm()) {
      s_hist.push_back(std::move(s));
      y_hist.push_back(std::move(y));
      rho_hist.push_back(1.0 / sy);
      if (static_cast<int>(s_hist.size()) > opts.memory) {
        s_hist.pop_front();
        y_hist.pop_front();
        rho_hist.pop_front();
      }
    }
    out.x = std::move(x_new);
    out.fx = fx_new;
    grad.swap(grad_new);
  }
  out.iterations = opts.max_iterations;
  if (grad.lpNorm<Eigen::Infinity>() <= opts.grad_tol) out.converged = true;
  return out;
}

}  // namespace solab
