#pragma once

#include <functional>
#include <vector>

#include <Eigen/Sparse>

#include "mortarfem/errors.hpp"
#include "mortarfem/sparse.hpp"

namespace mortarfem {

/// Implicit Euler stepper for M du/dt + A u = F(t). Factorizes M + r A once;
/// each step solves (M + r A) u_new = M u_old + r F(t_new).
class TimeStepper {
public:
  TimeStepper(const SparseSymMatrix& mass, const SparseSymMatrix& stiffness, double r)
      : mass_(mass), r_(r) {
    if (!(r > 0.0)) throw ValidationError("TimeStepper: time step must be positive");
    if (mass.dim() != stiffness.dim())
      throw ValidationError("TimeStepper: mass and stiffness dimensions differ");
    Eigen::SparseMatrix<double> sys = mass.matrix() + r * stiffness.matrix();
    llt_.compute(sys);
    if (llt_.info() != Eigen::Success)
      throw NumericalError("TimeStepper: factorization of M + r A failed");
  }

  double dt() const { return r_; }

  Eigen::VectorXd step(const Eigen::VectorXd& u_old, const Eigen::VectorXd& load) const {
    return llt_.solve(mass_ * u_old + r_ * load);
  }

private:
  const SparseSymMatrix& mass_;
  double r_;
  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt_;
};

/// Run n_steps implicit Euler steps from u0, with the load produced by a
/// callback at each target time. Returns the whole trajectory; states[n]
/// is the solution at t = n * r.
inline std::vector<Eigen::VectorXd> backward_euler_run(
    const TimeStepper& stepper, const Eigen::VectorXd& u0, int n_steps,
    const std::function<Eigen::VectorXd(double)>& load_at) {
  if (n_steps < 1) throw ValidationError("backward_euler_run: need at least one step");
  std::vector<Eigen::VectorXd> states;
  states.reserve(n_steps + 1);
  states.push_back(u0);
  for (int n = 1; n <= n_steps; ++n) {
    const double t = n * stepper.dt();
    states.push_back(stepper.step(states.back(), load_at(t)));
  }
  return states;
}

} // namespace mortarfem
