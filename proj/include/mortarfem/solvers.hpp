#pragma once

#include <cmath>
#include <iostream>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "mortarfem/field_eval.hpp"
#include "mortarfem/manufactured.hpp"
#include "mortarfem/system.hpp"

namespace mortarfem {

/// Factorized reduced operators of a mortar system. The stiffness and mass
/// matrices are symmetric positive definite on the constrained space, so a
/// sparse Cholesky factorization of each is computed once and reused.
/// Holds a reference to the system; keep the system alive while in use.
class EllipticOperator {
public:
  explicit EllipticOperator(const MortarSystem& sys) : sys_(sys) {
    stiffness_llt_.compute(sys.stiffness.matrix());
    if (stiffness_llt_.info() != Eigen::Success)
      throw NumericalError("EllipticOperator: stiffness factorization failed; "
                           "the constrained stiffness matrix is not positive definite");
    mass_llt_.compute(sys.mass.matrix());
    if (mass_llt_.info() != Eigen::Success)
      throw NumericalError("EllipticOperator: mass factorization failed");
  }

  const MortarSystem& system() const { return sys_; }

  /// Solve the reduced stiffness system A x = rhs.
  Eigen::VectorXd solve_stiffness(const Eigen::VectorXd& rhs) const {
    return stiffness_llt_.solve(rhs);
  }

  /// Solve the reduced mass system M x = rhs.
  Eigen::VectorXd solve_mass(const Eigen::VectorXd& rhs) const {
    return mass_llt_.solve(rhs);
  }

  /// Discrete solution operator applied to a constrained coefficient
  /// vector: the result w solves a(w, chi) = (v, chi) for all constrained
  /// chi, with v the finite element function given by `reduced`.
  Eigen::VectorXd apply_solution_operator(const Eigen::VectorXd& reduced) const {
    return solve_stiffness(sys_.mass * reduced);
  }

private:
  const MortarSystem& sys_;
  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> stiffness_llt_;
  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> mass_llt_;
};

/// Stationary solve: a(u_h, chi) = (f, chi) [+ interface flux terms] for
/// all constrained chi. Returns reduced coefficients.
inline Eigen::VectorXd elliptic_solve(const EllipticOperator& op, const ScalarField& f,
                                      double t, const GradientField* flux = nullptr) {
  const MortarSystem& sys = op.system();
  Eigen::VectorXd load = assemble_load(sys.meshes, sys.dofmap, f, t);
  if (flux)
    add_interface_flux_load(load, sys.dofmap, sys.interfaces, sys.alpha, *flux, t);
  return op.solve_stiffness(sys.restrict_load(load));
}

/// L2 projection of a field onto the constrained space.
inline Eigen::VectorXd l2_project(const EllipticOperator& op, const ScalarField& v, double t) {
  const MortarSystem& sys = op.system();
  const Eigen::VectorXd load = assemble_load_fine(sys.meshes, sys.dofmap, v, t);
  return op.solve_mass(sys.restrict_load(load));
}

/// L2 projection of a broken finite element function (full coefficients).
inline Eigen::VectorXd l2_project(const EllipticOperator& op, const Eigen::VectorXd& full) {
  const MortarSystem& sys = op.system();
  return op.solve_mass(sys.prolongation.transpose() * (sys.mass_full * full));
}

/// Elliptic projection of an exact solution: P u solves
/// a(P u, chi) = a(u, chi) - (two-sided interface flux terms)(chi).
inline Eigen::VectorXd elliptic_projection(const EllipticOperator& op,
                                           const ManufacturedSolution& ms, double t) {
  const MortarSystem& sys = op.system();
  Eigen::VectorXd rhs =
      assemble_stiffness_pairing(sys.meshes, sys.dofmap, sys.alpha, ms.gradient(), t);
  Eigen::VectorXd flux = Eigen::VectorXd::Zero(sys.dofmap.full_count());
  add_interface_flux_load(flux, sys.dofmap, sys.interfaces, sys.alpha,
                          ms.gradient(), t);
  rhs -= flux;
  return op.solve_stiffness(sys.restrict_load(rhs));
}

namespace detail {

inline double guard_seminorm_square(double q, double scale) {
  if (q < -1e-14 * std::max(1.0, scale))
    throw NumericalError("discrete_negative_seminorm: quadratic form came out negative; "
                         "the factorization is unreliable");
  if (q < 0.0) {
    std::cerr << "discrete_negative_seminorm: clamped a tiny negative value ("
              << q << ") to zero\n";
    return 0.0;
  }
  return q;
}

} // namespace detail

/// Discrete negative-order seminorm of a constrained function, s in
/// {0, 1, 2}: the square root of the L2 pairing of the s-fold discrete
/// solution operator applied to v with v itself. s = 0 is the plain L2
/// norm of the function.
inline double discrete_negative_seminorm(const EllipticOperator& op,
                                         const Eigen::VectorXd& reduced, int s) {
  if (s < 0 || s > 2)
    throw ValidationError("discrete_negative_seminorm: s must be 0, 1, or 2");
  const MortarSystem& sys = op.system();
  const Eigen::VectorXd f = sys.mass * reduced;
  const double scale = std::abs(reduced.dot(f));
  double q = 0.0;
  if (s == 0) {
    q = reduced.dot(f);
  } else if (s == 1) {
    q = op.solve_stiffness(f).dot(f);
  } else {
    const Eigen::VectorXd y = op.solve_stiffness(f);
    q = y.dot(sys.mass * y);
  }
  return std::sqrt(detail::guard_seminorm_square(q, scale));
}

/// Same seminorm for the difference between an exact field and a
/// constrained finite element function (typically the discretization
/// error). The field is paired against the basis with a fine quadrature;
/// for s >= 1 this equals projecting the error onto the constrained space
/// first, which changes nothing because the solution operator annihilates
/// the projection remainder.
inline double discrete_negative_seminorm(const EllipticOperator& op, const ScalarField& exact,
                                         const Eigen::VectorXd& uh_reduced, double t, int s) {
  if (s < 0 || s > 2)
    throw ValidationError("discrete_negative_seminorm: s must be 0, 1, or 2");
  const MortarSystem& sys = op.system();
  if (s == 0) {
    const Eigen::VectorXd full = sys.prolong(uh_reduced);
    ScalarField zero_grad = [](double, double, double) { return 0.0; };
    const ErrorNorms n = error_norms(sys.meshes, sys.dofmap, full, exact, zero_grad,
                                     zero_grad, t);
    return n.l2;
  }
  const Eigen::VectorXd load = assemble_load_fine(sys.meshes, sys.dofmap, exact, t) -
                               sys.mass_full.matrix() * sys.prolong(uh_reduced);
  const Eigen::VectorXd f = sys.restrict_load(load);
  const double scale = f.squaredNorm();
  double q = 0.0;
  if (s == 1) {
    q = op.solve_stiffness(f).dot(f);
  } else {
    const Eigen::VectorXd y = op.solve_stiffness(f);
    q = y.dot(sys.mass * y);
  }
  return std::sqrt(detail::guard_seminorm_square(q, scale));
}

} // namespace mortarfem
