#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "mortarfem/geometry.hpp"
#include "mortarfem/trace_space.hpp"

namespace mortarfem {

namespace detail {

/// Moment matrix of a trace-like space against the multiplier space living
/// on the same breakpoint mesh: M(j, s) = integral of basis_s * mult_j.
/// A per-subinterval Gauss rule of order degree+1 integrates the piecewise
/// polynomial integrands exactly.
inline Eigen::MatrixXd moment_matrix_same_mesh(const IntervalSpace& mult,
                                               const IntervalSpace& space) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(mult.dim(), space.dim());
  int order = 1;
  for (int iv = 0; iv < space.interval_count(); ++iv)
    order = std::max(order, static_cast<int>(space.interval_coords(iv).size()));
  const QuadratureRule rule = gauss_legendre(order + 1);
  for (int iv = 0; iv < space.interval_count(); ++iv) {
    const double a = space.breakpoints()[iv], b = space.breakpoints()[iv + 1];
    const double mid = 0.5 * (a + b), hal = 0.5 * (b - a);
    const std::vector<int>& sids = space.interval_ids(iv);
    const std::vector<int>& mids = mult.interval_ids(iv);
    for (int q = 0; q < rule.size(); ++q) {
      const double x = mid + hal * rule.points[q];
      const double w = hal * rule.weights[q];
      for (std::size_t pj = 0; pj < mids.size(); ++pj) {
        const double cj = w * lagrange_value(mult.interval_coords(iv), static_cast<int>(pj), x);
        for (std::size_t ps = 0; ps < sids.size(); ++ps)
          m(mids[pj], sids[ps]) +=
              cj * lagrange_value(space.interval_coords(iv), static_cast<int>(ps), x);
      }
    }
  }
  return m;
}

/// Moment matrix of the mortar trace space (different mesh) against the
/// multiplier space, on the merged-breakpoint composite rule.
inline Eigen::MatrixXd moment_matrix_cross_mesh(const IntervalSpace& mult,
                                                const IntervalSpace& mortar_trace,
                                                int order) {
  const CompositeRule rule =
      interface_quadrature(mortar_trace.breakpoints(), mult.breakpoints(), order);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(mult.dim(), mortar_trace.dim());
  for (int q = 0; q < rule.size(); ++q) {
    const double x = rule.points[q];
    const double w = rule.weights[q];
    const int ivm = mult.find_interval(x);
    const int ivt = mortar_trace.find_interval(x);
    const std::vector<int>& mids = mult.interval_ids(ivm);
    const std::vector<int>& tids = mortar_trace.interval_ids(ivt);
    for (std::size_t pj = 0; pj < mids.size(); ++pj) {
      const double cj =
          w * lagrange_value(mult.interval_coords(ivm), static_cast<int>(pj), x);
      for (std::size_t pt = 0; pt < tids.size(); ++pt)
        m(mids[pj], tids[pt]) +=
            cj * lagrange_value(mortar_trace.interval_coords(ivt), static_cast<int>(pt), x);
    }
  }
  return m;
}

} // namespace detail

/// Master-slave elimination data for one interface. Slaves are the interior
/// nonmortar trace nodes; masters are every mortar trace node followed by
/// the two nonmortar endpoint nodes. Each slave value is the corresponding
/// row of `coeff` applied to the master values.
struct CouplingMap {
  int interface_id = -1;
  int mortar_dim = 0;    // number of mortar trace nodes
  int slave_count = 0;   // interior nonmortar trace nodes
  Eigen::MatrixXd coeff; // slave_count x (mortar_dim + 2)

  int master_count() const { return mortar_dim + 2; }
};

/// Build the elimination map enforcing that the jump across the interface
/// has vanishing moments against every multiplier.
inline CouplingMap build_coupling(const InterfaceSegment& seg) {
  const IntervalSpace nm_trace = trace_space(seg.nonmortar.breakpoints, seg.nonmortar.degree);
  const IntervalSpace mult = multiplier_space(seg.nonmortar.breakpoints, seg.nonmortar.degree);
  const IntervalSpace m_trace = trace_space(seg.mortar.breakpoints, seg.mortar.degree);

  const int tdim = nm_trace.dim();
  const int mdim = mult.dim();
  // moments of the full nonmortar trace basis; interior columns form the
  // square slave system, the end columns belong to the endpoint masters
  const Eigen::MatrixXd full = detail::moment_matrix_same_mesh(mult, nm_trace);
  const Eigen::MatrixXd d = full.middleCols(1, tdim - 2);
  const int order = std::max(seg.mortar.degree, seg.nonmortar.degree) + 2;
  const Eigen::MatrixXd bm = detail::moment_matrix_cross_mesh(mult, m_trace, order);

  Eigen::FullPivLU<Eigen::MatrixXd> lu(d);
  if (!lu.isInvertible())
    throw NumericalError("build_coupling: singular slave moment matrix on interface " +
                         std::to_string(seg.id));
  CouplingMap map;
  map.interface_id = seg.id;
  map.mortar_dim = m_trace.dim();
  map.slave_count = mdim;
  map.coeff.resize(mdim, m_trace.dim() + 2);
  map.coeff.leftCols(m_trace.dim()) = lu.solve(bm);
  map.coeff.col(m_trace.dim()) = lu.solve(-full.col(0));
  map.coeff.col(m_trace.dim() + 1) = lu.solve(-full.col(tdim - 1));
  return map;
}

/// Project a function on the interface onto the interior nonmortar trace
/// space by matching all multiplier moments. Returns the coefficients of
/// the interior trace nodes (endpoint values of the result are zero).
inline Eigen::VectorXd mortar_project(const std::vector<double>& nonmortar_breakpoints,
                                      int degree, const std::function<double(double)>& v,
                                      int quad_order = -1) {
  const IntervalSpace nm_trace = trace_space(nonmortar_breakpoints, degree);
  const IntervalSpace mult = multiplier_space(nonmortar_breakpoints, degree);
  const int tdim = nm_trace.dim();
  const Eigen::MatrixXd full = detail::moment_matrix_same_mesh(mult, nm_trace);
  const Eigen::MatrixXd d = full.middleCols(1, tdim - 2);

  const int order = quad_order > 0 ? quad_order : degree + 3;
  const CompositeRule rule = composite_gauss(nonmortar_breakpoints, order);
  Eigen::VectorXd moments = Eigen::VectorXd::Zero(mult.dim());
  for (int q = 0; q < rule.size(); ++q) {
    const double x = rule.points[q];
    const double w = rule.weights[q] * v(x);
    const int iv = mult.find_interval(x);
    const std::vector<int>& ids = mult.interval_ids(iv);
    for (std::size_t p = 0; p < ids.size(); ++p)
      moments(ids[p]) += w * lagrange_value(mult.interval_coords(iv), static_cast<int>(p), x);
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(d);
  if (!lu.isInvertible())
    throw NumericalError("mortar_project: singular moment matrix");
  return lu.solve(moments);
}

/// Evaluate the projected function from its interior-node coefficients.
inline double eval_interior_trace(const IntervalSpace& nm_trace, const Eigen::VectorXd& coeffs,
                                  double x) {
  const int iv = nm_trace.find_interval(x);
  const std::vector<int>& ids = nm_trace.interval_ids(iv);
  double v = 0.0;
  for (std::size_t p = 0; p < ids.size(); ++p) {
    const int j = ids[p];
    if (j == 0 || j == nm_trace.dim() - 1) continue;
    v += coeffs(j - 1) * lagrange_value(nm_trace.interval_coords(iv), static_cast<int>(p), x);
  }
  return v;
}

} // namespace mortarfem
