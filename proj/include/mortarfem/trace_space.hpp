#pragma once

#include <vector>

#include "mortarfem/errors.hpp"
#include "mortarfem/lagrange.hpp"
#include "mortarfem/quadrature.hpp"

namespace mortarfem {

/// Continuous piecewise polynomial space on an interval mesh, described by
/// per-interval local node coordinates and their global ids. Nodes at shared
/// breakpoints carry one id, which is what makes the space continuous.
class IntervalSpace {
public:
  IntervalSpace(std::vector<double> breakpoints,
                std::vector<std::vector<double>> local_coords)
      : breakpoints_(std::move(breakpoints)), local_coords_(std::move(local_coords)) {
    local_ids_.resize(local_coords_.size());
    int next = 0;
    for (std::size_t i = 0; i < local_coords_.size(); ++i) {
      local_ids_[i].resize(local_coords_[i].size());
      std::size_t start = 0;
      if (i > 0 && local_coords_[i - 1].back() == breakpoints_[i] &&
          local_coords_[i].front() == breakpoints_[i]) {
        local_ids_[i][0] = local_ids_[i - 1].back();
        start = 1;
      }
      for (std::size_t j = start; j < local_coords_[i].size(); ++j) local_ids_[i][j] = next++;
    }
    dim_ = next;
    node_coords_.assign(dim_, 0.0);
    for (std::size_t i = 0; i < local_coords_.size(); ++i)
      for (std::size_t j = 0; j < local_coords_[i].size(); ++j)
        node_coords_[local_ids_[i][j]] = local_coords_[i][j];
  }

  int dim() const { return dim_; }
  int interval_count() const { return static_cast<int>(local_coords_.size()); }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& node_coords() const { return node_coords_; }
  const std::vector<double>& interval_coords(int i) const { return local_coords_[i]; }
  const std::vector<int>& interval_ids(int i) const { return local_ids_[i]; }

  int find_interval(double x) const {
    int lo = 0, hi = interval_count() - 1;
    while (lo < hi) {
      const int mid = (lo + hi) / 2;
      if (x <= breakpoints_[mid + 1]) hi = mid;
      else lo = mid + 1;
    }
    return lo;
  }

  /// Global basis function j at x. Zero off the intervals owning node j.
  double eval(int j, double x) const {
    const int iv = find_interval(x);
    double v = eval_on_interval(j, iv, x);
    // points at a shared breakpoint belong to one interval only; the basis
    // is continuous there so either interval gives the same value
    if (v == 0.0 && iv > 0 && x == breakpoints_[iv])
      v = eval_on_interval(j, iv - 1, x);
    return v;
  }

  double eval_on_interval(int j, int iv, double x) const {
    const std::vector<int>& ids = local_ids_[iv];
    for (std::size_t p = 0; p < ids.size(); ++p)
      if (ids[p] == j) return lagrange_value(local_coords_[iv], static_cast<int>(p), x);
    return 0.0;
  }

private:
  std::vector<double> breakpoints_;
  std::vector<std::vector<double>> local_coords_;
  std::vector<std::vector<int>> local_ids_;
  std::vector<double> node_coords_;
  int dim_ = 0;
};

namespace detail {

inline std::vector<double> mapped_nodes(double a, double b, const std::vector<double>& ref) {
  std::vector<double> out(ref.size());
  for (std::size_t i = 0; i < ref.size(); ++i) out[i] = a + 0.5 * (ref[i] + 1.0) * (b - a);
  out.front() = a;
  out.back() = b;
  return out;
}

} // namespace detail

/// Trace of a degree-k subdomain space on one of its edges: continuous
/// piecewise P_k with Gauss-Lobatto nodes, matching the 2d edge nodes
/// one-to-one in order. dim = subintervals * k + 1.
inline IntervalSpace trace_space(const std::vector<double>& breakpoints, int degree) {
  if (breakpoints.size() < 2)
    throw ValidationError("trace_space: need at least one subinterval");
  if (degree < 1) throw ValidationError("trace_space: degree must be >= 1");
  const std::vector<double> ref = gauss_lobatto_nodes(degree + 1);
  std::vector<std::vector<double>> coords;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
    coords.push_back(detail::mapped_nodes(breakpoints[i], breakpoints[i + 1], ref));
  return IntervalSpace(breakpoints, std::move(coords));
}

/// Multiplier space on a nonmortar trace mesh: continuous, degree k on
/// interior subintervals, degree k-1 on the two end subintervals.
/// dim = k * subintervals - 1, always two less than the trace space.
inline IntervalSpace multiplier_space(const std::vector<double>& breakpoints, int degree) {
  const int m = static_cast<int>(breakpoints.size()) - 1;
  if (m < 2)
    throw ValidationError(
        "multiplier_space: the nonmortar trace needs at least 2 subintervals");
  if (degree < 1) throw ValidationError("multiplier_space: degree must be >= 1");
  std::vector<std::vector<double>> coords(m);
  for (int i = 0; i < m; ++i) {
    const double a = breakpoints[i], b = breakpoints[i + 1];
    const bool end = (i == 0 || i == m - 1);
    if (end && degree == 1) {
      // degree 0 on end subintervals: one node, shared with the neighbor
      coords[i] = {i == 0 ? b : a};
    } else if (end) {
      coords[i] = detail::mapped_nodes(a, b, gauss_lobatto_nodes(degree));
    } else {
      coords[i] = detail::mapped_nodes(a, b, gauss_lobatto_nodes(degree + 1));
    }
  }
  return IntervalSpace(breakpoints, std::move(coords));
}

/// Dimension of the multiplier space for a nonmortar trace with the given
/// subinterval count and degree.
inline int multiplier_dim(int subintervals, int degree) {
  if (subintervals < 2)
    throw ValidationError(
        "multiplier_dim: the nonmortar trace needs at least 2 subintervals");
  if (degree < 1) throw ValidationError("multiplier_dim: degree must be >= 1");
  return degree * subintervals - 1;
}

} // namespace mortarfem
