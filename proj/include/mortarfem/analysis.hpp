#pragma once

#include <cmath>
#include <vector>

#include "mortarfem/errors.hpp"

namespace mortarfem {

/// One row of a refinement study. `error_neg` is the discrete negative-order
/// seminorm of the error when the study computes it (has_neg), alongside the
/// L2 and broken H1 errors.
struct ConvergenceRecord {
  double h = 0.0;
  double r = 0.0;
  double error_l2 = 0.0;
  double error_x = 0.0;
  double error_neg = 0.0;
  bool has_neg = false;
};

namespace detail {

inline void check_decreasing(const std::vector<double>& v, const char* what) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] < v[i - 1]))
      throw ValidationError(std::string("eoc: ") + what +
                            " values must be strictly decreasing");
}

} // namespace detail

/// Estimated order between consecutive records:
/// log(e_prev / e_cur) / log(x_prev / x_cur). Needs at least two records and
/// strictly decreasing parameters.
inline std::vector<double> eoc(const std::vector<double>& params,
                               const std::vector<double>& errors) {
  if (params.size() != errors.size())
    throw ValidationError("eoc: parameter and error counts differ");
  if (params.size() < 2) throw ValidationError("eoc: need at least two records");
  detail::check_decreasing(params, "parameter");
  std::vector<double> orders;
  orders.reserve(params.size() - 1);
  for (std::size_t i = 1; i < params.size(); ++i)
    orders.push_back(std::log(errors[i - 1] / errors[i]) / std::log(params[i - 1] / params[i]));
  return orders;
}

inline std::vector<double> eoc_h(const std::vector<ConvergenceRecord>& recs,
                                 const std::vector<double>& errors) {
  std::vector<double> hs;
  hs.reserve(recs.size());
  for (const ConvergenceRecord& r : recs) hs.push_back(r.h);
  return eoc(hs, errors);
}

inline std::vector<double> eoc_r(const std::vector<ConvergenceRecord>& recs,
                                 const std::vector<double>& errors) {
  std::vector<double> rs;
  rs.reserve(recs.size());
  for (const ConvergenceRecord& r : recs) rs.push_back(r.r);
  return eoc(rs, errors);
}

/// Least-squares slope of log(error) against log(parameter).
inline double fit_order(const std::vector<double>& params, const std::vector<double>& errors) {
  if (params.size() != errors.size() || params.size() < 2)
    throw ValidationError("fit_order: need at least two matching records");
  const std::size_t n = params.size();
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = std::log(params[i]), y = std::log(errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace mortarfem
