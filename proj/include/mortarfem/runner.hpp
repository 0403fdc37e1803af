#pragma once

#include <cmath>
#include <future>
#include <vector>

#include "mortarfem/analysis.hpp"
#include "mortarfem/config.hpp"
#include "mortarfem/manufactured.hpp"
#include "mortarfem/solvers.hpp"
#include "mortarfem/system.hpp"
#include "mortarfem/time_stepping.hpp"

namespace mortarfem {

inline Partition resolve_partition(const RunConfig& cfg) {
  if (cfg.partition == "explicit") return build_partition(cfg.rects);
  return partition_preset(cfg.partition);
}

/// Two-coloring of the subdomain adjacency graph, used to give neighboring
/// subdomains deliberately nonmatching cell counts. Falls back to index
/// parity if the graph has an odd cycle.
inline std::vector<int> subdomain_colors(const Partition& part) {
  std::vector<int> color(part.count(), -1);
  std::vector<std::vector<int>> adj(part.count());
  for (const InterfacePair& p : part.interface_pairs) {
    adj[p.lower].push_back(p.upper);
    adj[p.upper].push_back(p.lower);
  }
  for (int start = 0; start < part.count(); ++start) {
    if (color[start] >= 0) continue;
    color[start] = 0;
    std::vector<int> queue{start};
    while (!queue.empty()) {
      const int v = queue.back();
      queue.pop_back();
      for (const int w : adj[v]) {
        if (color[w] < 0) {
          color[w] = 1 - color[v];
          queue.push_back(w);
        } else if (color[w] == color[v]) {
          for (int i = 0; i < part.count(); ++i) color[i] = i % 2;
          return color;
        }
      }
    }
  }
  return color;
}

/// Meshes at refinement parameter h = 1/n: color-0 subdomains get n cells
/// per unit length, color-1 subdomains n+2, so every interface is
/// nonmatching. Explicit per-subdomain overrides win.
inline std::vector<SubdomainMesh> meshes_for(const RunConfig& cfg, const Partition& part,
                                             double h) {
  const long n = std::lround(1.0 / h);
  if (n < 1) throw ValidationError("meshes_for: refinement parameter h must be <= 1");
  const std::vector<int> colors = subdomain_colors(part);
  std::vector<SubdomainMesh> meshes;
  meshes.reserve(part.count());
  for (int s = 0; s < part.count(); ++s) {
    const Rect& r = part.subdomains[s];
    const long density = n + (colors[s] == 1 ? 2 : 0);
    int nx = static_cast<int>(std::lround(r.width() * density));
    int ny = static_cast<int>(std::lround(r.height() * density));
    int degree = cfg.degree;
    const auto ov = cfg.subdomain_overrides.find(s);
    if (ov != cfg.subdomain_overrides.end()) {
      if (ov->second.nx > 0) nx = ov->second.nx;
      if (ov->second.ny > 0) ny = ov->second.ny;
      if (ov->second.degree > 0) degree = ov->second.degree;
    }
    meshes.push_back(build_subdomain_mesh(r, s, std::max(nx, 1), std::max(ny, 1), degree));
  }
  return meshes;
}

inline std::vector<double> resolve_alpha(const RunConfig& cfg, const Partition& part) {
  std::vector<double> alpha = cfg.alpha;
  if (alpha.size() == 1) alpha.assign(part.count(), alpha[0]);
  if (static_cast<int>(alpha.size()) != part.count())
    throw ValidationError("config field 'alpha': got " + std::to_string(alpha.size()) +
                          " entries for " + std::to_string(part.count()) + " subdomains");
  for (const auto& [idx, sc] : cfg.subdomain_overrides) {
    if (idx >= part.count())
      throw ValidationError("config: subdomain block index " + std::to_string(idx) +
                            " out of range");
    if (sc.alpha > 0.0) alpha[idx] = sc.alpha;
  }
  return alpha;
}

inline MortarSystem build_system_for(const RunConfig& cfg, double h) {
  Partition part = resolve_partition(cfg);
  std::vector<SubdomainMesh> meshes = meshes_for(cfg, part, h);
  std::vector<double> alpha = resolve_alpha(cfg, part);
  return build_mortar_system(std::move(part), std::move(meshes), std::move(alpha),
                             cfg.mortar_overrides);
}

/// Subdomain-aware parabolic source of a manufactured solution.
inline SubdomainField source_field(const ManufacturedSolution& ms,
                                   const std::vector<double>& alpha) {
  return [&ms, alpha](int s, double x, double y, double t) {
    return ms.source(x, y, t, alpha[s]);
  };
}

inline SubdomainField elliptic_source_field(const ManufacturedSolution& ms,
                                            const std::vector<double>& alpha) {
  return [&ms, alpha](int s, double x, double y, double t) {
    return ms.elliptic_source(x, y, t, alpha[s]);
  };
}

/// Reduced load vector at time t: volume source plus optional two-sided
/// interface flux terms.
inline Eigen::VectorXd reduced_load(const MortarSystem& sys, const ManufacturedSolution& ms,
                                    const SubdomainField& f, bool consistency_flux, double t) {
  Eigen::VectorXd load = assemble_load(sys.meshes, sys.dofmap, f, t);
  if (consistency_flux)
    add_interface_flux_load(load, sys.dofmap, sys.interfaces, sys.alpha,
                            ms.gradient(), t);
  return sys.restrict_load(load);
}

/// Initial coefficients in the constrained space. The interpolant takes
/// nodal values at the free dofs and lets the coupling reconstruct the
/// slaves; the alternative is the elliptic projection of the initial data.
inline Eigen::VectorXd initial_state(const MortarSystem& sys, const EllipticOperator& op,
                                     const ManufacturedSolution& ms,
                                     const std::string& u0_mode) {
  if (u0_mode == "elliptic-projection") return elliptic_projection(op, ms, 0.0);
  const Eigen::VectorXd full = interpolate(sys.meshes, sys.dofmap, ms.u, 0.0);
  Eigen::VectorXd reduced(sys.dofmap.reduced_count());
  for (int i = 0; i < sys.dofmap.reduced_count(); ++i)
    reduced(i) = full(sys.dofmap.reduced_to_full[i]);
  return reduced;
}

struct RunResult {
  ConvergenceRecord record;
  Eigen::VectorXd reduced; // final-time coefficients
};

/// One solve at refinement h: stationary elliptic solve or implicit Euler
/// up to the final time, with errors measured at the final time.
inline RunResult run_single(const RunConfig& cfg, const MortarSystem& sys,
                            const EllipticOperator& op, double h, double r_requested,
                            bool want_neg) {
  const ManufacturedSolution ms = manufactured_preset(cfg.solution);
  const double T = cfg.final_time;
  RunResult out;
  out.record.h = h;
  if (cfg.mode == "stationary") {
    const SubdomainField f = elliptic_source_field(ms, sys.alpha);
    Eigen::VectorXd load = assemble_load(sys.meshes, sys.dofmap, f, T);
    if (cfg.consistency_flux)
      add_interface_flux_load(load, sys.dofmap, sys.interfaces, sys.alpha,
                              ms.gradient(), T);
    out.reduced = op.solve_stiffness(sys.restrict_load(load));
    out.record.r = 0.0;
  } else {
    const int steps = std::max(1, static_cast<int>(std::lround(T / r_requested)));
    const double r = T / steps;
    const SubdomainField f = source_field(ms, sys.alpha);
    const TimeStepper stepper(sys.mass, sys.stiffness, r);
    const Eigen::VectorXd u0 = initial_state(sys, op, ms, cfg.u0_mode);
    const std::vector<Eigen::VectorXd> states = backward_euler_run(
        stepper, u0, steps, [&](double t) {
          return reduced_load(sys, ms, f, cfg.consistency_flux, t);
        });
    out.reduced = states.back();
    out.record.r = r;
  }
  const Eigen::VectorXd full = sys.prolong(out.reduced);
  const ErrorNorms norms = error_norms(sys.meshes, sys.dofmap, full, ms.u, ms.ux, ms.uy, T);
  out.record.error_l2 = norms.l2;
  out.record.error_x = norms.broken_h1;
  if (want_neg) {
    out.record.error_neg = discrete_negative_seminorm(op, ms.u, out.reduced, T, cfg.s);
    out.record.has_neg = true;
  }
  return out;
}

inline ConvergenceRecord run_at(const RunConfig& cfg, double h, bool want_neg) {
  const MortarSystem sys = build_system_for(cfg, h);
  const EllipticOperator op(sys);
  const double r = cfg.r_rule == "h2" ? h * h : cfg.r;
  return run_single(cfg, sys, op, h, r, want_neg).record;
}

/// Refinement study over the configured h list. The record computation for
/// each h is independent; with threads > 1 they run concurrently and are
/// collected in order, so the output is identical either way.
inline std::vector<ConvergenceRecord> convergence_study(const RunConfig& cfg,
                                                        bool want_neg = false,
                                                        int threads = 1) {
  if (cfg.h_list.size() < 2)
    throw ValidationError("convergence_study: h_list needs at least two entries");
  std::vector<ConvergenceRecord> records(cfg.h_list.size());
  if (threads > 1) {
    std::vector<std::future<ConvergenceRecord>> futures;
    futures.reserve(cfg.h_list.size());
    for (const double h : cfg.h_list)
      futures.push_back(std::async(std::launch::async,
                                   [&cfg, h, want_neg] { return run_at(cfg, h, want_neg); }));
    for (std::size_t i = 0; i < futures.size(); ++i) records[i] = futures[i].get();
  } else {
    for (std::size_t i = 0; i < cfg.h_list.size(); ++i)
      records[i] = run_at(cfg, cfg.h_list[i], want_neg);
  }
  return records;
}

/// Temporal refinement study: fixed spatial mesh from the first h entry,
/// one implicit Euler run per time step in the r list.
inline std::vector<ConvergenceRecord> time_convergence_study(const RunConfig& cfg) {
  if (cfg.mode != "parabolic")
    throw ValidationError("time_convergence_study: requires parabolic mode");
  if (cfg.r_list.size() < 2)
    throw ValidationError("time_convergence_study: r_list needs at least two entries");
  if (cfg.h_list.empty())
    throw ValidationError("time_convergence_study: h_list needs the fixed mesh parameter");
  const double h = cfg.h_list.front();
  const MortarSystem sys = build_system_for(cfg, h);
  const EllipticOperator op(sys);
  std::vector<ConvergenceRecord> records;
  records.reserve(cfg.r_list.size());
  for (const double r : cfg.r_list) {
    ConvergenceRecord rec = run_single(cfg, sys, op, h, r, false).record;
    records.push_back(rec);
  }
  return records;
}

/// Negative-seminorm superconvergence study: the configured study with the
/// discrete negative-order seminorm of the error computed per record.
/// Requires at least quadratic elements; with linear elements the extra
/// regularity the rate gap relies on is not available.
inline std::vector<ConvergenceRecord> superconvergence_study(const RunConfig& cfg,
                                                             int threads = 1) {
  if (cfg.degree < 2)
    throw ValidationError("superconvergence_study: degree must be >= 2; the negative-norm "
                          "rate gap needs at least quadratic elements");
  return convergence_study(cfg, true, threads);
}

} // namespace mortarfem
