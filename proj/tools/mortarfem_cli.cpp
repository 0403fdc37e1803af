#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mortarfem/field_eval.hpp"
#include "mortarfem/report.hpp"
#include "mortarfem/runner.hpp"

namespace fs = std::filesystem;
using namespace mortarfem;

namespace {

struct CommonArgs {
  std::string config_path;
  std::string preset;
  std::string out_dir;
  int threads = 1;
  std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "path to a run configuration file");
  cmd->add_option("--preset", args.preset, "named experiment preset");
  cmd->add_option("--out", args.out_dir, "output directory (overrides the config)");
  cmd->add_option("--threads", args.threads, "worker threads for study sweeps")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", args.seed, "seed recorded in run metadata");
}

RunConfig load_run_config(const CommonArgs& args) {
  if (args.config_path.empty() == args.preset.empty())
    throw ValidationError("exactly one of --config and --preset is required");
  RunConfig cfg =
      args.config_path.empty() ? config_preset(args.preset) : parse_config(args.config_path);
  if (!args.out_dir.empty()) cfg.out_dir = args.out_dir;
  validate_config(cfg);
  ensure_out_dir(cfg.out_dir);
  return cfg;
}

std::string out_path(const RunConfig& cfg, const std::string& name) {
  return (fs::path(cfg.out_dir) / name).string();
}

void print_table(const StudyTable& table) {
  for (std::size_t j = 0; j < table.names.size(); ++j)
    std::cout << table.names[j] << (j + 1 < table.names.size() ? "," : "\n");
  for (const auto& row : table.rows)
    for (std::size_t j = 0; j < row.size(); ++j)
      std::cout << row[j] << (j + 1 < row.size() ? "," : "\n");
}

int cmd_solve(const CommonArgs& args) {
  RunConfig cfg = load_run_config(args);
  const double h = cfg.h_list.empty() ? 1.0 : cfg.h_list.front();
  const MortarSystem sys = build_system_for(cfg, h);
  const EllipticOperator op(sys);
  const double r = cfg.r_rule == "h2" ? h * h : cfg.r;
  const RunResult res = run_single(cfg, sys, op, h, r, false);
  const Eigen::VectorXd full = sys.prolong(res.reduced);

  {
    std::ofstream out(out_path(cfg, "solution.csv"));
    if (!out) throw ValidationError("cannot open output file: solution.csv");
    out << "x,y,value\n";
    for (const SubdomainMesh& mesh : sys.meshes)
      for (int iy = 0; iy < mesh.nodes_y(); ++iy)
        for (int ix = 0; ix < mesh.nodes_x(); ++ix)
          out << format_g17(mesh.x_coords[ix]) << "," << format_g17(mesh.y_coords[iy]) << ","
              << format_g17(full(sys.dofmap.global_id(mesh.subdomain, mesh.node_id(ix, iy))))
              << "\n";
  }

  int counts[4] = {0, 0, 0, 0};
  for (const DofClass c : sys.dofmap.cls) counts[static_cast<int>(c)]++;
  std::ostringstream summary;
  summary << "mode: " << cfg.mode << "\n"
          << "solution: " << cfg.solution << "\n"
          << "h: " << format_g17(res.record.h) << "\n";
  if (cfg.mode == "parabolic")
    summary << "r: " << format_g17(res.record.r) << "\n"
            << "T: " << format_g17(cfg.final_time) << "\n";
  summary << "dofs_total: " << sys.dofmap.full_count() << "\n"
          << "dofs_interior: " << counts[0] << "\n"
          << "dofs_dirichlet: " << counts[1] << "\n"
          << "dofs_master: " << counts[2] << "\n"
          << "dofs_slave: " << counts[3] << "\n"
          << "dofs_reduced: " << sys.dofmap.reduced_count() << "\n"
          << "error_l2: " << format_g17(res.record.error_l2) << "\n"
          << "error_x: " << format_g17(res.record.error_x) << "\n"
          << "max_abs_value: " << format_g17(full.cwiseAbs().maxCoeff()) << "\n";
  std::ofstream sf(out_path(cfg, "summary.txt"));
  sf << summary.str();
  std::cout << summary.str();

  write_run_json(out_path(cfg, "run.json"), cfg, {res.record}, "solve", args.seed);
  std::cout << "wrote " << out_path(cfg, "solution.csv") << "\n";
  return 0;
}

int run_study(const CommonArgs& args, const std::string& kind) {
  RunConfig cfg = load_run_config(args);
  std::vector<ConvergenceRecord> records;
  bool temporal = false;
  if (kind == "convergence") {
    records = convergence_study(cfg, false, args.threads);
  } else if (kind == "time-convergence") {
    records = time_convergence_study(cfg);
    temporal = true;
  } else {
    records = superconvergence_study(cfg, args.threads);
  }
  const std::string stem = kind == "time-convergence"
                               ? "time_convergence"
                               : (kind == "negative-norm" ? "negative_norm" : "convergence");
  const StudyTable table = study_table(records, temporal);
  write_csv(out_path(cfg, stem + ".csv"), table);

  std::vector<double> params;
  for (const ConvergenceRecord& r : records) params.push_back(temporal ? r.r : r.h);
  std::vector<PlotSeries> series;
  std::vector<double> e2, ex, en;
  for (const ConvergenceRecord& r : records) {
    e2.push_back(r.error_l2);
    ex.push_back(r.error_x);
    if (r.has_neg) en.push_back(r.error_neg);
  }
  series.push_back({"L2 error", e2, "#1f77b4"});
  series.push_back({"broken H1 error", ex, "#d62728"});
  if (en.size() == records.size()) series.push_back({"negative-norm error", en, "#2ca02c"});
  write_svg_loglog(out_path(cfg, stem + ".svg"),
                   temporal ? "temporal convergence" : "spatial convergence",
                   temporal ? "r" : "h", params, series);
  write_run_json(out_path(cfg, "run.json"), cfg, records, kind, args.seed);

  print_table(table);
  std::cout << "wrote " << out_path(cfg, stem + ".csv") << "\n";
  return 0;
}

int cmd_project(const CommonArgs& args) {
  RunConfig cfg = load_run_config(args);
  const double h = cfg.h_list.empty() ? 1.0 : cfg.h_list.front();
  const MortarSystem sys = build_system_for(cfg, h);
  if (sys.interfaces.empty())
    throw ValidationError("project: the partition has no interface");
  const InterfaceSegment& seg = sys.interfaces.front();
  const ManufacturedSolution ms = manufactured_preset(cfg.solution);
  const double T = cfg.mode == "stationary" ? cfg.final_time : 0.0;
  const auto trace = [&](double tau) {
    const double px = seg.axis == 0 ? seg.coord : tau;
    const double py = seg.axis == 0 ? tau : seg.coord;
    return ms.u(px, py, T);
  };
  const Eigen::VectorXd coeffs =
      mortar_project(seg.nonmortar.breakpoints, seg.nonmortar.degree, trace);
  const IntervalSpace nm = trace_space(seg.nonmortar.breakpoints, seg.nonmortar.degree);

  std::ofstream out(out_path(cfg, "projection.csv"));
  if (!out) throw ValidationError("cannot open output file: projection.csv");
  out << "tau,input,projection\n";
  const int samples = 201;
  for (int i = 0; i < samples; ++i) {
    const double tau =
        seg.lo + (seg.hi - seg.lo) * static_cast<double>(i) / (samples - 1);
    out << format_g17(tau) << "," << format_g17(trace(tau)) << ","
        << format_g17(eval_interior_trace(nm, coeffs, tau)) << "\n";
  }
  write_run_json(out_path(cfg, "run.json"), cfg, {}, "project", args.seed);
  std::cout << "interface " << seg.id << ": nonmortar side is subdomain "
            << seg.nonmortar.subdomain << ", " << seg.nonmortar_subintervals()
            << " subintervals, multiplier dimension "
            << multiplier_dim(seg.nonmortar_subintervals(), seg.nonmortar.degree) << "\n"
            << "wrote " << out_path(cfg, "projection.csv") << "\n";
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"mortar finite element solver and convergence studies"};
  app.require_subcommand(1);

  CommonArgs solve_args, conv_args, time_args, neg_args, proj_args;
  CLI::App* solve = app.add_subcommand("solve", "single solve, solution samples + summary");
  add_common(solve, solve_args);
  CLI::App* conv = app.add_subcommand("convergence", "spatial refinement study");
  add_common(conv, conv_args);
  CLI::App* timec = app.add_subcommand("time-convergence",
                                       "temporal refinement study on a fixed mesh");
  add_common(timec, time_args);
  CLI::App* neg = app.add_subcommand("negative-norm",
                                     "refinement study with negative-order seminorm");
  add_common(neg, neg_args);
  CLI::App* proj = app.add_subcommand("project", "mortar projection demo on one interface");
  add_common(proj, proj_args);

  try {
    app.parse(argc, argv);
    if (solve->parsed()) return cmd_solve(solve_args);
    if (conv->parsed()) return run_study(conv_args, "convergence");
    if (timec->parsed()) return run_study(time_args, "time-convergence");
    if (neg->parsed()) return run_study(neg_args, "negative-norm");
    if (proj->parsed()) return cmd_project(proj_args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const ValidationError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
