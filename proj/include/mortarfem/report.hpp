#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mortarfem/analysis.hpp"
#include "mortarfem/config.hpp"
#include "mortarfem/errors.hpp"

namespace mortarfem {

/// Shortest decimal form that round-trips a double.
inline std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string format_fixed(double v, int digits) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

struct StudyTable {
  std::vector<std::string> names;
  std::vector<std::vector<std::string>> rows;
};

namespace detail {

/// Order column: empty first cell, then the observed order between each
/// consecutive pair of rows with respect to the given parameter.
inline std::vector<std::string> order_column(const std::vector<double>& params,
                                             const std::vector<double>& errors) {
  std::vector<std::string> col(params.size());
  for (std::size_t i = 1; i < params.size(); ++i)
    col[i] = format_g17(std::log(errors[i - 1] / errors[i]) /
                        std::log(params[i - 1] / params[i]));
  return col;
}

} // namespace detail

/// Tabulate a refinement study. Orders are taken against h for a spatial
/// study and against r for a temporal one (fixed h).
inline StudyTable study_table(const std::vector<ConvergenceRecord>& records, bool temporal) {
  StudyTable t;
  const std::size_t n = records.size();
  std::vector<double> hs(n), rs(n), e2(n), ex(n);
  bool any_r = false, any_neg = false;
  for (std::size_t i = 0; i < n; ++i) {
    hs[i] = records[i].h;
    rs[i] = records[i].r;
    e2[i] = records[i].error_l2;
    ex[i] = records[i].error_x;
    any_r = any_r || records[i].r > 0.0;
    any_neg = any_neg || records[i].has_neg;
  }
  const std::vector<double>& param = temporal ? rs : hs;
  const char* tag = temporal ? "q" : "p";
  t.names = {"h"};
  if (any_r) t.names.push_back("r");
  t.names.insert(t.names.end(), {"error_l2", std::string(tag) + "_l2", "error_x",
                                 std::string(tag) + "_x"});
  const std::vector<std::string> p2 = detail::order_column(param, e2);
  const std::vector<std::string> px = detail::order_column(param, ex);
  std::vector<std::string> pn;
  if (any_neg) {
    std::vector<double> en(n);
    for (std::size_t i = 0; i < n; ++i) en[i] = records[i].error_neg;
    pn = detail::order_column(param, en);
    t.names.insert(t.names.end(), {"error_neg", std::string(tag) + "_neg"});
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::string> row{format_g17(hs[i])};
    if (any_r) row.push_back(rs[i] > 0.0 ? format_g17(rs[i]) : "");
    row.insert(row.end(), {format_g17(e2[i]), p2[i], format_g17(ex[i]), px[i]});
    if (any_neg) {
      row.push_back(records[i].has_neg ? format_g17(records[i].error_neg) : "");
      row.push_back(pn[i]);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

inline void write_csv(const std::string& path, const StudyTable& table) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open output file: " + path);
  for (std::size_t j = 0; j < table.names.size(); ++j)
    out << table.names[j] << (j + 1 < table.names.size() ? "," : "\n");
  for (const auto& row : table.rows)
    for (std::size_t j = 0; j < row.size(); ++j)
      out << row[j] << (j + 1 < row.size() ? "," : "\n");
}

struct PlotSeries {
  std::string name;
  std::vector<double> values;
  std::string color;
};

/// Self-contained log-log SVG plot of error series against a refinement
/// parameter, with the least-squares slope of each series in the legend.
inline void write_svg_loglog(const std::string& path, const std::string& title,
                             const std::string& xlabel, const std::vector<double>& xs,
                             const std::vector<PlotSeries>& series) {
  if (xs.size() < 2 || series.empty())
    throw ValidationError("write_svg_loglog: need at least two points and one series");
  const double width = 640, height = 480;
  const double ml = 70, mr = 160, mt = 50, mb = 55;
  double lx0 = std::log10(xs.front()), lx1 = lx0, ly0 = 0, ly1 = 0;
  bool first = true;
  for (const double x : xs) {
    lx0 = std::min(lx0, std::log10(x));
    lx1 = std::max(lx1, std::log10(x));
  }
  for (const PlotSeries& s : series) {
    for (const double v : s.values) {
      if (!(v > 0.0)) throw ValidationError("write_svg_loglog: values must be positive");
      const double lv = std::log10(v);
      if (first) {
        ly0 = ly1 = lv;
        first = false;
      }
      ly0 = std::min(ly0, lv);
      ly1 = std::max(ly1, lv);
    }
  }
  const double padx = 0.05 * std::max(lx1 - lx0, 1e-12);
  const double pady = 0.05 * std::max(ly1 - ly0, 1e-12);
  lx0 -= padx;
  lx1 += padx;
  ly0 -= pady;
  ly1 += pady;
  const auto sx = [&](double lx) { return ml + (lx - lx0) / (lx1 - lx0) * (width - ml - mr); };
  const auto sy = [&](double ly) {
    return height - mb - (ly - ly0) / (ly1 - ly0) * (height - mt - mb);
  };
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open output file: " + path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << width / 2 << "\" y=\"28\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"16\">"
      << title << "</text>\n";
  // frame
  out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << width - ml - mr
      << "\" height=\"" << height - mt - mb
      << "\" fill=\"none\" stroke=\"#444\" stroke-width=\"1\"/>\n";
  // decade ticks
  for (int d = static_cast<int>(std::ceil(lx0)); d <= static_cast<int>(std::floor(lx1)); ++d) {
    const double px = sx(d);
    out << "<line x1=\"" << px << "\" y1=\"" << mt << "\" x2=\"" << px << "\" y2=\""
        << height - mb << "\" stroke=\"#ddd\"/>\n"
        << "<text x=\"" << px << "\" y=\"" << height - mb + 18
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">1e" << d
        << "</text>\n";
  }
  for (int d = static_cast<int>(std::ceil(ly0)); d <= static_cast<int>(std::floor(ly1)); ++d) {
    const double py = sy(d);
    out << "<line x1=\"" << ml << "\" y1=\"" << py << "\" x2=\"" << width - mr << "\" y2=\""
        << py << "\" stroke=\"#ddd\"/>\n"
        << "<text x=\"" << ml - 8 << "\" y=\"" << py + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">1e" << d
        << "</text>\n";
  }
  out << "<text x=\"" << (ml + width - mr) / 2 << "\" y=\"" << height - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << xlabel
      << "</text>\n";
  double legend_y = mt + 16;
  for (const PlotSeries& s : series) {
    if (s.values.size() != xs.size())
      throw ValidationError("write_svg_loglog: series length must match parameter list");
    out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < xs.size(); ++i)
      out << sx(std::log10(xs[i])) << "," << sy(std::log10(s.values[i])) << " ";
    out << "\"/>\n";
    for (std::size_t i = 0; i < xs.size(); ++i)
      out << "<circle cx=\"" << sx(std::log10(xs[i])) << "\" cy=\""
          << sy(std::log10(s.values[i])) << "\" r=\"3\" fill=\"" << s.color << "\"/>\n";
    const double slope = fit_order(xs, s.values);
    out << "<line x1=\"" << width - mr + 10 << "\" y1=\"" << legend_y - 4 << "\" x2=\""
        << width - mr + 34 << "\" y2=\"" << legend_y - 4 << "\" stroke=\"" << s.color
        << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << width - mr + 40 << "\" y=\"" << legend_y
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << s.name << " (slope "
        << format_fixed(slope, 2) << ")</text>\n";
    legend_y += 18;
  }
  out << "</svg>\n";
}

/// Machine-readable run metadata next to the tabulated results.
inline void write_run_json(const std::string& path, const RunConfig& cfg,
                           const std::vector<ConvergenceRecord>& records,
                           const std::string& command, unsigned long long seed) {
  nlohmann::json j;
  j["command"] = command;
  j["preset"] = cfg.preset_name;
  j["config_hash"] = config_hash(cfg);
  j["config"] = canonical_config(cfg);
  j["partition"] = cfg.partition;
  j["degree"] = cfg.degree;
  j["solution"] = cfg.solution;
  j["mode"] = cfg.mode;
  j["final_time"] = cfg.final_time;
  j["r_rule"] = cfg.r_rule;
  j["consistency_flux"] = cfg.consistency_flux;
  j["seed"] = seed;
  nlohmann::json recs = nlohmann::json::array();
  for (const ConvergenceRecord& r : records) {
    nlohmann::json jr;
    jr["h"] = r.h;
    if (r.r > 0.0) jr["r"] = r.r;
    jr["error_l2"] = r.error_l2;
    jr["error_x"] = r.error_x;
    if (r.has_neg) jr["error_neg"] = r.error_neg;
    recs.push_back(jr);
  }
  j["records"] = recs;
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open output file: " + path);
  out << j.dump(2) << "\n";
}

inline void ensure_out_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ValidationError("cannot create output directory: " + dir);
}

} // namespace mortarfem
