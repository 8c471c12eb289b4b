#include "mstlab/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "json.hpp"

#include "mstlab/format.hpp"

namespace mstlab {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json slope_json(const SlopeFit& fit) {
  ordered_json j;
  j["slope"] = fit.slope;
  j["stderr"] = fit.stderr_slope;
  j["ci_low"] = fit.slope - 1.96 * fit.stderr_slope;
  j["ci_high"] = fit.slope + 1.96 * fit.stderr_slope;
  j["n_points"] = fit.n_points;
  return j;
}

ordered_json mu_json(const std::vector<MuCell>& mu) {
  ordered_json rows = ordered_json::array();
  for (const MuCell& cell : mu) {
    ordered_json r;
    r["x"] = cell.x;
    r["mu_hat"] = cell.mu_mean;
    r["density_hat"] = cell.density_mean;
    r["stderr"] = cell.stderr_mu;
    r["trusted"] = cell.trusted;
    rows.push_back(r);
  }
  return rows;
}

std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

std::string curve_csv(const RunReport& rep) {
  std::ostringstream out;
  out << "size,n,delta,k,lb_mean,lb_stderr,ub_mean,ub_stderr,ratio,predicted,"
         "trusted,in_fit\n";
  for (const SizeReport& sz : rep.sizes)
    for (const CurveCell& c : sz.cells)
      out << c.size << ',' << c.n_vertices << ',' << format_double(c.delta) << ','
          << c.k << ',' << format_double(c.lb_mean) << ','
          << format_double(c.lb_stderr) << ',' << format_double(c.ub_mean) << ','
          << format_double(c.ub_stderr) << ',' << format_double(c.ratio) << ','
          << format_double(c.predicted) << ',' << (c.trusted ? 1 : 0) << ','
          << (c.in_fit ? 1 : 0) << '\n';
  return out.str();
}

std::string mu_csv(const RunReport& rep) {
  std::ostringstream out;
  out << "size,x,mu_hat,density_hat,stderr_mu,trusted\n";
  for (const SizeReport& sz : rep.sizes)
    for (const MuCell& c : sz.mu)
      out << sz.size << ',' << format_double(c.x) << ','
          << format_double(c.mu_mean) << ',' << format_double(c.density_mean)
          << ',' << format_double(c.stderr_mu) << ',' << (c.trusted ? 1 : 0)
          << '\n';
  return out.str();
}

std::string configs_csv(const RunReport& rep) {
  std::ostringstream out;
  out << "size,n,usable_blocks,freq_mean,freq_stderr,q_pred,cost_mean,"
         "cost_stderr,r_pred,c_slope,has_prediction\n";
  for (const SizeReport& sz : rep.sizes) {
    if (!sz.configs) continue;
    const ConfigLawCell& c = *sz.configs;
    out << c.size << ',' << c.n_vertices << ',' << c.usable_blocks << ','
        << format_double(c.freq_mean) << ',' << format_double(c.freq_stderr)
        << ',' << format_double(c.q_pred) << ',' << format_double(c.cost_mean)
        << ',' << format_double(c.cost_stderr) << ',' << format_double(c.r_pred)
        << ',' << format_double(c.c_slope) << ',' << (c.has_prediction ? 1 : 0)
        << '\n';
  }
  return out.str();
}

std::string curve_svg(const RunReport& rep) {
  // Static log-log plot: solid = ub, dashed = lb, one color per size.
  const double width = 640, height = 440;
  const double left = 70, right = 20, top = 20, bottom = 50;
  const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                           "#ff7f0e", "#8c564b"};

  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  bool first = true;
  for (const SizeReport& sz : rep.sizes)
    for (const CurveCell& c : sz.cells)
      for (double v : {c.lb_mean, c.ub_mean}) {
        if (v <= 0.0 || c.delta <= 0.0) continue;
        double lx = std::log10(c.delta), ly = std::log10(v);
        if (first) {
          xmin = xmax = lx;
          ymin = ymax = ly;
          first = false;
        }
        xmin = std::min(xmin, lx);
        xmax = std::max(xmax, lx);
        ymin = std::min(ymin, ly);
        ymax = std::max(ymax, ly);
      }
  if (first) return {};
  if (xmax - xmin < 1e-9) xmax = xmin + 1.0;
  if (ymax - ymin < 1e-9) ymax = ymin + 1.0;
  const double xpad = 0.05 * (xmax - xmin), ypad = 0.05 * (ymax - ymin);
  xmin -= xpad;
  xmax += xpad;
  ymin -= ypad;
  ymax += ypad;

  auto px = [&](double lx) {
    return left + (lx - xmin) / (xmax - xmin) * (width - left - right);
  };
  auto py = [&](double ly) {
    return height - bottom - (ly - ymin) / (ymax - ymin) * (height - top - bottom);
  };

  std::ostringstream svg;
  svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width
      << "' height='" << height << "' viewBox='0 0 " << width << ' ' << height
      << "'>\n";
  svg << "<rect width='100%' height='100%' fill='white'/>\n";
  svg << "<g font-family='sans-serif' font-size='12'>\n";

  // axes
  svg << "<line x1='" << left << "' y1='" << height - bottom << "' x2='"
      << width - right << "' y2='" << height - bottom
      << "' stroke='black'/>\n";
  svg << "<line x1='" << left << "' y1='" << top << "' x2='" << left << "' y2='"
      << height - bottom << "' stroke='black'/>\n";
  if (!rep.sizes.empty())
    for (const CurveCell& c : rep.sizes.front().cells) {
      double x = px(std::log10(c.delta));
      svg << "<line x1='" << x << "' y1='" << height - bottom << "' x2='" << x
          << "' y2='" << height - bottom + 4 << "' stroke='black'/>\n";
      svg << "<text x='" << x << "' y='" << height - bottom + 18
          << "' text-anchor='middle'>" << label(c.delta) << "</text>\n";
    }
  for (int e = static_cast<int>(std::ceil(ymin)); e <= std::floor(ymax); ++e) {
    double y = py(e);
    svg << "<line x1='" << left - 4 << "' y1='" << y << "' x2='" << left
        << "' y2='" << y << "' stroke='black'/>\n";
    svg << "<text x='" << left - 8 << "' y='" << y + 4
        << "' text-anchor='end'>1e" << e << "</text>\n";
  }
  svg << "<text x='" << (left + width - right) / 2 << "' y='" << height - 12
      << "' text-anchor='middle'>delta</text>\n";
  svg << "<text x='18' y='" << (top + height - bottom) / 2
      << "' text-anchor='middle' transform='rotate(-90 18 "
      << (top + height - bottom) / 2 << ")'>epsilon per vertex</text>\n";

  for (std::size_t si = 0; si < rep.sizes.size(); ++si) {
    const SizeReport& sz = rep.sizes[si];
    if (sz.cells.empty()) continue;
    const char* color = palette[si % (sizeof palette / sizeof palette[0])];
    for (int pass = 0; pass < 2; ++pass) {
      std::ostringstream pts;
      for (const CurveCell& c : sz.cells) {
        double v = pass == 0 ? c.ub_mean : c.lb_mean;
        if (v <= 0.0) continue;
        pts << px(std::log10(c.delta)) << ',' << py(std::log10(v)) << ' ';
      }
      svg << "<polyline points='" << pts.str() << "' fill='none' stroke='"
          << color << "'" << (pass == 1 ? " stroke-dasharray='5 3'" : "")
          << "/>\n";
    }
    svg << "<text x='" << left + 10 << "' y='" << top + 16 + 16 * si
        << "' fill='" << color << "'>size " << sz.size
        << ": alpha_ub=" << label(sz.alpha_ub.slope)
        << ", alpha_lb=" << label(sz.alpha_lb.slope) << "</text>\n";
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

}  // namespace

std::string report_to_json(const RunReport& rep) {
  ordered_json j;
  j["config"] = ordered_json::parse(config_to_json(rep.config));
  j["sizes"] = ordered_json::array();
  for (const SizeReport& sz : rep.sizes) {
    ordered_json s;
    s["size"] = sz.size;
    s["n_vertices"] = sz.n_vertices;
    if (!sz.cells.empty()) {
      ordered_json rows = ordered_json::array();
      for (const CurveCell& c : sz.cells) {
        ordered_json r;
        r["delta"] = c.delta;
        r["k"] = c.k;
        r["lb_mean"] = c.lb_mean;
        r["lb_stderr"] = c.lb_stderr;
        r["ub_mean"] = c.ub_mean;
        r["ub_stderr"] = c.ub_stderr;
        r["ratio"] = c.ratio;
        r["predicted"] = c.predicted;
        r["trusted"] = c.trusted;
        r["in_fit"] = c.in_fit;
        rows.push_back(r);
      }
      s["curve"] = rows;
      s["alpha_lb"] = slope_json(sz.alpha_lb);
      s["alpha_ub"] = slope_json(sz.alpha_ub);
    }
    if (!sz.mu.empty()) {
      s["f_mu_hat"] = sz.f_mu_hat;
      s["mu"] = mu_json(sz.mu);
    }
    if (sz.configs) {
      const ConfigLawCell& c = *sz.configs;
      ordered_json cj;
      cj["usable_blocks"] = c.usable_blocks;
      cj["freq_mean"] = c.freq_mean;
      cj["freq_stderr"] = c.freq_stderr;
      cj["cost_mean"] = c.cost_mean;
      cj["cost_stderr"] = c.cost_stderr;
      cj["per_vertex_observed"] =
          c.freq_mean * static_cast<double>(c.usable_blocks) /
          static_cast<double>(c.n_vertices);
      if (c.has_prediction) {
        cj["q_pred"] = c.q_pred;
        cj["r_pred"] = c.r_pred;
        cj["c_slope"] = c.c_slope;
        cj["per_vertex_pred"] = c.q_pred *
                                static_cast<double>(c.usable_blocks) /
                                static_cast<double>(c.n_vertices);
      }
      s["configs"] = cj;
    }
    j["sizes"].push_back(s);
  }
  if (rep.percolation) {
    const PercolationReport& p = *rep.percolation;
    ordered_json pj;
    pj["window"] = p.window;
    pj["replicas"] = p.replicas;
    pj["cutoff_max"] = p.cutoff_max;
    pj["interior_symdiff"] = p.interior_symdiff;
    pj["boundary_symdiff"] = p.boundary_symdiff;
    pj["mu"] = mu_json(p.mu);
    j["percolation"] = pj;
  }
  j["replica_failures"] = rep.replica_failures;
  return j.dump(2) + "\n";
}

void write_report_files(const RunReport& rep, const std::string& out_dir) {
  std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);
  write_file(dir / "report.json", report_to_json(rep));

  bool any_curve = false, any_mu = false, any_cfg = false;
  for (const SizeReport& sz : rep.sizes) {
    any_curve = any_curve || !sz.cells.empty();
    any_mu = any_mu || !sz.mu.empty();
    any_cfg = any_cfg || sz.configs.has_value();
  }
  if (any_curve) write_file(dir / "curve.csv", curve_csv(rep));
  if (any_mu) write_file(dir / "mu.csv", mu_csv(rep));
  if (any_cfg) write_file(dir / "configs.csv", configs_csv(rep));
  if (any_curve) write_file(dir / "curve.svg", curve_svg(rep));
}

}  // namespace mstlab
