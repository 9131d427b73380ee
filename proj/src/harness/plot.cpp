#include "ncpl/harness/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "ncpl/errors.hpp"

namespace ncpl {

namespace {

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

struct Band {
  std::vector<double> x, mean, lo, hi;
};

Band aggregate(const PlotSeries& s, const std::string& column) {
  std::vector<CsvTrace> traces;
  for (const auto& path : s.traces) traces.push_back(CsvTrace::read(path));
  Band b;
  if (traces.empty()) return b;
  std::size_t n = std::numeric_limits<std::size_t>::max();
  for (const auto& t : traces) n = std::min(n, t.rows.size());
  std::vector<int> cols;
  for (std::size_t k = 0; k < traces.size(); ++k) {
    const int c = traces[k].column(column);
    if (c < 0) throw ConfigError("plot: trace '" + s.traces[k] + "' has no column '" + column + "'");
    cols.push_back(c);
  }
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0, sq = 0.0;
    for (std::size_t k = 0; k < traces.size(); ++k) {
      const double v = traces[k].rows[i][cols[k]];
      sum += v;
      sq += v * v;
    }
    const double m = sum / static_cast<double>(traces.size());
    const double var = traces.size() > 1
                           ? std::max(0.0, (sq - sum * m) / static_cast<double>(traces.size() - 1))
                           : 0.0;
    const double sd = std::sqrt(var);
    b.x.push_back(traces[0].rows[i][0]);
    b.mean.push_back(m);
    b.lo.push_back(m - sd);
    b.hi.push_back(m + sd);
  }
  return b;
}

}  // namespace

CsvTrace CsvTrace::read(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("plot: cannot open trace '" + path + "'");
  CsvTrace t;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (t.header.empty()) {
      t.header = cells;
      continue;
    }
    std::vector<double> row;
    for (const auto& c : cells) row.push_back(c.empty() ? std::numeric_limits<double>::quiet_NaN() : std::strtod(c.c_str(), nullptr));
    t.rows.push_back(std::move(row));
  }
  return t;
}

int CsvTrace::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return static_cast<int>(i);
  }
  return -1;
}

PlotSpec parse_plot_spec(const json& j) {
  try {
    PlotSpec s;
    s.output = j.value("output", "");
    s.panel_width = j.value("panel_width", s.panel_width);
    s.panel_height = j.value("panel_height", s.panel_height);
    for (const auto& p : j.at("panels")) {
      PlotPanel panel;
      panel.title = p.value("title", "");
      panel.column = p.at("column").get<std::string>();
      panel.log_y = p.value("log_y", true);
      for (const auto& se : p.value("series", json::array())) {
        panel.series.push_back({se.value("label", ""), se.value("traces", std::vector<std::string>{})});
      }
      s.panels.push_back(std::move(panel));
    }
    return s;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("plot spec: ") + e.what());
  }
}

std::string render_svg(const PlotSpec& spec) {
  const int W = spec.panel_width, H = spec.panel_height;
  const int total_w = W * static_cast<int>(std::max<std::size_t>(1, spec.panels.size()));
  const double ml = 58, mr = 12, mt = 28, mb = 40;
  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(total_w) + "\" height=\"" +
         std::to_string(H) + "\" viewBox=\"0 0 " + std::to_string(total_w) + " " + std::to_string(H) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t pi = 0; pi < spec.panels.size(); ++pi) {
    const PlotPanel& panel = spec.panels[pi];
    const double ox = static_cast<double>(W) * static_cast<double>(pi);
    std::vector<Band> bands;
    for (const auto& s : panel.series) bands.push_back(aggregate(s, panel.column));
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& b : bands) {
      for (std::size_t i = 0; i < b.x.size(); ++i) {
        xmin = std::min(xmin, b.x[i]);
        xmax = std::max(xmax, b.x[i]);
        for (double v : {b.mean[i], b.lo[i], b.hi[i]}) {
          if (!std::isfinite(v) || (panel.log_y && v <= 0.0)) continue;
          ymin = std::min(ymin, v);
          ymax = std::max(ymax, v);
        }
      }
    }
    if (!std::isfinite(xmin)) xmin = 0, xmax = 1;
    if (!std::isfinite(ymin)) ymin = panel.log_y ? 1e-3 : 0.0, ymax = panel.log_y ? 1.0 : 1.0;
    if (xmax <= xmin) xmax = xmin + 1;
    double ly0 = panel.log_y ? std::floor(std::log10(ymin)) : ymin;
    double ly1 = panel.log_y ? std::ceil(std::log10(ymax)) : ymax;
    if (ly1 <= ly0) ly1 = ly0 + 1;
    const double px0 = ox + ml, px1 = ox + W - mr, py0 = H - mb, py1 = mt;
    auto sx = [&](double x) { return px0 + (x - xmin) / (xmax - xmin) * (px1 - px0); };
    auto sy = [&](double y) {
      double t = panel.log_y ? std::log10(std::max(y, std::pow(10.0, ly0))) : y;
      t = std::clamp(t, ly0, ly1);
      return py0 + (t - ly0) / (ly1 - ly0) * (py1 - py0);
    };
    svg += "<g>\n<rect x=\"" + num(px0) + "\" y=\"" + num(py1) + "\" width=\"" + num(px1 - px0) + "\" height=\"" +
           num(py0 - py1) + "\" fill=\"none\" stroke=\"#333\"/>\n";
    svg += "<text x=\"" + num((px0 + px1) / 2) + "\" y=\"18\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"13\">" + escape(panel.title.empty() ? panel.column : panel.title) + "</text>\n";
    // y ticks
    if (panel.log_y) {
      for (int e = static_cast<int>(ly0); e <= static_cast<int>(ly1); ++e) {
        const double y = sy(std::pow(10.0, e));
        svg += "<line x1=\"" + num(px0 - 4) + "\" y1=\"" + num(y) + "\" x2=\"" + num(px0) + "\" y2=\"" + num(y) +
               "\" stroke=\"#333\"/><text x=\"" + num(px0 - 6) + "\" y=\"" + num(y + 4) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">1e" + std::to_string(e) + "</text>\n";
      }
    } else {
      for (int k = 0; k <= 4; ++k) {
        const double v = ly0 + (ly1 - ly0) * k / 4.0;
        const double y = sy(v);
        svg += "<text x=\"" + num(px0 - 6) + "\" y=\"" + num(y + 4) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" + tick_label(v) + "</text>\n";
      }
    }
    for (int k = 0; k <= 4; ++k) {
      const double v = xmin + (xmax - xmin) * k / 4.0;
      svg += "<text x=\"" + num(sx(v)) + "\" y=\"" + num(py0 + 16) +
             "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">" + tick_label(std::round(v)) + "</text>\n";
    }
    svg += "<text x=\"" + num((px0 + px1) / 2) + "\" y=\"" + num(static_cast<double>(H) - 6) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">iteration</text>\n";
    for (std::size_t si = 0; si < bands.size(); ++si) {
      const Band& b = bands[si];
      const char* color = kPalette[si % (sizeof kPalette / sizeof kPalette[0])];
      if (b.x.empty()) continue;
      std::string band = "<polygon fill=\"" + std::string(color) + "\" fill-opacity=\"0.18\" stroke=\"none\" points=\"";
      for (std::size_t i = 0; i < b.x.size(); ++i) band += num(sx(b.x[i])) + "," + num(sy(b.hi[i])) + " ";
      for (std::size_t i = b.x.size(); i-- > 0;) band += num(sx(b.x[i])) + "," + num(sy(b.lo[i])) + " ";
      band += "\"/>\n";
      svg += band;
      std::string line = "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t i = 0; i < b.x.size(); ++i) line += num(sx(b.x[i])) + "," + num(sy(b.mean[i])) + " ";
      line += "\"/>\n";
      svg += line;
      const double ly = py1 + 14 + 14 * static_cast<double>(si);
      svg += "<line x1=\"" + num(px1 - 110) + "\" y1=\"" + num(ly - 4) + "\" x2=\"" + num(px1 - 92) + "\" y2=\"" +
             num(ly - 4) + "\" stroke=\"" + color + "\" stroke-width=\"2\"/><text x=\"" + num(px1 - 88) + "\" y=\"" +
             num(ly) + "\" font-family=\"sans-serif\" font-size=\"10\">" + escape(panel.series[si].label) + "</text>\n";
    }
    svg += "</g>\n";
  }
  svg += "</svg>\n";
  return svg;
}

void plot_to_file(const PlotSpec& spec, const std::string& path) {
  const std::string target = path.empty() ? spec.output : path;
  if (target.empty()) throw ConfigError("plot: no output path");
  const std::string svg = render_svg(spec);
  std::ofstream out(target, std::ios::binary);
  if (!out) throw ConfigError("plot: cannot write '" + target + "'");
  out << svg;
}

PlotSpec figure1_layout(const std::vector<PlotSeries>& series, const std::string& output) {
  PlotSpec s;
  s.output = output;
  s.panels = {{"generator gradient norm", "grad_fx", true, series},
              {"critic gradient norm", "grad_fy", true, series},
              {"distance to optimum", "dist_to_opt", true, series}};
  return s;
}

}  // namespace ncpl
