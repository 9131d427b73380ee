#pragma once

#include <string>
#include <vector>

#include "ncpl/harness/config.hpp"

namespace ncpl {

/// A trace CSV read back: '#' lines skipped, first other line is the header.
struct CsvTrace {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  static CsvTrace read(const std::string& path);
  int column(const std::string& name) const;
};

struct PlotSeries {
  std::string label;
  std::vector<std::string> traces;  ///< seeds; drawn as mean with a ±1 std band
};

struct PlotPanel {
  std::string title;
  std::string column;
  bool log_y = true;
  std::vector<PlotSeries> series;
};

struct PlotSpec {
  std::string output;
  int panel_width = 360;
  int panel_height = 280;
  std::vector<PlotPanel> panels;
};

PlotSpec parse_plot_spec(const json& j);

/// Self-contained SVG. Output depends only on the spec and the trace bytes.
std::string render_svg(const PlotSpec& spec);

/// render_svg to spec.output (or `path`).
void plot_to_file(const PlotSpec& spec, const std::string& path = "");

/// Three panels: generator gradient norm, critic gradient norm, distance to optimum.
PlotSpec figure1_layout(const std::vector<PlotSeries>& series, const std::string& output);

}  // namespace ncpl
