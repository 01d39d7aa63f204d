#pragma once

#include <string>
#include <vector>

#include "bnn/network.hpp"

namespace bnn {

// Tiny deterministic SVG emitters for the experiment artifacts.  These are
// derived views of the CSVs: same numbers in, byte-identical markup out.

struct Series {
  std::string label;
  std::string color;
  std::vector<double> ys;  // x is the sample index plus the chart's x0
};

// Line chart with axes and tick labels.  When mark_zero is set, samples with
// y exactly 0 get a circle marker.
std::string svg_line_chart(const std::string& title,
                           const std::string& x_label,
                           const std::string& y_label,
                           const std::vector<Series>& series, double x0 = 0.0,
                           bool mark_zero = false);

// Space-time raster of {-1,+1} states: one column per time step, one row per
// neuron (neuron 0 on top), dark cells are +1.
std::string svg_raster(const std::string& title,
                       const std::vector<StateVector>& columns);

// One colored cell per entry: value < 0 red, > 0 green, 0 gray.  Used for
// modal deck choices over trials.
std::string svg_value_strip(const std::string& title,
                            const std::vector<int>& values);

}  // namespace bnn
