#pragma once

#include <string>
#include <vector>

namespace decaylab::runner::svg {

struct Series {
  std::string label;
  std::vector<double> x, y;
  bool dashed = false;
};

struct Axes {
  std::string title, xlabel, ylabel;
  bool logx = false, logy = false;
};

// Static line chart; points with non-positive coordinates on a log axis are
// dropped.
std::string line_plot(const Axes& axes, const std::vector<Series>& series);

// Layers stacked bottom-up over a shared x, with an optional outline series.
std::string stacked_plot(const Axes& axes, const std::vector<double>& x, const std::vector<std::vector<double>>& layers,
                         const std::vector<std::string>& labels, const Series* outline = nullptr);

}  // namespace decaylab::runner::svg
