#ifndef PECOK_PLOT_HPP
#define PECOK_PLOT_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace pecok {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> median;
  std::vector<double> low;   // lower error-bar end
  std::vector<double> high;  // upper error-bar end
};

/// Self-contained SVG line plot with vertical error bars and a legend.
void write_svg_plot(std::ostream& out, const std::string& title, const std::string& x_label,
                    const std::string& y_label, const std::vector<PlotSeries>& series);

}  // namespace pecok

#endif  // PECOK_PLOT_HPP
