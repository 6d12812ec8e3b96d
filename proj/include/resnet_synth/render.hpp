#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "resnet_synth/core_net.hpp"
#include "resnet_synth/error.hpp"
#include "resnet_synth/geometry.hpp"
#include "resnet_synth/verify.hpp"

namespace resnet_synth {

struct RenderBounds {
  double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;
};

// cells[row][col]; row 0 is the bottom of the figure. 0 means no category.
struct RegionGrid {
  std::size_t width = 0, height = 0;
  RenderBounds bounds;
  std::vector<std::vector<int>> cells;

  double cell_x(std::size_t col) const { return bounds.x0 + (col + 0.5) * (bounds.x1 - bounds.x0) / width; }
  double cell_y(std::size_t row) const { return bounds.y0 + (row + 0.5) * (bounds.y1 - bounds.y0) / height; }
};

// Argmax of the readout; ties go to the lower category.
inline int readout_category(const Vector& readout, double tau = kZeroTolerance) {
  int best = 0;
  for (std::size_t i = 0; i < readout.size(); ++i) {
    if (readout[i] > tau && (best == 0 || readout[i] > readout[best - 1])) best = static_cast<int>(i) + 1;
  }
  return best;
}

inline RegionGrid sample_regions(const ResNet& net, const RenderBounds& bounds, std::size_t width, std::size_t height,
                                 double tau = kZeroTolerance) {
  if (net.input_dim() != 2) {
    throw Error(ErrorKind::invalid_input,
                "render needs a 2-D input network, this one takes " + std::to_string(net.input_dim()) + " inputs");
  }
  if (width == 0 || height == 0) throw Error(ErrorKind::invalid_input, "render resolution must be at least 1x1");
  if (!(bounds.x0 < bounds.x1) || !(bounds.y0 < bounds.y1)) {
    throw Error(ErrorKind::invalid_input, "render bounds must satisfy x0 < x1 and y0 < y1");
  }
  RegionGrid grid{width, height, bounds, std::vector<std::vector<int>>(height, std::vector<int>(width, 0))};
  for (std::size_t r = 0; r < height; ++r) {
    for (std::size_t c = 0; c < width; ++c) {
      grid.cells[r][c] = readout_category(eval_net(net, Vector{grid.cell_x(c), grid.cell_y(r)}).output, tau);
    }
  }
  return grid;
}

namespace detail {

inline std::string category_color(int category) {
  static constexpr std::array<const char*, 10> palette = {"#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#b07aa1",
                                                         "#76b7b2", "#edc948", "#ff9da7", "#9c755f", "#bab0ac"};
  if (category <= 0) return "#f4f4f4";
  return palette[static_cast<std::size_t>(category - 1) % palette.size()];
}

}  // namespace detail

// One rect per horizontal run of equal cells.
inline void write_svg(std::ostream& out, const RegionGrid& grid, const LabeledDataset* overlay = nullptr,
                      double cell_px = 0.0) {
  if (cell_px <= 0.0) cell_px = std::max(1.0, 400.0 / static_cast<double>(std::max(grid.width, grid.height)));
  const double w = cell_px * grid.width;
  const double h = cell_px * grid.height;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 " << w
      << ' ' << h << "\" shape-rendering=\"crispEdges\">\n";
  for (std::size_t r = 0; r < grid.height; ++r) {
    const double y = (grid.height - 1 - r) * cell_px;
    std::size_t c = 0;
    while (c < grid.width) {
      std::size_t end = c;
      while (end < grid.width && grid.cells[r][end] == grid.cells[r][c]) ++end;
      out << "<rect x=\"" << c * cell_px << "\" y=\"" << y << "\" width=\"" << (end - c) * cell_px << "\" height=\""
          << cell_px << "\" fill=\"" << detail::category_color(grid.cells[r][c]) << "\"/>\n";
      c = end;
    }
  }
  if (overlay) {
    const auto& b = grid.bounds;
    for (std::size_t i = 0; i < overlay->size(); ++i) {
      const Vector& p = overlay->points[i];
      const double px = (p[0] - b.x0) / (b.x1 - b.x0) * w;
      const double py = (b.y1 - p[1]) / (b.y1 - b.y0) * h;
      out << "<circle cx=\"" << px << "\" cy=\"" << py << "\" r=\"4\" fill=\""
          << detail::category_color(overlay->labels[i]) << "\" stroke=\"#000\" stroke-width=\"1\"/>\n";
    }
  }
  out << "</svg>\n";
}

inline std::string render_regions_svg(const ResNet& net, const RenderBounds& bounds, std::size_t width,
                                      std::size_t height, const LabeledDataset* overlay = nullptr) {
  if (overlay && overlay->n != 2) throw Error(ErrorKind::invalid_input, "overlay dataset must be 2-D");
  std::ostringstream out;
  write_svg(out, sample_regions(net, bounds, width, height), overlay);
  return out.str();
}

}  // namespace resnet_synth
