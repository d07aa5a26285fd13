#pragma once

#include <optional>
#include <string>

#include "core/cluster.hpp"
#include "core/interpret.hpp"
#include "core/mds.hpp"

namespace semmap {

struct PlotOptions {
  std::size_t width = 800;
  std::size_t height = 600;
};

// 2-D scatter of the chosen dimension pair (1-based), colored by the layer
// when given. Fixed canvas, 5% margins, byte-stable output.
std::string plot_map(const MdsSolution& solution,
                     const std::optional<ColoringLayer>& layer, std::size_t dim_x,
                     std::size_t dim_y, const PlotOptions& opts);

std::string plot_dendrogram(const Dendrogram& dendrogram, const PlotOptions& opts);

std::string plot_elbow(const ElbowScan& scan, const PlotOptions& opts);

}  // namespace semmap
