#pragma once

#include "bap/ahlwb.hpp"
#include "bap/geometry.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace bap::harness {

struct Box {
  double xmin, xmax, ymin, ymax;
};

/// Clips the rectangle `box` by every half-space of p (2-D only); returns
/// the polygon vertices counter-clockwise, empty when nothing remains.
std::vector<Point> clip_polygon(const Polyhedron& p, const Box& box);

/// Standalone SVG of a 2-D run: A and B as shaded polygons clipped to the
/// bounding box of the trace and the points of A and B nearest to a0,
/// inflated by 20%, a-iterates as circles, b-iterates as
/// squares, opacity growing linearly with the point index, a0 labelled.
/// Throws UnsupportedPlotError unless the dimension is 2.
std::string render_svg(const IterateTrace& trace, const Polyhedron& a_set, const Polyhedron& b_set);

void plot_trace(const IterateTrace& trace, const Polyhedron& a_set, const Polyhedron& b_set,
                const std::filesystem::path& path);

}  // namespace bap::harness
