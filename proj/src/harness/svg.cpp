#include "bap/harness/svg.hpp"

#include "bap/errors.hpp"
#include "bap/harness/export.hpp"
#include "bap/oracle.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace bap::harness {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

// Sutherland-Hodgman against a single half-space.
std::vector<Point> clip(const std::vector<Point>& poly, const HalfSpace& h) {
  std::vector<Point> out;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& cur = poly[i];
    const Point& nxt = poly[(i + 1) % n];
    const double rc = residual(h, cur);
    const double rn = residual(h, nxt);
    if (rc <= 0.0) out.push_back(cur);
    if ((rc < 0.0 && rn > 0.0) || (rc > 0.0 && rn < 0.0)) {
      const double t = rc / (rc - rn);
      out.push_back(cur + t * (nxt - cur));
    }
  }
  return out;
}

}  // namespace

std::vector<Point> clip_polygon(const Polyhedron& p, const Box& box) {
  if (p.dim() != 2) throw UnsupportedPlotError("polygon clipping is 2-D only");
  std::vector<Point> poly = {make_point({box.xmin, box.ymin}), make_point({box.xmax, box.ymin}),
                             make_point({box.xmax, box.ymax}), make_point({box.xmin, box.ymax})};
  for (const auto& h : p.halfspaces()) {
    if (h.is_trivial()) continue;
    poly = clip(poly, h);
    if (poly.empty()) break;
  }
  return poly;
}

std::string render_svg(const IterateTrace& trace, const Polyhedron& a_set, const Polyhedron& b_set) {
  if (trace.dim() != 2 || a_set.dim() != 2 || b_set.dim() != 2)
    throw UnsupportedPlotError("SVG plots need a 2-D configuration, got dimension " + std::to_string(trace.dim()));

  Box box{1e300, -1e300, 1e300, -1e300};
  auto extend = [&](const Point& x) {
    box.xmin = std::min(box.xmin, x[0]);
    box.xmax = std::max(box.xmax, x[0]);
    box.ymin = std::min(box.ymin, x[1]);
    box.ymax = std::max(box.ymax, x[1]);
  };
  for (const auto& p : trace.a_points) extend(p.point);
  for (const auto& p : trace.b_points) extend(p.point);
  // Keep both sets in view even when the trace stays away from them.
  for (const auto* set : {&a_set, &b_set}) {
    try {
      extend(exact_project(*set, trace.a_points.front().point));
    } catch (const Error&) {
      // beyond enumeration capacity: the trace box alone decides
    }
  }
  const double w = std::max(box.xmax - box.xmin, 1.0);
  const double h = std::max(box.ymax - box.ymin, 1.0);
  const double cx = 0.5 * (box.xmin + box.xmax), cy = 0.5 * (box.ymin + box.ymax);
  box = {cx - 0.6 * w, cx + 0.6 * w, cy - 0.6 * h, cy + 0.6 * h};

  const double width = 600.0;
  const double scale = width / (box.xmax - box.xmin);
  const double height = std::clamp((box.ymax - box.ymin) * scale, 100.0, 1200.0);
  const double yscale = height / (box.ymax - box.ymin);
  auto sx = [&](double x) { return (x - box.xmin) * scale; };
  auto sy = [&](double y) { return (box.ymax - y) * yscale; };

  std::uint64_t last_index = 1;
  for (const auto& p : trace.a_points) last_index = std::max(last_index, p.index);
  for (const auto& p : trace.b_points) last_index = std::max(last_index, p.index);
  auto opacity = [&](std::uint64_t index) {
    return 0.1 + 0.9 * static_cast<double>(index) / static_cast<double>(last_index);
  };

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width) << "\" height=\"" << fmt(height)
      << "\" viewBox=\"0 0 " << fmt(width) << ' ' << fmt(height) << "\">\n";

  auto polygon = [&](const Polyhedron& p, const char* cls, const char* color) {
    const auto verts = clip_polygon(p, box);
    if (verts.empty()) return;
    out << "  <polygon class=\"" << cls << "\" fill=\"" << color << "\" fill-opacity=\"0.2\" points=\"";
    for (std::size_t i = 0; i < verts.size(); ++i)
      out << (i ? " " : "") << fmt(sx(verts[i][0])) << ',' << fmt(sy(verts[i][1]));
    out << "\"/>\n";
  };
  polygon(a_set, "set-A", "red");
  polygon(b_set, "set-B", "blue");

  for (const auto& p : trace.a_points)
    out << "  <circle class=\"iterate-a\" cx=\"" << fmt(sx(p.point[0])) << "\" cy=\"" << fmt(sy(p.point[1]))
        << "\" r=\"4\" fill=\"red\" fill-opacity=\"" << fmt(opacity(p.index)) << "\"/>\n";
  for (const auto& p : trace.b_points)
    out << "  <rect class=\"iterate-b\" x=\"" << fmt(sx(p.point[0]) - 4) << "\" y=\"" << fmt(sy(p.point[1]) - 4)
        << "\" width=\"8\" height=\"8\" fill=\"blue\" fill-opacity=\"" << fmt(opacity(p.index)) << "\"/>\n";

  const Point& a0 = trace.a_points.front().point;
  out << "  <text x=\"" << fmt(sx(a0[0]) + 7) << "\" y=\"" << fmt(sy(a0[1]) + 4)
      << "\" font-family=\"sans-serif\" font-size=\"12\">a0</text>\n";
  out << "</svg>\n";
  return out.str();
}

void plot_trace(const IterateTrace& trace, const Polyhedron& a_set, const Polyhedron& b_set,
                const std::filesystem::path& path) {
  write_text(path, render_svg(trace, a_set, b_set));
}

}  // namespace bap::harness
