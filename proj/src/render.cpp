#include "evlab/render.hpp"

#include <algorithm>
#include <sstream>

#include "evlab/lyapunov.hpp"

namespace evlab {

std::string render_staircase_svg(const Configuration& s, const RenderOptions& options) {
  std::ostringstream os;
  const double margin = 30.0;
  if (s.is_ground()) {
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"240\" height=\"80\">\n"
       << "  <text x=\"10\" y=\"45\" font-family=\"sans-serif\" font-size=\"14\">"
       << "ground state: empty staircase, area 0</text>\n"
       << "</svg>\n";
    return os.str();
  }

  const auto path = staircase_path(s);
  const double width_sites = static_cast<double>(path.back().x);
  const double height_sites = static_cast<double>(path.front().y);
  const double cell = options.cell > 0 ? options.cell : std::clamp(480.0 / std::max(width_sites, height_sites), 2.0, 40.0);
  const double w = width_sites * cell + 2 * margin;
  const double h = height_sites * cell + 2 * margin;
  auto px = [&](std::int64_t x) { return margin + static_cast<double>(x) * cell; };
  auto py = [&](std::int64_t y) { return margin + (height_sites - static_cast<double>(y)) * cell; };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\">\n";
  os << "  <rect x=\"0\" y=\"0\" width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";

  // region under the staircase
  os << "  <polygon fill=\"#dde6f3\" stroke=\"none\" points=\"" << px(0) << ',' << py(0);
  for (const auto& pt : path) os << ' ' << px(pt.x) << ',' << py(pt.y);
  os << "\"/>\n";

  if (options.highlight_rect) {
    const auto r = g_rect(s);
    os << "  <rect class=\"largest-rectangle\" x=\"" << px(0) << "\" y=\"" << py(r.Y) << "\" width=\""
       << static_cast<double>(r.X) * cell << "\" height=\"" << static_cast<double>(r.Y) * cell
       << "\" fill=\"#f4b183\" fill-opacity=\"0.7\" stroke=\"#c55a11\"/>\n";
    os << "  <text x=\"" << px(0) + 4 << "\" y=\"" << py(0) - 4
       << "\" font-family=\"sans-serif\" font-size=\"11\">g = " << r.g << " (" << r.X << " x " << r.Y
       << ")</text>\n";
  }

  os << "  <polyline class=\"staircase\" fill=\"none\" stroke=\"black\" stroke-width=\"2\" points=\"";
  for (std::size_t i = 0; i < path.size(); ++i) os << (i ? " " : "") << px(path[i].x) << ',' << py(path[i].y);
  os << "\"/>\n";
  os << "  <line x1=\"" << px(0) << "\" y1=\"" << py(0) << "\" x2=\"" << px(path.back().x) << "\" y2=\"" << py(0)
     << "\" stroke=\"gray\"/>\n";
  os << "  <line x1=\"" << px(0) << "\" y1=\"" << py(0) << "\" x2=\"" << px(0) << "\" y2=\"" << py(path.front().y)
     << "\" stroke=\"gray\"/>\n";
  os << "  <text x=\"" << margin << "\" y=\"" << margin - 10
     << "\" font-family=\"sans-serif\" font-size=\"13\">area f1 = " << f1(s) << ", |S| = " << s.size()
     << ", N = " << s.block_pairs() << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace evlab
