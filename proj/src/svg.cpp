#include <algorithm>
#include <cstdio>
#include <sstream>

#include "riffle/errors.hpp"
#include "riffle/report.hpp"

namespace riffle {

namespace {

std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_svg_map(const ReportBundle& b, MapKind which) {
  const MapData& map = which == MapKind::kVoters ? b.voters_map : b.items_map;
  if (!map.available) throw MissingAxis(map.note.empty() ? "map unavailable" : map.note);

  const double width = 720, height = 540, margin = 60;
  double xmin = to_double(map.markers.front().x), xmax = xmin;
  double ymin = to_double(map.markers.front().y), ymax = ymin;
  for (const auto& m : map.markers) {
    xmin = std::min(xmin, to_double(m.x));
    xmax = std::max(xmax, to_double(m.x));
    ymin = std::min(ymin, to_double(m.y));
    ymax = std::max(ymax, to_double(m.y));
  }
  auto pad = [](double& lo, double& hi) {
    double span = hi - lo;
    if (span <= 0) span = 1.0;
    lo -= 0.05 * span;
    hi += 0.05 * span;
  };
  pad(xmin, xmax);
  pad(ymin, ymax);
  auto sx = [&](double x) { return margin + (x - xmin) / (xmax - xmin) * (width - 2 * margin); };
  auto sy = [&](double y) { return margin + (ymax - y) / (ymax - ymin) * (height - 2 * margin); };

  const bool voters = which == MapKind::kVoters;
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
     << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
     << "\" fill=\"white\"/>\n";
  os << "<text x=\"" << px(margin) << "\" y=\"" << px(margin / 2)
     << "\" font-family=\"monospace\" font-size=\"14\">"
     << (voters ? "voters (f1, f2)" : "items (g1, g2)") << "</text>\n";
  if (xmin < 0 && xmax > 0)
    os << "<line x1=\"" << px(sx(0)) << "\" y1=\"" << px(margin) << "\" x2=\"" << px(sx(0))
       << "\" y2=\"" << px(height - margin)
       << "\" stroke=\"lightgray\" stroke-dasharray=\"4 3\"/>\n";
  if (ymin < 0 && ymax > 0)
    os << "<line x1=\"" << px(margin) << "\" y1=\"" << px(sy(0)) << "\" x2=\""
       << px(width - margin) << "\" y2=\"" << px(sy(0))
       << "\" stroke=\"lightgray\" stroke-dasharray=\"4 3\"/>\n";

  const char* fill = voters ? "steelblue" : "firebrick";
  for (const auto& m : map.markers) {
    double cx = sx(to_double(m.x));
    double cy = sy(to_double(m.y));
    os << "<circle cx=\"" << px(cx) << "\" cy=\"" << px(cy) << "\" r=\"3\" fill=\"" << fill
       << "\"/>\n";
    std::string label = m.label;
    if (voters) label += std::to_string(m.count);  // e.g. CAEBD162: ordering repeated 162 times
    os << "<text x=\"" << px(cx + 4) << "\" y=\"" << px(cy - 4)
       << "\" font-family=\"monospace\" font-size=\"9\">" << escape_xml(label) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace riffle
