#include "mncx/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

namespace mncx {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

std::string curve_to_svg(const ModulusCurve& curve) {
  const double width = 640.0;
  const double height = 480.0;
  const double ml = 64.0, mr = 20.0, mt = 34.0, mb = 52.0;
  const double pw = width - ml - mr;
  const double ph = height - mt - mb;

  double xmin = 0.0, xmax = 1.0, ymax = 1e-12;
  bool any = false;
  for (const ModulusPoint& pt : curve.points) {
    if (pt.error || !std::isfinite(pt.numeric)) continue;
    if (!any) {
      xmin = xmax = pt.epsilon;
      any = true;
    } else {
      xmin = std::min(xmin, pt.epsilon);
      xmax = std::max(xmax, pt.epsilon);
    }
    ymax = std::max(ymax, pt.numeric);
    if (pt.analytic) ymax = std::max(ymax, *pt.analytic);
  }
  if (!any || xmax <= xmin) {
    xmin = 0.0;
    xmax = std::max(xmax, 1.0);
  }
  ymax *= 1.05;

  auto X = [&](double e) { return ml + (e - xmin) / (xmax - xmin) * pw; };
  auto Y = [&](double v) { return mt + ph - v / ymax * ph; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
     << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  std::string title = std::string(to_string(curve.kind)) + " modulus, " +
                      (curve.restricted_minimal ? "minimal witnesses" : "all witnesses") +
                      ", p=" + num(curve.space.p);
  os << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\" "
        "font-family=\"sans-serif\" font-size=\"14\">" << title << "</text>\n";

  // axes
  os << "<line x1=\"" << ml << "\" y1=\"" << mt + ph << "\" x2=\"" << ml + pw
     << "\" y2=\"" << mt + ph << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\""
     << mt + ph << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    double fx = xmin + (xmax - xmin) * i / 5.0;
    double fy = ymax * i / 5.0;
    double px = X(fx);
    double py = Y(fy);
    os << "<line x1=\"" << px << "\" y1=\"" << mt + ph << "\" x2=\"" << px << "\" y2=\""
       << mt + ph + 5 << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << px << "\" y=\"" << mt + ph + 18
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
       << num(fx) << "</text>\n";
    os << "<line x1=\"" << ml - 5 << "\" y1=\"" << py << "\" x2=\"" << ml << "\" y2=\""
       << py << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << ml - 8 << "\" y=\"" << py + 4
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << num(fy)
       << "</text>\n";
  }
  os << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height - 12
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">epsilon"
     << "</text>\n";
  os << "<text x=\"16\" y=\"" << mt + ph / 2
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
        "transform=\"rotate(-90 16 " << mt + ph / 2 << ")\">modulus</text>\n";

  // analytic curve (dashed) where present
  std::ostringstream apath;
  bool afirst = true;
  for (const ModulusPoint& pt : curve.points) {
    if (pt.error || !pt.analytic) continue;
    apath << (afirst ? 'M' : 'L') << X(pt.epsilon) << ' ' << Y(*pt.analytic) << ' ';
    afirst = false;
  }
  if (!afirst) {
    os << "<path d=\"" << apath.str()
       << "\" fill=\"none\" stroke=\"#555555\" stroke-width=\"1.5\" "
          "stroke-dasharray=\"6 4\"/>\n";
  }

  // numeric estimates: solid polyline with markers
  std::ostringstream npath;
  bool nfirst = true;
  for (const ModulusPoint& pt : curve.points) {
    if (pt.error || !std::isfinite(pt.numeric)) continue;
    npath << (nfirst ? 'M' : 'L') << X(pt.epsilon) << ' ' << Y(pt.numeric) << ' ';
    nfirst = false;
  }
  if (!nfirst) {
    os << "<path d=\"" << npath.str()
       << "\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\"/>\n";
  }
  for (const ModulusPoint& pt : curve.points) {
    if (pt.error || !std::isfinite(pt.numeric)) continue;
    os << "<circle cx=\"" << X(pt.epsilon) << "\" cy=\"" << Y(pt.numeric)
       << "\" r=\"3\" fill=\"#1f77b4\"/>\n";
  }

  // legend
  double lx = ml + 12, ly = mt + 12;
  os << "<rect x=\"" << lx - 6 << "\" y=\"" << ly - 10 << "\" width=\"150\" height=\""
     << (afirst ? 22 : 40) << "\" fill=\"white\" stroke=\"#cccccc\"/>\n";
  os << "<line x1=\"" << lx << "\" y1=\"" << ly << "\" x2=\"" << lx + 24 << "\" y2=\"" << ly
     << "\" stroke=\"#1f77b4\" stroke-width=\"2\"/>\n";
  os << "<text x=\"" << lx + 30 << "\" y=\"" << ly + 4
     << "\" font-family=\"sans-serif\" font-size=\"11\">estimate</text>\n";
  if (!afirst) {
    os << "<line x1=\"" << lx << "\" y1=\"" << ly + 18 << "\" x2=\"" << lx + 24
       << "\" y2=\"" << ly + 18
       << "\" stroke=\"#555555\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"/>\n";
    os << "<text x=\"" << lx + 30 << "\" y=\"" << ly + 22
       << "\" font-family=\"sans-serif\" font-size=\"11\">closed form</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace mncx
