#include "svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>

namespace vlcsec {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct Frame {
  double x0 = 72, y0 = 40, w = 600, h = 380;  // plot area in px
  double xmin, xmax, ymin, ymax;
  double px(double x) const {
    return x0 + (x - xmin) / (xmax - xmin) * w;
  }
  double py(double y) const {
    return y0 + h - (y - ymin) / (ymax - ymin) * h;
  }
};

// round tick spacing to 1/2/5 * 10^k
double tick_step(double span) {
  const double raw = span / 6.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double r = raw / mag;
  if (r < 1.5) return mag;
  if (r < 3.5) return 2.0 * mag;
  if (r < 7.5) return 5.0 * mag;
  return 10.0 * mag;
}

}  // namespace

std::string svg_string(const CurveTable& table) {
  if (table.rows.empty()) throw ConfigError("render_plot: empty table");

  // group points per method, preserving first-seen method order
  std::vector<std::string> methods;
  std::map<std::string, std::vector<const CurvePoint*>> series;
  for (const CurvePoint& p : table.rows) {
    if (!series.count(p.method)) methods.push_back(p.method);
    series[p.method].push_back(&p);
  }

  Frame f;
  f.xmin = f.xmax = table.rows.front().value;
  f.ymin = 0.0;
  f.ymax = table.rows.front().mean;
  for (const CurvePoint& p : table.rows) {
    f.xmin = std::min(f.xmin, p.value);
    f.xmax = std::max(f.xmax, p.value);
    f.ymin = std::min(f.ymin, p.mean - p.std_err);
    f.ymax = std::max(f.ymax, p.mean + p.std_err);
  }
  if (f.xmax == f.xmin) { f.xmin -= 1.0; f.xmax += 1.0; }
  if (f.ymax == f.ymin) { f.ymax = f.ymin + 1.0; }
  const double ypad = 0.06 * (f.ymax - f.ymin);
  f.ymax += ypad;
  f.ymin = std::min(0.0, f.ymin);

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" "
       "height=\"480\" viewBox=\"0 0 720 480\">\n";
  s += "<rect width=\"720\" height=\"480\" fill=\"white\"/>\n";
  s += "<rect x=\"" + num(f.x0) + "\" y=\"" + num(f.y0) + "\" width=\"" +
       num(f.w) + "\" height=\"" + num(f.h) +
       "\" fill=\"none\" stroke=\"#333\"/>\n";

  // axis ticks and grid
  const double xs = tick_step(f.xmax - f.xmin);
  for (double x = std::ceil(f.xmin / xs) * xs; x <= f.xmax + 1e-9 * xs;
       x += xs) {
    const double px = f.px(x);
    s += "<line x1=\"" + num(px) + "\" y1=\"" + num(f.y0) + "\" x2=\"" +
         num(px) + "\" y2=\"" + num(f.y0 + f.h) +
         "\" stroke=\"#ddd\" stroke-width=\"0.5\"/>\n";
    s += "<text x=\"" + num(px) + "\" y=\"" + num(f.y0 + f.h + 18) +
         "\" font-size=\"12\" text-anchor=\"middle\">" + num(x) + "</text>\n";
  }
  const double ys = tick_step(f.ymax - f.ymin);
  for (double y = std::ceil(f.ymin / ys) * ys; y <= f.ymax + 1e-9 * ys;
       y += ys) {
    const double py = f.py(y);
    s += "<line x1=\"" + num(f.x0) + "\" y1=\"" + num(py) + "\" x2=\"" +
         num(f.x0 + f.w) + "\" y2=\"" + num(py) +
         "\" stroke=\"#ddd\" stroke-width=\"0.5\"/>\n";
    s += "<text x=\"" + num(f.x0 - 6) + "\" y=\"" + num(py + 4) +
         "\" font-size=\"12\" text-anchor=\"end\">" + num(y) + "</text>\n";
  }
  s += "<text x=\"" + num(f.x0 + f.w / 2) + "\" y=\"470\" font-size=\"14\" "
       "text-anchor=\"middle\">" + table.sweep_var + "</text>\n";
  s += "<text x=\"16\" y=\"" + num(f.y0 + f.h / 2) +
       "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
       num(f.y0 + f.h / 2) +
       ")\">mean secrecy rate [bits/s/Hz]</text>\n";

  int ci = 0;
  for (const std::string& m : methods) {
    const char* color = kPalette[ci % 8];
    const auto& pts = series[m];
    std::string poly;
    for (const CurvePoint* p : pts) {
      poly += num(f.px(p->value)) + "," + num(f.py(p->mean)) + " ";
      // error bar
      const double px = f.px(p->value);
      s += "<line x1=\"" + num(px) + "\" y1=\"" +
           num(f.py(p->mean - p->std_err)) + "\" x2=\"" + num(px) +
           "\" y2=\"" + num(f.py(p->mean + p->std_err)) + "\" stroke=\"" +
           color + "\" stroke-width=\"1\"/>\n";
    }
    s += "<polyline points=\"" + poly + "\" fill=\"none\" stroke=\"" + color +
         "\" stroke-width=\"1.5\"/>\n";
    for (const CurvePoint* p : pts)
      s += "<circle cx=\"" + num(f.px(p->value)) + "\" cy=\"" +
           num(f.py(p->mean)) + "\" r=\"3\" fill=\"" + color + "\"/>\n";
    // legend entry
    const double ly = f.y0 + 16 + 18 * ci;
    s += "<line x1=\"" + num(f.x0 + f.w - 150) + "\" y1=\"" + num(ly) +
         "\" x2=\"" + num(f.x0 + f.w - 126) + "\" y2=\"" + num(ly) +
         "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    s += "<text x=\"" + num(f.x0 + f.w - 120) + "\" y=\"" + num(ly + 4) +
         "\" font-size=\"12\">" + m + "</text>\n";
    ++ci;
  }
  s += "</svg>\n";
  return s;
}

void render_plot(const CurveTable& table, const std::string& path) {
  const std::string s = svg_string(table);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << s;
  if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace vlcsec
