#include "decaylab/runner/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace decaylab::runner::svg {
namespace {

constexpr double kW = 720, kH = 460, kLeft = 80, kRight = 170, kTop = 40, kBottom = 60;

const char* palette(std::size_t i) {
  static const char* c[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                            "#8c564b", "#e377c2", "#17becf", "#7f7f7f", "#bcbd22"};
  return c[i % 10];
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string o;
  for (char ch : s) {
    switch (ch) {
      case '<': o += "&lt;"; break;
      case '>': o += "&gt;"; break;
      case '&': o += "&amp;"; break;
      default: o += ch;
    }
  }
  return o;
}

struct Frame {
  const Axes& ax;
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;

  static double tr(double v, bool log) { return log ? std::log10(v) : v; }
  bool valid(double x, double y) const {
    return std::isfinite(x) && std::isfinite(y) && (!ax.logx || x > 0) && (!ax.logy || y > 0);
  }
  void include(double x, double y) {
    if (!valid(x, y)) return;
    x0 = std::min(x0, tr(x, ax.logx));
    x1 = std::max(x1, tr(x, ax.logx));
    y0 = std::min(y0, tr(y, ax.logy));
    y1 = std::max(y1, tr(y, ax.logy));
  }
  void finish() {
    if (!(x0 <= x1)) x0 = 0, x1 = 1;
    if (!(y0 <= y1)) y0 = 0, y1 = 1;
    if (x1 - x0 < 1e-300) x1 = x0 + 1;
    if (y1 - y0 < 1e-300) {
      y0 -= 0.5;
      y1 += 0.5;
    }
  }
  double px(double x) const { return kLeft + (tr(x, ax.logx) - x0) / (x1 - x0) * (kW - kLeft - kRight); }
  double py(double y) const { return kH - kBottom - (tr(y, ax.logy) - y0) / (y1 - y0) * (kH - kTop - kBottom); }
};

void header(std::ostringstream& os, const Frame& f) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << kW / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << escape(f.ax.title)
     << "</text>\n";
  const double l = kLeft, r = kW - kRight, t = kTop, b = kH - kBottom;
  os << "<rect x=\"" << l << "\" y=\"" << t << "\" width=\"" << r - l << "\" height=\"" << b - t
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double fx = f.x0 + (f.x1 - f.x0) * i / 4.0, fy = f.y0 + (f.y1 - f.y0) * i / 4.0;
    const double X = l + (r - l) * i / 4.0, Y = b - (b - t) * i / 4.0;
    const double vx = f.ax.logx ? std::pow(10.0, fx) : fx, vy = f.ax.logy ? std::pow(10.0, fy) : fy;
    os << "<line x1=\"" << X << "\" y1=\"" << b << "\" x2=\"" << X << "\" y2=\"" << b + 5 << "\" stroke=\"black\"/>"
       << "<text x=\"" << X << "\" y=\"" << b + 18 << "\" text-anchor=\"middle\">" << num(vx) << "</text>\n";
    os << "<line x1=\"" << l - 5 << "\" y1=\"" << Y << "\" x2=\"" << l << "\" y2=\"" << Y << "\" stroke=\"black\"/>"
       << "<text x=\"" << l - 8 << "\" y=\"" << Y + 4 << "\" text-anchor=\"end\">" << num(vy) << "</text>\n";
  }
  os << "<text x=\"" << (l + r) / 2 << "\" y=\"" << kH - 18 << "\" text-anchor=\"middle\">" << escape(f.ax.xlabel)
     << "</text>\n"
     << "<text x=\"18\" y=\"" << (t + b) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " << (t + b) / 2
     << ")\">" << escape(f.ax.ylabel) << "</text>\n";
}

void legend(std::ostringstream& os, std::size_t i, const std::string& label, const char* color, bool dashed) {
  const double x = kW - kRight + 12, y = kTop + 14 + 18 * static_cast<double>(i);
  os << "<line x1=\"" << x << "\" y1=\"" << y << "\" x2=\"" << x + 22 << "\" y2=\"" << y << "\" stroke=\"" << color
     << "\" stroke-width=\"2\"" << (dashed ? " stroke-dasharray=\"5,3\"" : "") << "/>"
     << "<text x=\"" << x + 28 << "\" y=\"" << y + 4 << "\">" << escape(label) << "</text>\n";
}

void polyline(std::ostringstream& os, const Frame& f, const Series& s, const char* color) {
  os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.6\""
     << (s.dashed ? " stroke-dasharray=\"5,3\"" : "") << " points=\"";
  for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i)
    if (f.valid(s.x[i], s.y[i])) os << num(f.px(s.x[i])) << ',' << num(f.py(s.y[i])) << ' ';
  os << "\"/>\n";
}

}  // namespace

std::string line_plot(const Axes& axes, const std::vector<Series>& series) {
  Frame f{axes};
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) f.include(s.x[i], s.y[i]);
  f.finish();
  std::ostringstream os;
  header(os, f);
  for (std::size_t k = 0; k < series.size(); ++k) {
    polyline(os, f, series[k], palette(k));
    legend(os, k, series[k].label, palette(k), series[k].dashed);
  }
  os << "</svg>\n";
  return os.str();
}

std::string stacked_plot(const Axes& axes, const std::vector<double>& x, const std::vector<std::vector<double>>& layers,
                         const std::vector<std::string>& labels, const Series* outline) {
  std::vector<std::vector<double>> cum(layers.size(), std::vector<double>(x.size(), 0.0));
  for (std::size_t l = 0; l < layers.size(); ++l)
    for (std::size_t i = 0; i < x.size(); ++i) cum[l][i] = (l ? cum[l - 1][i] : 0.0) + layers[l][i];
  Axes a = axes;
  a.logy = false;
  Frame f{a};
  for (std::size_t i = 0; i < x.size(); ++i) {
    f.include(x[i], 0.0);
    if (!cum.empty()) f.include(x[i], cum.back()[i]);
  }
  if (outline)
    for (std::size_t i = 0; i < outline->x.size(); ++i) f.include(outline->x[i], outline->y[i]);
  f.finish();
  std::ostringstream os;
  header(os, f);
  for (std::size_t l = layers.size(); l-- > 0;) {
    os << "<polygon fill=\"" << palette(l) << "\" fill-opacity=\"0.55\" stroke=\"none\" points=\"";
    for (std::size_t i = 0; i < x.size(); ++i)
      if (f.valid(x[i], 1.0)) os << num(f.px(x[i])) << ',' << num(f.py(cum[l][i])) << ' ';
    for (std::size_t i = x.size(); i-- > 0;)
      if (f.valid(x[i], 1.0)) os << num(f.px(x[i])) << ',' << num(f.py(l ? cum[l - 1][i] : 0.0)) << ' ';
    os << "\"/>\n";
  }
  std::size_t li = 0;
  for (std::size_t l = 0; l < layers.size() && l < labels.size(); ++l) legend(os, li++, labels[l], palette(l), false);
  if (outline) {
    polyline(os, f, *outline, "black");
    legend(os, li, outline->label, "black", outline->dashed);
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace decaylab::runner::svg
