#include "bnn/svg.hpp"

#include <algorithm>
#include <stdexcept>

#include "bnn/textio.hpp"

namespace bnn {

namespace {

const double kWidth = 720, kHeight = 420;
const double kLeft = 64, kRight = 16, kTop = 34, kBottom = 44;

std::string header(double w, double h) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(w) +
         "\" height=\"" + fmt(h) + "\" viewBox=\"0 0 " + fmt(w) + " " +
         fmt(h) + "\">\n<rect width=\"" + fmt(w) + "\" height=\"" + fmt(h) +
         "\" fill=\"white\"/>\n";
}

std::string text(double x, double y, const std::string& s,
                 const std::string& extra = "") {
  return "<text x=\"" + fmt(x) + "\" y=\"" + fmt(y) +
         "\" font-family=\"sans-serif\" font-size=\"12\"" +
         (extra.empty() ? "" : " " + extra) + ">" + s + "</text>\n";
}

std::string line(double x1, double y1, double x2, double y2,
                 const std::string& color, double width = 1.0) {
  return "<line x1=\"" + fmt(x1) + "\" y1=\"" + fmt(y1) + "\" x2=\"" +
         fmt(x2) + "\" y2=\"" + fmt(y2) + "\" stroke=\"" + color +
         "\" stroke-width=\"" + fmt(width) + "\"/>\n";
}

}  // namespace

std::string svg_line_chart(const std::string& title,
                           const std::string& x_label,
                           const std::string& y_label,
                           const std::vector<Series>& series, double x0,
                           bool mark_zero) {
  if (series.empty()) throw std::invalid_argument("svg: no series");
  std::size_t longest = 0;
  double y_min = 0, y_max = 0;
  bool any = false;
  for (const Series& s : series) {
    longest = std::max(longest, s.ys.size());
    for (double y : s.ys) {
      if (!any) {
        y_min = y_max = y;
        any = true;
      }
      y_min = std::min(y_min, y);
      y_max = std::max(y_max, y);
    }
  }
  if (!any) throw std::invalid_argument("svg: all series empty");
  if (y_max == y_min) {
    y_min -= 1;
    y_max += 1;
  }
  const double x_min = x0;
  const double x_max = longest > 1 ? x0 + static_cast<double>(longest - 1)
                                   : x0 + 1;

  const double px0 = kLeft, px1 = kWidth - kRight;
  const double py0 = kHeight - kBottom, py1 = kTop;
  auto sx = [&](double x) {
    return px0 + (x - x_min) / (x_max - x_min) * (px1 - px0);
  };
  auto sy = [&](double y) {
    return py0 + (y - y_min) / (y_max - y_min) * (py1 - py0);
  };

  std::string out = header(kWidth, kHeight);
  out += text(kLeft, 20, title, "font-weight=\"bold\"");
  // frame and ticks
  out += line(px0, py0, px1, py0, "#000");
  out += line(px0, py0, px0, py1, "#000");
  for (int k = 0; k <= 4; ++k) {
    const double yv = y_min + (y_max - y_min) * k / 4.0;
    const double xv = x_min + (x_max - x_min) * k / 4.0;
    out += line(px0, sy(yv), px1, sy(yv), "#ddd");
    out += text(6, sy(yv) + 4, fmt(yv));
    out += line(sx(xv), py0, sx(xv), py0 + 4, "#000");
    out += text(sx(xv) - 8, py0 + 18, fmt(xv));
  }
  out += text(kWidth / 2 - 20, kHeight - 8, x_label);
  out += text(6, kTop - 10, y_label);

  for (const Series& s : series) {
    if (s.ys.empty()) continue;
    std::string pts;
    for (std::size_t i = 0; i < s.ys.size(); ++i) {
      if (i) pts += ' ';
      pts += fmt(sx(x0 + static_cast<double>(i))) + ',' + fmt(sy(s.ys[i]));
    }
    out += "<polyline fill=\"none\" stroke=\"" + s.color +
           "\" stroke-width=\"1.2\" points=\"" + pts + "\"/>\n";
    if (mark_zero)
      for (std::size_t i = 0; i < s.ys.size(); ++i)
        if (s.ys[i] == 0.0)
          out += "<circle cx=\"" + fmt(sx(x0 + static_cast<double>(i))) +
                 "\" cy=\"" + fmt(sy(0.0)) + "\" r=\"3\" fill=\"none\" stroke=\"" +
                 s.color + "\"/>\n";
  }
  // legend
  double ly = kTop + 4;
  for (const Series& s : series) {
    if (s.label.empty()) continue;
    out += line(px1 - 110, ly, px1 - 90, ly, s.color, 2);
    out += text(px1 - 84, ly + 4, s.label);
    ly += 16;
  }
  out += "</svg>\n";
  return out;
}

std::string svg_raster(const std::string& title,
                       const std::vector<StateVector>& columns) {
  if (columns.empty()) throw std::invalid_argument("svg raster: no columns");
  const int n = columns.front().size();
  for (const StateVector& c : columns)
    if (c.size() != n)
      throw std::invalid_argument("svg raster: ragged columns");
  const int cols = static_cast<int>(columns.size());
  double cell = std::min(24.0, std::max(4.0, 640.0 / cols));
  cell = std::min(cell, std::max(4.0, 320.0 / n));
  const double gx = 48, gy = 40;
  const double w = gx + cols * cell + 16;
  const double h = gy + n * cell + 40;

  std::string out = header(w, h);
  out += text(8, 20, title, "font-weight=\"bold\"");
  for (int t = 0; t < cols; ++t)
    for (int i = 0; i < n; ++i) {
      const char* fill = columns[t].states[i] > 0 ? "#1a1a1a" : "#f2f2f2";
      out += "<rect x=\"" + fmt(gx + t * cell) + "\" y=\"" +
             fmt(gy + i * cell) + "\" width=\"" + fmt(cell) + "\" height=\"" +
             fmt(cell) + "\" fill=\"" + fill + "\" stroke=\"#bbb\" stroke-width=\"0.5\"/>\n";
    }
  for (int i = 0; i < n; ++i)
    out += text(8, gy + i * cell + cell / 2 + 4, fmt(i));
  const int t_stride = std::max(1, cols / 8);
  for (int t = 0; t < cols; t += t_stride)
    out += text(gx + t * cell + 2, gy + n * cell + 16, fmt(t));
  out += text(8, gy + n * cell + 34, "neuron row vs. time step; dark = +1");
  out += "</svg>\n";
  return out;
}

std::string svg_value_strip(const std::string& title,
                            const std::vector<int>& values) {
  if (values.empty()) throw std::invalid_argument("svg strip: no values");
  const int cols = static_cast<int>(values.size());
  const double cell = std::min(24.0, std::max(6.0, 640.0 / cols));
  const double gx = 16, gy = 40;
  const double w = gx + cols * cell + 16;
  const double h = gy + cell + 44;

  std::string out = header(w, h);
  out += text(8, 20, title, "font-weight=\"bold\"");
  for (int t = 0; t < cols; ++t) {
    const char* fill =
        values[t] < 0 ? "#c0392b" : values[t] > 0 ? "#27ae60" : "#999999";
    out += "<rect x=\"" + fmt(gx + t * cell) + "\" y=\"" + fmt(gy) +
           "\" width=\"" + fmt(cell) + "\" height=\"" + fmt(cell) +
           "\" fill=\"" + fill + "\" stroke=\"#fff\" stroke-width=\"0.5\"/>\n";
  }
  const int t_stride = std::max(1, cols / 10);
  for (int t = 0; t < cols; t += t_stride)
    out += text(gx + t * cell + 1, gy + cell + 16, fmt(t + 1));
  out += "</svg>\n";
  return out;
}

}  // namespace bnn
