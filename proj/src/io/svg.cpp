#include <ampath/io/results.hpp>
#include <ampath/io/svg.hpp>

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace ampath::io {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(double v)
{
  return fmt::format("{:.2f}", v);
}

std::string class_attr(std::string_view cls)
{
  return cls.empty() ? std::string() : fmt::format(" class=\"{}\"", escape_xml(cls));
}

} // namespace

std::string escape_xml(std::string_view text)
{
  std::string out;
  out.reserve(text.size());
  for (char c : text)
  {
    switch (c)
    {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

SvgDocument::SvgDocument(double width, double height) : width_(width), height_(height) {}

void SvgDocument::rect(double x, double y, double w, double h, std::string_view style, std::string_view cls)
{
  body_ += fmt::format("  <rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" style=\"{}\"{}/>\n", num(x), num(y),
      num(w), num(h), escape_xml(style), class_attr(cls));
}

void SvgDocument::circle(double cx, double cy, double r, std::string_view style, std::string_view cls)
{
  body_ += fmt::format("  <circle cx=\"{}\" cy=\"{}\" r=\"{}\" style=\"{}\"{}/>\n", num(cx), num(cy), num(r),
      escape_xml(style), class_attr(cls));
}

void SvgDocument::line(double x1, double y1, double x2, double y2, std::string_view style)
{
  body_ += fmt::format("  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" style=\"{}\"/>\n", num(x1), num(y1), num(x2),
      num(y2), escape_xml(style));
}

void SvgDocument::polyline(std::span<const Point2> pts, std::string_view style)
{
  std::string coords;
  for (Point2 p : pts)
    coords += fmt::format("{}{},{}", coords.empty() ? "" : " ", num(p.x), num(p.y));
  body_ += fmt::format("  <polyline points=\"{}\" style=\"{}\"/>\n", coords, escape_xml(style));
}

void SvgDocument::path(std::span<const Point2> pts, std::string_view style, std::string_view cls)
{
  std::string d;
  for (std::size_t i = 0; i < pts.size(); ++i)
    d += fmt::format("{}{} {} {}", i == 0 ? "" : " ", i == 0 ? 'M' : 'L', num(pts[i].x), num(pts[i].y));
  body_ += fmt::format("  <path d=\"{}\" style=\"{}\"{}/>\n", d, escape_xml(style), class_attr(cls));
}

void SvgDocument::text(double x, double y, std::string_view content, std::string_view style)
{
  body_ += fmt::format("  <text x=\"{}\" y=\"{}\" style=\"{}\">{}</text>\n", num(x), num(y),
      escape_xml(style.empty() ? "font-family:sans-serif;font-size:12px" : style), escape_xml(content));
}

std::string SvgDocument::str() const
{
  return fmt::format(
      "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n"
      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" "
      "viewBox=\"0 0 {} {}\">\n{}</svg>\n",
      num(width_), num(height_), num(width_), num(height_), body_);
}

//==============================================================================
std::string render_toolpath_svg(
    const Workspace& ws,
    std::span<const Point2> obstacles,
    double clearance,
    const StructureSpec& structure,
    std::span<const Leg> legs)
{
  constexpr double pad = 20.0;
  SvgDocument doc(ws.width() + 2 * pad, ws.height() + 2 * pad);
  auto map = [&](Point2 p) { return Point2{p.x - ws.min_x + pad, ws.max_y - p.y + pad}; };

  doc.rect(pad, pad, ws.width(), ws.height(), "fill:#ffffff;stroke:#000000;stroke-width:1", "workspace");
  for (Point2 o : obstacles)
  {
    const Point2 q = map(o);
    doc.circle(q.x, q.y, clearance, "fill:#000000;fill-opacity:0.15;stroke:#000000;stroke-width:0.5", "obstacle");
  }
  for (const Leg& leg : legs)
  {
    std::vector<Point2> pts;
    pts.reserve(leg.path.waypoints.size());
    for (Point2 p : leg.path.waypoints)
      pts.push_back(map(p));
    doc.path(pts, fmt::format("fill:none;stroke:{};stroke-width:2", kPalette[leg.pair % std::size(kPalette)]),
        "leg");
  }
  for (std::size_t i = 0; i < structure.vertices.size(); ++i)
  {
    const Point2 q = map(structure.vertices[i]);
    doc.rect(q.x - 5, q.y - 5, 10, 10, "fill:#ff0000;stroke:none", "vertex");
    doc.text(q.x + 7, q.y - 7, fmt::format("v{}", i + 1));
  }
  return doc.str();
}

//==============================================================================
namespace {

constexpr double kChartW = 640;
constexpr double kChartH = 420;
constexpr double kLeft = 70;
constexpr double kRight = 150;
constexpr double kTop = 40;
constexpr double kBottom = 60;

std::string tick_label(double v)
{
  return format_number(std::round(v * 1000.0) / 1000.0);
}

void frame(SvgDocument& doc, const ChartOptions& o)
{
  const double x0 = kLeft;
  const double y0 = kChartH - kBottom;
  doc.line(x0, y0, kChartW - kRight, y0, "stroke:#000000;stroke-width:1");
  doc.line(x0, y0, x0, kTop, "stroke:#000000;stroke-width:1");
  doc.text(kLeft, 24, o.title, "font-family:sans-serif;font-size:15px;font-weight:bold");
  doc.text((kLeft + kChartW - kRight) / 2 - 40, kChartH - 15, o.x_label);
  doc.text(8, kTop - 10, o.y_label);
}

void legend(SvgDocument& doc, std::span<const Series> series)
{
  for (std::size_t i = 0; i < series.size(); ++i)
  {
    const double y = kTop + 10 + 20.0 * static_cast<double>(i);
    doc.rect(kChartW - kRight + 15, y - 9, 12, 12, fmt::format("fill:{}", kPalette[i % std::size(kPalette)]));
    doc.text(kChartW - kRight + 32, y + 2, series[i].name);
  }
}

} // namespace

std::string render_line_chart(std::span<const Series> series, const ChartOptions& o)
{
  SvgDocument doc(kChartW, kChartH);
  frame(doc, o);

  auto tx = [&](double x) { return o.log2_x ? std::log2(std::max(x, 1e-12)) : x; };
  double xmin = std::numeric_limits<double>::infinity();
  double xmax = -xmin;
  double ymax = 0.0;
  for (const Series& s : series)
  {
    for (double x : s.x)
    {
      xmin = std::min(xmin, tx(x));
      xmax = std::max(xmax, tx(x));
    }
    for (double y : s.y)
      ymax = std::max(ymax, y);
  }
  if (!std::isfinite(xmin))
  {
    xmin = 0;
    xmax = 1;
  }
  if (xmax == xmin)
    xmax = xmin + 1;
  if (ymax <= 0.0)
    ymax = 1.0;

  const double w = kChartW - kLeft - kRight;
  const double h = kChartH - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (tx(x) - xmin) / (xmax - xmin) * w; };
  auto py = [&](double y) { return kChartH - kBottom - y / ymax * h; };

  for (int k = 0; k <= 4; ++k)
  {
    const double yv = ymax * k / 4.0;
    doc.line(kLeft - 4, py(yv), kLeft, py(yv), "stroke:#000000");
    doc.text(8, py(yv) + 4, tick_label(yv), "font-family:sans-serif;font-size:10px");
  }
  if (!series.empty())
  {
    for (double x : series.front().x)
    {
      doc.line(px(x), kChartH - kBottom, px(x), kChartH - kBottom + 4, "stroke:#000000");
      doc.text(px(x) - 8, kChartH - kBottom + 16, tick_label(x), "font-family:sans-serif;font-size:10px");
    }
  }

  for (std::size_t i = 0; i < series.size(); ++i)
  {
    const Series& s = series[i];
    std::vector<Point2> pts;
    for (std::size_t k = 0; k < std::min(s.x.size(), s.y.size()); ++k)
      pts.push_back({px(s.x[k]), py(s.y[k])});
    const char* colour = kPalette[i % std::size(kPalette)];
    doc.polyline(pts, fmt::format("fill:none;stroke:{};stroke-width:2", colour));
    for (Point2 p : pts)
      doc.circle(p.x, p.y, 3, fmt::format("fill:{}", colour));
  }
  legend(doc, series);
  return doc.str();
}

std::string render_bar_chart(
    std::span<const std::string> categories, std::span<const Series> series, const ChartOptions& o)
{
  SvgDocument doc(kChartW, kChartH);
  frame(doc, o);

  const double w = kChartW - kLeft - kRight;
  const double h = kChartH - kTop - kBottom;
  const double group = w / static_cast<double>(std::max<std::size_t>(categories.size(), 1));
  const double bar = group * 0.8 / static_cast<double>(std::max<std::size_t>(series.size(), 1));

  for (std::size_t c = 0; c < categories.size(); ++c)
  {
    double cmax = 0.0;
    for (const Series& s : series)
    {
      if (c < s.y.size())
        cmax = std::max(cmax, s.y[c]);
    }
    if (cmax <= 0.0)
      cmax = 1.0;

    const double gx = kLeft + group * static_cast<double>(c) + group * 0.1;
    for (std::size_t i = 0; i < series.size(); ++i)
    {
      const double v = c < series[i].y.size() ? series[i].y[c] : 0.0;
      const double bh = v / cmax * h;
      const double x = gx + bar * static_cast<double>(i);
      doc.rect(x, kChartH - kBottom - bh, bar * 0.9, bh, fmt::format("fill:{}", kPalette[i % std::size(kPalette)]));
      doc.text(x, kChartH - kBottom - bh - 3, tick_label(v), "font-family:sans-serif;font-size:8px");
    }
    doc.text(gx, kChartH - kBottom + 16, categories[c], "font-family:sans-serif;font-size:10px");
  }
  legend(doc, series);
  return doc.str();
}

} // namespace ampath::io
