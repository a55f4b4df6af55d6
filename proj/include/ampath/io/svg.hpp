#pragma once

#include <ampath/environment.hpp>
#include <ampath/pgf.hpp>

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ampath::io {

/// Minimal SVG 1.1 document builder. Attribute values are XML-escaped.
class SvgDocument
{
public:
  SvgDocument(double width, double height);

  void rect(double x, double y, double w, double h, std::string_view style, std::string_view cls = {});
  void circle(double cx, double cy, double r, std::string_view style, std::string_view cls = {});
  void line(double x1, double y1, double x2, double y2, std::string_view style);
  void polyline(std::span<const Point2> pts, std::string_view style);
  /// Polyline as a <path> element, one per toolpath leg.
  void path(std::span<const Point2> pts, std::string_view style, std::string_view cls = {});
  void text(double x, double y, std::string_view content, std::string_view style = {});

  std::string str() const;

private:
  double width_;
  double height_;
  std::string body_;
};

std::string escape_xml(std::string_view text);

/// Workspace, obstacles, vertices and one path per leg (y axis up).
std::string render_toolpath_svg(
    const Workspace& ws,
    std::span<const Point2> obstacles,
    double clearance,
    const StructureSpec& structure,
    std::span<const Leg> legs);

struct Series
{
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

struct ChartOptions
{
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log2_x = false;
};

std::string render_line_chart(std::span<const Series> series, const ChartOptions& options);

/// Grouped bars: one group per category, one bar per series. Each category
/// is scaled to its own maximum.
std::string render_bar_chart(
    std::span<const std::string> categories,
    std::span<const Series> series, // series[i].y[c] = value for category c
    const ChartOptions& options);

} // namespace ampath::io
