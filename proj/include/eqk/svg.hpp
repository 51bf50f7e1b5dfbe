#ifndef EQK_SVG_HPP
#define EQK_SVG_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "eqk/polynomial.hpp"

namespace eqk {

struct SvgOptions {
  double view_radius = 0.0;  // 0: fit to the points, at least 2
  bool sphere_panel = false;
  std::string title = "roots";
  std::string config_echo;  // written into a leading comment
};

namespace detail {

inline std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  return buf;
}

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

}  // namespace detail

/// Static scatter of points in the plane over circles enclosing FS mass
/// 1/4, 1/2, 3/4 (radii sqrt(u/(1-u))). The optional second panel shows the
/// stereographic images on the sphere, seen from a tilted viewpoint.
inline std::string roots_svg(const std::vector<Complex>& pts, const SvgOptions& opt = {}) {
  constexpr double kPanel = 480.0, kMargin = 20.0;
  const double width = opt.sphere_panel ? 2 * kPanel + 3 * kMargin : kPanel + 2 * kMargin;
  const double height = kPanel + 2 * kMargin + 20;
  double R = opt.view_radius;
  if (!(R > 0.0)) {
    R = 2.0;
    std::vector<double> mags;
    for (const auto& z : pts)
      if (std::isfinite(std::abs(z))) mags.push_back(std::abs(z));
    if (!mags.empty()) {
      // 98th percentile keeps a few far roots from collapsing the picture
      std::sort(mags.begin(), mags.end());
      R = std::max(R, 1.1 * mags[static_cast<std::size_t>(0.98 * static_cast<double>(mags.size() - 1))]);
    }
  }
  const double cx = kMargin + kPanel / 2, cy = kMargin + 20 + kPanel / 2, scale = kPanel / (2 * R);
  using detail::fmt;

  std::string s = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  if (!opt.config_echo.empty()) {
    std::string echo = opt.config_echo;
    // "--" is not allowed inside XML comments
    for (std::size_t p; (p = echo.find("--")) != std::string::npos;) echo.replace(p, 2, "- -");
    s += "<!-- config: " + echo + " -->\n";
  }
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(width) + "\" height=\"" + fmt(height) +
       "\" viewBox=\"0 0 " + fmt(width) + " " + fmt(height) + "\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<text x=\"" + fmt(kMargin) + "\" y=\"" + fmt(kMargin + 8) + "\" font-size=\"14\" font-family=\"sans-serif\">" +
       detail::xml_escape(opt.title) + " (" + std::to_string(pts.size()) + " points)</text>\n";

  s += "<g id=\"plane\">\n<clipPath id=\"clip\"><rect x=\"" + fmt(kMargin) + "\" y=\"" + fmt(kMargin + 20) +
       "\" width=\"" + fmt(kPanel) + "\" height=\"" + fmt(kPanel) + "\"/></clipPath>\n";
  s += "<g clip-path=\"url(#clip)\">\n";
  for (double u : {0.25, 0.5, 0.75}) {
    const double r = std::sqrt(u / (1 - u)) * scale;
    s += "<circle cx=\"" + fmt(cx) + "\" cy=\"" + fmt(cy) + "\" r=\"" + fmt(r) +
         "\" fill=\"none\" stroke=\"#9ab\" stroke-dasharray=\"4 3\"/>\n";
  }
  s += "<line x1=\"" + fmt(kMargin) + "\" y1=\"" + fmt(cy) + "\" x2=\"" + fmt(kMargin + kPanel) + "\" y2=\"" + fmt(cy) +
       "\" stroke=\"#ccc\"/>\n";
  s += "<line x1=\"" + fmt(cx) + "\" y1=\"" + fmt(kMargin + 20) + "\" x2=\"" + fmt(cx) + "\" y2=\"" +
       fmt(kMargin + 20 + kPanel) + "\" stroke=\"#ccc\"/>\n";
  const double dot = pts.size() > 2000 ? 1.2 : 2.5;
  for (const auto& z : pts) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) continue;
    s += "<circle cx=\"" + fmt(cx + z.real() * scale) + "\" cy=\"" + fmt(cy - z.imag() * scale) + "\" r=\"" + fmt(dot) +
         "\" class=\"root\" fill=\"#c33\"/>\n";
  }
  s += "</g>\n</g>\n";

  if (opt.sphere_panel) {
    const double sx = 2 * kMargin + kPanel + kPanel / 2, rad = kPanel / 2 - 10;
    constexpr double tilt = 0.5;
    const double ct = std::cos(tilt), st = std::sin(tilt);
    s += "<g id=\"sphere\">\n<circle cx=\"" + fmt(sx) + "\" cy=\"" + fmt(cy) + "\" r=\"" + fmt(rad) +
         "\" fill=\"#f6f8fa\" stroke=\"#789\"/>\n";
    // equator
    s += "<ellipse cx=\"" + fmt(sx) + "\" cy=\"" + fmt(cy) + "\" rx=\"" + fmt(rad) + "\" ry=\"" + fmt(rad * st) +
         "\" fill=\"none\" stroke=\"#9ab\" stroke-dasharray=\"4 3\"/>\n";
    for (const auto& z : pts) {
      double X = 0, Y = 0, Z = 1;
      if (std::isfinite(std::abs(z))) {
        const double q = 1 + std::norm(z);
        X = 2 * z.real() / q;
        Y = 2 * z.imag() / q;
        Z = (std::norm(z) - 1) / q;
      }
      // rotate about the x axis, view along -y
      const double py = ct * Z + st * Y, depth = -st * Z + ct * Y;
      s += "<circle cx=\"" + fmt(sx + X * rad) + "\" cy=\"" + fmt(cy - py * rad) + "\" r=\"" + fmt(dot) +
           "\" class=\"root-sphere\" fill=\"" + (depth <= 0 ? "#c33" : "#e9a") + "\"/>\n";
    }
    s += "</g>\n";
  }
  s += "</svg>\n";
  return s;
}

}  // namespace eqk

#endif  // EQK_SVG_HPP
