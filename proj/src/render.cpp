#include "rosen/render.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace rosen::render {

namespace {

using Point = std::complex<double>;

struct Canvas {
  double size;
  double radius;
  Point map(Point z) const {
    return {size / 2 + radius * z.real(), size / 2 - radius * z.imag()};
  }
};

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(6);
  out << std::fixed << v;
  return out.str();
}

// Path command continuing from `a` to `b` along the hyperbolic geodesic.
std::string arc_to(const Canvas& c, Point a, Point b) {
  const Point sb = c.map(b);
  const double turn = std::arg(b / a);
  const double half = std::abs(turn) / 2;
  if (std::abs(half - std::numbers::pi / 2) < 1e-9 || half < 1e-12) {
    return "L " + fmt(sb.real()) + " " + fmt(sb.imag()) + " ";
  }
  const double r = std::tan(half) * c.radius;
  // Short way round the orthogonal circle; sweep follows the turn direction.
  const int sweep = turn > 0 ? 0 : 1;
  return "A " + fmt(r) + " " + fmt(r) + " 0 0 " + std::to_string(sweep) + " " + fmt(sb.real()) +
         " " + fmt(sb.imag()) + " ";
}

std::string move_to(const Canvas& c, Point a) {
  const Point s = c.map(a);
  return "M " + fmt(s.real()) + " " + fmt(s.imag()) + " ";
}

}  // namespace

std::complex<double> to_disc(const BoundaryPoint& p) {
  const Context& ctx = p.context();
  if (p.is_infinity()) return {1.0, 0.0};
  const double x = p.value().to_double();
  const Point w = ctx->is_theta() ? Point(0.0, 1.0)
                                  : std::polar(1.0, std::numbers::pi / ctx->q());
  return (Point(x, 0) - w) / (Point(x, 0) - std::conj(w));
}

std::string svg(const Scene& scene, int size) {
  const Canvas c{static_cast<double>(size), size * 0.45};
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
      << "\" viewBox=\"0 0 " << size << " " << size << "\">\n";
  out << "<circle cx=\"" << fmt(c.size / 2) << "\" cy=\"" << fmt(c.size / 2) << "\" r=\""
      << fmt(c.radius) << "\" fill=\"white\" stroke=\"black\" stroke-width=\"1.5\"/>\n";

  for (const auto& face : scene.faces) {
    const auto& vs = face.vertices();
    std::string d = move_to(c, to_disc(vs.front()));
    for (std::size_t i = 1; i <= vs.size(); ++i) {
      d += arc_to(c, to_disc(vs[i - 1]), to_disc(vs[i % vs.size()]));
    }
    out << "<path d=\"" << d << "Z\" fill=\"#d9e4f2\" stroke=\"#4a6fa5\" stroke-width=\"1\"/>\n";
  }

  for (const auto& path : scene.paths) {
    if (path.empty()) continue;
    std::string d = move_to(c, to_disc(path.front()));
    for (std::size_t i = 1; i < path.size(); ++i) {
      d += arc_to(c, to_disc(path[i - 1]), to_disc(path[i]));
    }
    out << "<path d=\"" << d << "\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"2.5\"/>\n";
    for (const auto& v : path) {
      const Point s = c.map(to_disc(v));
      out << "<circle cx=\"" << fmt(s.real()) << "\" cy=\"" << fmt(s.imag())
          << "\" r=\"3.5\" fill=\"#c0392b\"><title>" << v.to_string() << "</title></circle>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace rosen::render
