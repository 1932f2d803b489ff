#pragma once

// SVG pictures in the disc model. Floating point throughout: the output is an
// illustration, never a result.

#include <complex>
#include <string>
#include <vector>

#include "rosen/cf.hpp"
#include "rosen/farey.hpp"

namespace rosen::render {

struct Scene {
  Context ctx;
  std::vector<farey::Face> faces;  // shaded
  std::vector<cf::Path> paths;     // highlighted
};

// psi(z) = (z - e^{i pi/q}) / (z - e^{-i pi/q}); the Cayley map for q = inf.
std::complex<double> to_disc(const BoundaryPoint& p);

std::string svg(const Scene& scene, int size = 640);

}  // namespace rosen::render
