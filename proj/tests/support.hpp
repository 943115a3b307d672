#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "sfrac/mesh.hpp"

namespace sfrac::test {

// Coarse version of the anti-plane mesh; cheap enough for unit tests.
inline TriMesh coarse_mesh(double h_min = 0.05, double h_max = 0.1) {
  MeshSizing sizing;
  sizing.h_min = h_min;
  sizing.h_max = h_max;
  sizing.band_width = 0.2;
  return build_antiplane_mesh(AntiplaneGeometry{}, sizing);
}

// Structured mesh of the unit square, n x n cells split along the diagonal.
inline TriMesh unit_square(int n) {
  TriMesh m;
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i) m.nodes.push_back({double(i) / n, double(j) / n});
  auto id = [n](int i, int j) { return static_cast<std::int32_t>(j * (n + 1) + i); };
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      m.triangles.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      m.triangles.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  m.markers.assign(m.nodes.size(), NodeMarker::free);
  m.h_min = m.h_max = 1.0 / n;
  return m;
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace sfrac::test
