#include "sfrac/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <unordered_map>

#include "sfrac/errors.hpp"

namespace sfrac {

double norm(Point2 p) { return std::hypot(p.x, p.y); }

IntervalMesh build_interval_mesh(double length, std::size_t n_cells) {
  if (!(length > 0.0)) throw InvalidArgument("interval length must be positive");
  if (n_cells == 0) throw InvalidArgument("interval mesh needs at least one cell");
  IntervalMesh mesh;
  mesh.length = length;
  mesh.nodes.resize(n_cells + 1);
  for (std::size_t i = 0; i <= n_cells; ++i)
    mesh.nodes[i] = length * static_cast<double>(i) / static_cast<double>(n_cells);
  mesh.nodes.back() = length;
  mesh.cells.resize(n_cells);
  for (std::size_t c = 0; c < n_cells; ++c)
    mesh.cells[c] = {static_cast<std::int32_t>(c), static_cast<std::int32_t>(c + 1)};
  return mesh;
}

std::string to_string(NodeMarker m) {
  switch (m) {
    case NodeMarker::free: return "free";
    case NodeMarker::dir_minus: return "dir_minus";
    case NodeMarker::dir_plus: return "dir_plus";
    case NodeMarker::hole: return "hole";
    case NodeMarker::slit_left: return "slit_left";
    case NodeMarker::slit_right: return "slit_right";
  }
  return "free";
}

std::string to_string(RefineRegion r) {
  switch (r) {
    case RefineRegion::band: return "band";
    case RefineRegion::block: return "block";
    case RefineRegion::whole: return "whole";
  }
  return "band";
}

RefineRegion refine_region_from_string(const std::string& s) {
  if (s == "band") return RefineRegion::band;
  if (s == "block") return RefineRegion::block;
  if (s == "whole") return RefineRegion::whole;
  throw InvalidArgument("unknown refine region '" + s + "'");
}

double signed_area(const TriMesh& mesh, std::size_t t) {
  const auto& tri = mesh.triangles[t];
  const Point2 a = mesh.nodes[tri[0]], b = mesh.nodes[tri[1]], c = mesh.nodes[tri[2]];
  return 0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

double min_signed_area(const TriMesh& mesh) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < mesh.triangle_count(); ++t) m = std::min(m, signed_area(mesh, t));
  return m;
}

std::vector<std::pair<std::int32_t, std::int32_t>> mesh_edges(const TriMesh& mesh) {
  std::vector<std::pair<std::int32_t, std::int32_t>> edges;
  edges.reserve(3 * mesh.triangle_count());
  for (const auto& tri : mesh.triangles)
    for (int k = 0; k < 3; ++k) {
      auto i = tri[k], j = tri[(k + 1) % 3];
      edges.emplace_back(std::min(i, j), std::max(i, j));
    }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

std::vector<std::vector<std::int32_t>> node_neighbours(const TriMesh& mesh) {
  std::vector<std::vector<std::int32_t>> adj(mesh.node_count());
  for (auto [i, j] : mesh_edges(mesh)) {
    adj[i].push_back(j);
    adj[j].push_back(i);
  }
  return adj;
}

bool on_outer_boundary(const TriMesh& mesh, Point2 p) {
  const double side = mesh.geometry.side();
  const double tol = 1e-9 * mesh.geometry.a;
  return p.x <= tol || p.y <= tol || p.x >= side - tol || p.y >= side - tol;
}

namespace {

double distance_to_segment(Point2 p, Point2 a, Point2 b) {
  const Point2 ab = b - a;
  const double len2 = ab.x * ab.x + ab.y * ab.y;
  double t = len2 > 0 ? ((p.x - a.x) * ab.x + (p.y - a.y) * ab.y) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return norm(p - (a + t * ab));
}

bool is_integer_multiple(double value, double unit) {
  const double q = value / unit;
  return std::abs(q - std::round(q)) < 1e-9;
}

// Leaf status per quadtree level: 0 absent, 1 leaf, 2 refined.
struct Quadtree {
  std::size_t n_base = 0;
  int levels = 0;
  std::vector<std::vector<std::uint8_t>> status;

  std::size_t dim(int k) const { return n_base << k; }
  std::uint8_t get(int k, long i, long j) const {
    const long n = static_cast<long>(dim(k));
    if (i < 0 || j < 0 || i >= n || j >= n) return 0;
    return status[k][static_cast<std::size_t>(j) * dim(k) + static_cast<std::size_t>(i)];
  }
  void set(int k, long i, long j, std::uint8_t v) {
    status[k][static_cast<std::size_t>(j) * dim(k) + static_cast<std::size_t>(i)] = v;
  }
  void refine(int k, long i, long j) {
    set(k, i, j, 2);
    for (int dj = 0; dj < 2; ++dj)
      for (int di = 0; di < 2; ++di) set(k + 1, 2 * i + di, 2 * j + dj, 1);
  }
};

bool cell_in_region(const AntiplaneGeometry& g, const MeshSizing& sizing, Point2 centre, double half) {
  const double reach = half * std::numbers::sqrt2;
  switch (sizing.region) {
    case RefineRegion::whole:
      return true;
    case RefineRegion::band: {
      if (distance_to_segment(centre, g.slit_tip(), g.hole_center) <= 0.5 * sizing.band_width + reach)
        return true;
      return norm(centre - g.hole_center) <= g.radius + sizing.band_width + reach;
    }
    case RefineRegion::block: {
      const double x1 = g.slit_x + 0.5 * sizing.band_width;
      const double y1 = g.slit_tip_y + 0.5 * sizing.band_width;
      return centre.x - half < x1 && centre.y - half < y1;
    }
  }
  return false;
}

void validate_geometry(const AntiplaneGeometry& g, const MeshSizing& s) {
  if (!(g.a > 0.0)) throw InvalidArgument("domain size a must be positive");
  if (!(s.h_min > 0.0) || !(s.h_min <= s.h_max)) throw InvalidArgument("need 0 < h_min <= h_max");
  if (!(g.radius > 0.0)) throw GeometryError("hole radius must be positive");
  const double side = g.side();
  const Point2 c = g.hole_center;
  if (c.x - g.radius <= 0.0 || c.y - g.radius <= 0.0 || c.x + g.radius >= side || c.y + g.radius >= side)
    throw GeometryError("hole intersects the domain boundary");
  if (!(g.slit_x > 0.0 && g.slit_x < side && g.slit_tip_y > 0.0 && g.slit_tip_y < side))
    throw GeometryError("slit must run from an interior tip to the top boundary");
  if (distance_to_segment(c, g.slit_tip(), {g.slit_x, side}) <= g.radius)
    throw GeometryError("hole intersects the slit");
}

}  // namespace

TriMesh build_antiplane_mesh(const AntiplaneGeometry& g, const MeshSizing& sizing) {
  validate_geometry(g, sizing);
  const double side = g.side();

  Quadtree qt;
  qt.n_base = static_cast<std::size_t>(std::ceil(side / sizing.h_max - 1e-9));
  if (qt.n_base % 2 != 0) ++qt.n_base;
  const double s0 = side / static_cast<double>(qt.n_base);
  while (s0 / static_cast<double>(1 << qt.levels) > sizing.h_min * (1.0 + 1e-9)) ++qt.levels;
  if (qt.levels > 8) throw InvalidArgument("h_min/h_max ratio too large");
  const double s_fine = s0 / static_cast<double>(1 << qt.levels);
  if (!is_integer_multiple(g.slit_x, s0)) throw GeometryError("slit does not lie on a background grid line");
  if (!is_integer_multiple(g.slit_tip_y, s_fine)) throw GeometryError("slit tip is not a fine-grid vertex");

  qt.status.resize(qt.levels + 1);
  for (int k = 0; k <= qt.levels; ++k) qt.status[k].assign(qt.dim(k) * qt.dim(k), 0);
  std::fill(qt.status[0].begin(), qt.status[0].end(), 1);

  for (int k = 0; k < qt.levels; ++k) {
    const double sk = s0 / static_cast<double>(1 << k);
    const long n = static_cast<long>(qt.dim(k));
    for (long j = 0; j < n; ++j)
      for (long i = 0; i < n; ++i) {
        if (qt.get(k, i, j) != 1) continue;
        const Point2 centre{(static_cast<double>(i) + 0.5) * sk, (static_cast<double>(j) + 0.5) * sk};
        if (cell_in_region(g, sizing, centre, 0.5 * sk)) qt.refine(k, i, j);
      }
  }

  // 2:1 balance across cell edges.
  const long dirs[4][2] = {{-1, 0}, {1, 0}, {0, -1}, {0, 1}};
  for (bool changed = true; changed;) {
    changed = false;
    for (int k = 0; k + 2 <= qt.levels; ++k) {
      const long n = static_cast<long>(qt.dim(k));
      for (long j = 0; j < n; ++j)
        for (long i = 0; i < n; ++i) {
          if (qt.get(k, i, j) != 1) continue;
          bool violate = false;
          for (const auto& d : dirs) {
            const long ni = i + d[0], nj = j + d[1];
            if (qt.get(k, ni, nj) != 2) continue;
            // children of the neighbour that touch the shared edge
            for (int c = 0; c < 2 && !violate; ++c) {
              long ci = 2 * ni, cj = 2 * nj;
              if (d[0] == -1) { ci += 1; cj += c; }
              else if (d[0] == 1) { cj += c; }
              else if (d[1] == -1) { cj += 1; ci += c; }
              else { ci += c; }
              if (qt.get(k + 1, ci, cj) == 2) violate = true;
            }
          }
          if (violate) {
            qt.refine(k, i, j);
            changed = true;
          }
        }
    }
  }

  // Integer lattice at half the finest spacing holds every corner, midpoint and centre.
  const long res = static_cast<long>(qt.dim(qt.levels)) * 2;
  TriMesh mesh;
  mesh.h_min = sizing.h_min;
  mesh.h_max = sizing.h_max;
  mesh.geometry = g;
  std::unordered_map<long long, std::int32_t> index;
  auto node_at = [&](long I, long J) {
    const long long key = static_cast<long long>(I) * (res + 1) + J;
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    const auto id = static_cast<std::int32_t>(mesh.nodes.size());
    mesh.nodes.push_back({static_cast<double>(I) * side / static_cast<double>(res),
                          static_cast<double>(J) * side / static_cast<double>(res)});
    index.emplace(key, id);
    return id;
  };

  for (int k = 0; k <= qt.levels; ++k) {
    const long n = static_cast<long>(qt.dim(k));
    const long f = 1L << (qt.levels + 1 - k);
    for (long j = 0; j < n; ++j)
      for (long i = 0; i < n; ++i) {
        if (qt.get(k, i, j) != 1) continue;
        const long X0 = i * f, Y0 = j * f, h = f / 2;
        const std::int32_t centre = node_at(X0 + h, Y0 + h);
        std::vector<std::int32_t> ring;
        ring.push_back(node_at(X0, Y0));
        if (qt.get(k, i, j - 1) == 2) ring.push_back(node_at(X0 + h, Y0));
        ring.push_back(node_at(X0 + f, Y0));
        if (qt.get(k, i + 1, j) == 2) ring.push_back(node_at(X0 + f, Y0 + h));
        ring.push_back(node_at(X0 + f, Y0 + f));
        if (qt.get(k, i, j + 1) == 2) ring.push_back(node_at(X0 + h, Y0 + f));
        ring.push_back(node_at(X0, Y0 + f));
        if (qt.get(k, i - 1, j) == 2) ring.push_back(node_at(X0, Y0 + h));
        for (std::size_t m = 0; m < ring.size(); ++m)
          mesh.triangles.push_back({centre, ring[m], ring[(m + 1) % ring.size()]});
      }
  }

  // Cut the hole: drop triangles whose centroid lies inside the circle.
  {
    std::vector<std::array<std::int32_t, 3>> kept;
    kept.reserve(mesh.triangles.size());
    for (const auto& tri : mesh.triangles) {
      const Point2 c = (1.0 / 3.0) * (mesh.nodes[tri[0]] + mesh.nodes[tri[1]] + mesh.nodes[tri[2]]);
      if (norm(c - g.hole_center) >= g.radius) kept.push_back(tri);
    }
    mesh.triangles = std::move(kept);
  }

  // Compact away nodes that only belonged to removed triangles.
  auto compact = [&mesh] {
    std::vector<std::int32_t> remap(mesh.nodes.size(), -1);
    for (const auto& tri : mesh.triangles)
      for (auto v : tri) remap[v] = 0;
    std::vector<Point2> nodes;
    for (std::size_t n = 0; n < remap.size(); ++n)
      if (remap[n] == 0) {
        remap[n] = static_cast<std::int32_t>(nodes.size());
        nodes.push_back(mesh.nodes[n]);
      }
    for (auto& tri : mesh.triangles)
      for (auto& v : tri) v = remap[v];
    mesh.nodes = std::move(nodes);
  };

  // Hole boundary = boundary edges of the kept set that are not on the outer square.
  auto mark_hole = [&mesh] {
    mesh.markers.assign(mesh.nodes.size(), NodeMarker::free);
    std::vector<std::pair<std::int32_t, std::int32_t>> all;
    for (const auto& tri : mesh.triangles)
      for (int k = 0; k < 3; ++k) {
        auto i = tri[k], j = tri[(k + 1) % 3];
        all.emplace_back(std::min(i, j), std::max(i, j));
      }
    std::sort(all.begin(), all.end());
    for (std::size_t e = 0; e < all.size();) {
      std::size_t f = e;
      while (f < all.size() && all[f] == all[e]) ++f;
      if (f - e == 1) {
        const auto [i, j] = all[e];
        const Point2 pi = mesh.nodes[i], pj = mesh.nodes[j];
        const bool outer = on_outer_boundary(mesh, pi) && on_outer_boundary(mesh, pj) &&
                           on_outer_boundary(mesh, 0.5 * (pi + pj));
        if (!outer) {
          mesh.markers[i] = NodeMarker::hole;
          mesh.markers[j] = NodeMarker::hole;
        }
      }
      e = f;
    }
  };

  // A triangle with every vertex on the hole boundary would be inscribed in the
  // circle after projection, so it belongs to the hole.
  for (;;) {
    compact();
    mark_hole();
    const auto before = mesh.triangles.size();
    std::erase_if(mesh.triangles, [&](const auto& tri) {
      return mesh.markers[tri[0]] == NodeMarker::hole && mesh.markers[tri[1]] == NodeMarker::hole &&
             mesh.markers[tri[2]] == NodeMarker::hole;
    });
    if (mesh.triangles.size() == before) break;
  }
  for (std::size_t n = 0; n < mesh.nodes.size(); ++n) {
    if (mesh.markers[n] != NodeMarker::hole) continue;
    const Point2 d = mesh.nodes[n] - g.hole_center;
    mesh.nodes[n] = g.hole_center + (g.radius / norm(d)) * d;
  }

  const double tol = 1e-9 * g.a;
  auto on_slit_line = [&](Point2 p) { return std::abs(p.x - g.slit_x) <= tol && p.y >= g.slit_tip_y - tol; };

  // Laplacian smoothing of unconstrained interior nodes.
  {
    auto adj = node_neighbours(mesh);
    std::vector<char> movable(mesh.nodes.size(), 0);
    for (std::size_t n = 0; n < mesh.nodes.size(); ++n)
      movable[n] = mesh.markers[n] == NodeMarker::free && !on_outer_boundary(mesh, mesh.nodes[n]) &&
                   !on_slit_line(mesh.nodes[n]);
    for (int pass = 0; pass < 3; ++pass) {
      std::vector<Point2> next = mesh.nodes;
      for (std::size_t n = 0; n < mesh.nodes.size(); ++n) {
        if (!movable[n] || adj[n].empty()) continue;
        Point2 sum{};
        for (auto m : adj[n]) sum = sum + mesh.nodes[m];
        next[n] = (1.0 / static_cast<double>(adj[n].size())) * sum;
      }
      // Reject a pass that would invert anything.
      std::swap(mesh.nodes, next);
      if (min_signed_area(mesh) <= 0.0) {
        std::swap(mesh.nodes, next);
        break;
      }
    }
  }

  // Duplicate slit nodes above the tip; triangles right of the slit use the copies.
  {
    std::unordered_map<std::int32_t, std::int32_t> twin;
    const auto original_count = mesh.nodes.size();
    for (std::size_t n = 0; n < original_count; ++n) {
      const Point2 p = mesh.nodes[n];
      if (on_slit_line(p) && p.y > g.slit_tip_y + tol) {
        twin[static_cast<std::int32_t>(n)] = static_cast<std::int32_t>(mesh.nodes.size());
        mesh.nodes.push_back(p);
        mesh.markers.push_back(NodeMarker::slit_right);
        mesh.markers[n] = NodeMarker::slit_left;
      } else if (on_slit_line(p) && std::abs(p.y - g.slit_tip_y) <= tol) {
        mesh.slit_tip_node = static_cast<std::int32_t>(n);
      }
    }
    for (auto& tri : mesh.triangles) {
      const double cx = (mesh.nodes[tri[0]].x + mesh.nodes[tri[1]].x + mesh.nodes[tri[2]].x) / 3.0;
      if (cx <= g.slit_x) continue;
      for (auto& v : tri)
        if (auto it = twin.find(v); it != twin.end()) v = it->second;
    }
  }
  if (mesh.slit_tip_node < 0) throw GeometryError("slit tip is not a mesh node");

  // Dirichlet markers on the top edge; the slit top node is split between both sides.
  for (std::size_t n = 0; n < mesh.nodes.size(); ++n) {
    const Point2 p = mesh.nodes[n];
    if (p.y < side - tol) continue;
    if (std::abs(p.x - g.slit_x) <= tol)
      mesh.markers[n] = mesh.markers[n] == NodeMarker::slit_right ? NodeMarker::dir_plus : NodeMarker::dir_minus;
    else
      mesh.markers[n] = p.x < g.slit_x ? NodeMarker::dir_minus : NodeMarker::dir_plus;
  }

  if (min_signed_area(mesh) <= 0.0) throw GeometryError("mesh generation produced an inverted triangle");
  return mesh;
}

TriMesh deform_hole_boundary(const TriMesh& mesh, const std::function<double(double)>& radius_fn,
                             double blend_width) {
  if (!(blend_width > 0.0)) throw InvalidArgument("blend width must be positive");
  const auto& g = mesh.geometry;
  const double R = g.radius;
  const double side = g.side();
  // The blend band stops at the outer boundary when that is closer than blend_width.
  auto band = [&](double phi) {
    const double cx = std::cos(phi), cy = std::sin(phi);
    double reach = std::numeric_limits<double>::infinity();
    if (cx > 0.0) reach = std::min(reach, (side - g.hole_center.x) / cx);
    if (cx < 0.0) reach = std::min(reach, -g.hole_center.x / cx);
    if (cy > 0.0) reach = std::min(reach, (side - g.hole_center.y) / cy);
    if (cy < 0.0) reach = std::min(reach, -g.hole_center.y / cy);
    return std::min(blend_width, reach - R);
  };
  auto check = [&](double phi) {
    const double r = radius_fn(phi);
    if (!(r > 0.0)) throw InvalidArgument("radius function must be positive");
    if (!(std::abs(r - R) < 0.5 * band(phi)))
      throw InvalidArgument("hole perturbation exceeds half the blend width");
  };
  for (int k = 0; k < 720; ++k) check(2.0 * std::numbers::pi * k / 720.0);

  TriMesh out = mesh;
  const double tol = 1e-9 * g.a;
  for (std::size_t n = 0; n < mesh.nodes.size(); ++n) {
    const Point2 p = mesh.nodes[n];
    const Point2 d = p - g.hole_center;
    const double r = norm(d);
    const bool hole = mesh.markers[n] == NodeMarker::hole;
    if (!hole && r >= R + blend_width) continue;
    if (r == 0.0) continue;
    const double phi = std::atan2(d.y, d.x);
    const double target = radius_fn(phi);
    if (hole) check(phi);
    const double weight = hole ? 1.0 : std::max(0.0, 1.0 - (r - R) / band(phi));
    const double scale = (target - R) * weight / r;
    Point2 shift = scale * d;
    // Outer-boundary nodes slide along the boundary only.
    if (p.x <= tol || p.x >= side - tol) shift.x = 0.0;
    if (p.y <= tol || p.y >= side - tol) shift.y = 0.0;
    out.nodes[n] = p + shift;
  }
  if (min_signed_area(out) <= 0.0)
    throw DeformationError("hole deformation inverted an element; reduce the perturbation or refine");
  return out;
}

PointLocator::PointLocator(const TriMesh& mesh) : mesh_(&mesh) {
  double xmin = std::numeric_limits<double>::infinity(), ymin = xmin;
  double xmax = -xmin, ymax = -xmin;
  for (const auto& p : mesh.nodes) {
    xmin = std::min(xmin, p.x);
    ymin = std::min(ymin, p.y);
    xmax = std::max(xmax, p.x);
    ymax = std::max(ymax, p.y);
  }
  if (mesh.nodes.empty()) xmin = ymin = xmax = ymax = 0.0;
  double total_area = 0.0;
  for (std::size_t t = 0; t < mesh.triangle_count(); ++t) total_area += std::abs(signed_area(mesh, t));
  const double avg = mesh.triangle_count() > 0 ? total_area / static_cast<double>(mesh.triangle_count()) : 1.0;
  cell_ = std::max(2.0 * std::sqrt(avg), 1e-12);
  x0_ = xmin;
  y0_ = ymin;
  nx_ = static_cast<std::size_t>(std::floor((xmax - xmin) / cell_)) + 1;
  ny_ = static_cast<std::size_t>(std::floor((ymax - ymin) / cell_)) + 1;
  buckets_.resize(nx_ * ny_);
  for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
    const auto& tri = mesh.triangles[t];
    double bx0 = mesh.nodes[tri[0]].x, bx1 = bx0, by0 = mesh.nodes[tri[0]].y, by1 = by0;
    for (int k = 1; k < 3; ++k) {
      bx0 = std::min(bx0, mesh.nodes[tri[k]].x);
      bx1 = std::max(bx1, mesh.nodes[tri[k]].x);
      by0 = std::min(by0, mesh.nodes[tri[k]].y);
      by1 = std::max(by1, mesh.nodes[tri[k]].y);
    }
    const auto i0 = bucket_of({bx0, by0}), i1 = bucket_of({bx1, by1});
    const std::size_t ix0 = i0 % nx_, iy0 = i0 / nx_, ix1 = i1 % nx_, iy1 = i1 / nx_;
    for (std::size_t iy = iy0; iy <= iy1; ++iy)
      for (std::size_t ix = ix0; ix <= ix1; ++ix) buckets_[iy * nx_ + ix].push_back(static_cast<std::int32_t>(t));
  }
}

std::size_t PointLocator::bucket_of(Point2 p) const {
  auto clampi = [](double v, std::size_t n) {
    const double f = std::floor(v);
    if (f < 0) return std::size_t{0};
    return std::min(static_cast<std::size_t>(f), n - 1);
  };
  return clampi((p.y - y0_) / cell_, ny_) * nx_ + clampi((p.x - x0_) / cell_, nx_);
}

std::optional<Location> PointLocator::locate(Point2 p) const {
  const double eps = 1e-12;
  for (auto t : buckets_[bucket_of(p)]) {
    const auto& tri = mesh_->triangles[t];
    const Point2 a = mesh_->nodes[tri[0]], b = mesh_->nodes[tri[1]], c = mesh_->nodes[tri[2]];
    const double det = (b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y);
    const double l1 = ((p.x - a.x) * (c.y - a.y) - (c.x - a.x) * (p.y - a.y)) / det;
    const double l2 = ((b.x - a.x) * (p.y - a.y) - (p.x - a.x) * (b.y - a.y)) / det;
    const double l0 = 1.0 - l1 - l2;
    if (l0 >= -eps && l1 >= -eps && l2 >= -eps) return Location{t, {l0, l1, l2}};
  }
  return std::nullopt;
}

std::int32_t PointLocator::nearest_node(Point2 p) const {
  std::int32_t best = -1;
  double bd = std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < mesh_->node_count(); ++n) {
    const double d = norm(mesh_->nodes[n] - p);
    if (d < bd) {
      bd = d;
      best = static_cast<std::int32_t>(n);
    }
  }
  return best;
}

double interpolate(const TriMesh& mesh, const Location& loc, std::span<const double> field) {
  const auto& tri = mesh.triangles[loc.triangle];
  return loc.bary[0] * field[tri[0]] + loc.bary[1] * field[tri[1]] + loc.bary[2] * field[tri[2]];
}

std::size_t LineProbe::inside_count() const {
  return static_cast<std::size_t>(std::count_if(samples.begin(), samples.end(), [](const auto& s) { return s.has_value(); }));
}

LineProbe build_line_probe(const TriMesh& mesh, Point2 anchor, Point2 direction, std::size_t n_samples) {
  if (n_samples < 2) throw InvalidArgument("line probe needs at least two samples");
  LineProbe probe;
  probe.anchor = anchor;
  probe.direction = direction;
  PointLocator locator(mesh);
  probe.s.resize(n_samples);
  probe.samples.resize(n_samples);
  for (std::size_t k = 0; k < n_samples; ++k) {
    const double s = static_cast<double>(k) / static_cast<double>(n_samples - 1);
    probe.s[k] = s;
    probe.samples[k] = locator.locate(probe.point(s));
  }
  if (probe.inside_count() == 0) throw InvalidArgument("probe line lies entirely outside the mesh");
  return probe;
}

}  // namespace sfrac
