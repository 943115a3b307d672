#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace sfrac {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
  friend bool operator==(Point2, Point2) = default;
};

double norm(Point2 p);

// Uniform P1 grid on [0, length].
struct IntervalMesh {
  std::vector<double> nodes;
  std::vector<std::array<std::int32_t, 2>> cells;
  double length = 0.0;

  std::size_t node_count() const { return nodes.size(); }
  std::size_t cell_count() const { return cells.size(); }
  double cell_size(std::size_t c) const { return nodes[cells[c][1]] - nodes[cells[c][0]]; }
};

IntervalMesh build_interval_mesh(double length, std::size_t n_cells);

enum class NodeMarker : std::uint8_t { free, dir_minus, dir_plus, hole, slit_left, slit_right };

std::string to_string(NodeMarker m);

// Square (0, 2a)^2 with a vertical slit {a} x (slit_tip_y, 2a) and a circular hole.
struct AntiplaneGeometry {
  double a = 1.0;
  Point2 hole_center{0.3, 0.3};
  double radius = 0.2;
  double slit_x = 1.0;
  double slit_tip_y = 1.5;

  double side() const { return 2.0 * a; }
  Point2 slit_tip() const { return {slit_x, slit_tip_y}; }
};

enum class RefineRegion {
  band,   // strip from slit tip to hole centre plus a ring around the hole
  block,  // rectangle spanning the hole and the slit tip
  whole,  // uniform fine mesh
};

std::string to_string(RefineRegion r);
RefineRegion refine_region_from_string(const std::string& s);

struct MeshSizing {
  double h_min = 0.01;
  double h_max = 0.04;
  RefineRegion region = RefineRegion::band;
  // Width of the refined strip and of the ring around the hole.
  double band_width = 0.24;
};

struct TriMesh {
  std::vector<Point2> nodes;
  std::vector<std::array<std::int32_t, 3>> triangles;  // counterclockwise
  std::vector<NodeMarker> markers;
  double h_min = 0.0;
  double h_max = 0.0;
  AntiplaneGeometry geometry;
  std::int32_t slit_tip_node = -1;

  std::size_t node_count() const { return nodes.size(); }
  std::size_t triangle_count() const { return triangles.size(); }
};

double signed_area(const TriMesh& mesh, std::size_t triangle);
double min_signed_area(const TriMesh& mesh);

// Unique undirected edges (i < j), sorted.
std::vector<std::pair<std::int32_t, std::int32_t>> mesh_edges(const TriMesh& mesh);

// Node-to-node adjacency over mesh edges.
std::vector<std::vector<std::int32_t>> node_neighbours(const TriMesh& mesh);

bool on_outer_boundary(const TriMesh& mesh, Point2 p);

TriMesh build_antiplane_mesh(const AntiplaneGeometry& geometry, const MeshSizing& sizing);

// Moves hole nodes radially onto radius_fn(phi) and blends the displacement
// linearly to zero at blend_width from the nominal circle, or at the outer
// boundary if that comes first along the ray. Returns a new mesh.
TriMesh deform_hole_boundary(const TriMesh& mesh, const std::function<double(double)>& radius_fn,
                             double blend_width);

struct Location {
  std::int32_t triangle = -1;
  std::array<double, 3> bary{};
};

// Bucket grid over the mesh bounding box for point-in-triangle queries.
class PointLocator {
 public:
  explicit PointLocator(const TriMesh& mesh);

  // Lowest-index triangle containing p (with a small tolerance), if any.
  std::optional<Location> locate(Point2 p) const;
  // Closest node by Euclidean distance, lowest index on ties.
  std::int32_t nearest_node(Point2 p) const;

 private:
  const TriMesh* mesh_;
  double x0_, y0_, cell_;
  std::size_t nx_, ny_;
  std::vector<std::vector<std::int32_t>> buckets_;

  std::size_t bucket_of(Point2 p) const;
};

double interpolate(const TriMesh& mesh, const Location& loc, std::span<const double> field);

struct LineProbe {
  Point2 anchor;
  Point2 direction;
  std::vector<double> s;
  std::vector<std::optional<Location>> samples;

  Point2 point(double param) const { return anchor + param * direction; }
  std::size_t inside_count() const;
};

LineProbe build_line_probe(const TriMesh& mesh, Point2 anchor, Point2 direction, std::size_t n_samples);

// Legacy ASCII VTK (UNSTRUCTURED_GRID, triangle cells of type 5). Each field is
// written as POINT_DATA SCALARS <name> float 1.
struct NamedField {
  std::string name;
  std::span<const double> values;
};
void write_vtk(std::ostream& os, const TriMesh& mesh, std::span<const NamedField> fields = {});

// Reads back what write_vtk produced: geometry plus the named point scalars.
struct VtkData {
  std::vector<Point2> nodes;
  std::vector<std::array<std::int32_t, 3>> triangles;
  std::vector<std::pair<std::string, std::vector<double>>> fields;

  const std::vector<double>* field(const std::string& name) const;
};
VtkData read_vtk(std::istream& is);

}  // namespace sfrac
