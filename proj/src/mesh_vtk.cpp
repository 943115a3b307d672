#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "sfrac/errors.hpp"
#include "sfrac/mesh.hpp"

namespace sfrac {

void write_vtk(std::ostream& os, const TriMesh& mesh, std::span<const NamedField> fields) {
  const auto n = mesh.node_count();
  const auto m = mesh.triangle_count();
  os << "# vtk DataFile Version 3.0\n"
     << "sfrac anti-plane mesh\n"
     << "ASCII\n"
     << "DATASET UNSTRUCTURED_GRID\n";
  os << std::setprecision(std::numeric_limits<double>::max_digits10);
  os << "POINTS " << n << " double\n";
  for (const auto& p : mesh.nodes) os << p.x << ' ' << p.y << " 0\n";
  os << "CELLS " << m << ' ' << 4 * m << '\n';
  for (const auto& t : mesh.triangles) os << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  os << "CELL_TYPES " << m << '\n';
  for (std::size_t t = 0; t < m; ++t) os << "5\n";
  if (fields.empty()) return;
  os << "POINT_DATA " << n << '\n';
  for (const auto& f : fields) {
    if (f.values.size() != n) throw InvalidArgument("field '" + f.name + "' does not match node count");
    os << "SCALARS " << f.name << " float 1\n"
       << "LOOKUP_TABLE default\n";
    for (double v : f.values) os << v << '\n';
  }
}

const std::vector<double>* VtkData::field(const std::string& name) const {
  for (const auto& [key, values] : fields)
    if (key == name) return &values;
  return nullptr;
}

VtkData read_vtk(std::istream& is) {
  VtkData data;
  std::string token;
  auto expect = [&](const std::string& what) {
    if (!(is >> token) || token != what) throw InvalidArgument("VTK: expected '" + what + "'");
  };
  std::string line;
  for (int k = 0; k < 4 && std::getline(is, line); ++k) {
  }
  expect("POINTS");
  std::size_t n = 0;
  is >> n >> token;
  data.nodes.resize(n);
  for (auto& p : data.nodes) {
    double z = 0;
    is >> p.x >> p.y >> z;
  }
  expect("CELLS");
  std::size_t m = 0, total = 0;
  is >> m >> total;
  data.triangles.resize(m);
  for (auto& t : data.triangles) {
    int count = 0;
    is >> count >> t[0] >> t[1] >> t[2];
    if (count != 3) throw InvalidArgument("VTK: only triangle cells are supported");
  }
  expect("CELL_TYPES");
  is >> m;
  for (std::size_t t = 0; t < m; ++t) is >> token;
  if (!is) throw InvalidArgument("VTK: truncated file");
  if (!(is >> token)) return data;
  if (token != "POINT_DATA") throw InvalidArgument("VTK: expected POINT_DATA");
  is >> n;
  while (is >> token) {
    if (token != "SCALARS") throw InvalidArgument("VTK: expected SCALARS");
    std::string name, type;
    int comps = 0;
    is >> name >> type >> comps;
    expect("LOOKUP_TABLE");
    is >> token;
    std::vector<double> values(n);
    for (auto& v : values) is >> v;
    if (!is) throw InvalidArgument("VTK: truncated field '" + name + "'");
    data.fields.emplace_back(name, std::move(values));
  }
  return data;
}

}  // namespace sfrac
