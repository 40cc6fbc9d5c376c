#include "metawave/mesh.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <stdexcept>

namespace metawave {

int Mesh::boundary_orientation(int e) const {
  if (!is_boundary_edge(e))
    throw std::invalid_argument("boundary_orientation: interior edge");
  const int c = edge_cells[e][0];
  for (int le = 0; le < 3; ++le)
    if (cell_edges[c][le] == e) return cell_edge_aligned[c][le];
  throw std::logic_error("edge/cell adjacency inconsistent");
}

std::vector<int> Mesh::boundary_edges() const {
  std::vector<int> out;
  for (int e = 0; e < n_edges(); ++e)
    if (is_boundary_edge(e)) out.push_back(e);
  return out;
}

std::vector<int> Mesh::boundary_edges(const std::string& label) const {
  const int id = label_id(label);
  std::vector<int> out;
  for (int e = 0; e < n_edges(); ++e)
    if (edge_label[e] == id) out.push_back(e);
  return out;
}

int Mesh::label_id(const std::string& label) const {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return static_cast<int>(i);
  throw std::invalid_argument("unknown boundary label: " + label);
}

double Mesh::h_max() const {
  double h = 0.0;
  for (int e = 0; e < n_edges(); ++e) h = std::max(h, edge_length(e));
  return h;
}

int Mesh::find_cell(const Vec2& p) const {
  const double tol = 1e-12;
  for (int c = 0; c < n_cells(); ++c) {
    const CellGeometry g = cell_geometry(c);
    const Vec2 r = g.pull_back(p);
    if (r.x() >= -tol && r.y() >= -tol && r.x() + r.y() <= 1.0 + tol)
      return c;
  }
  return -1;
}

Mesh build_structured(const Rect& domain, int n) {
  if (n < 1) throw std::invalid_argument("build_structured: n < 1");
  if (domain.width() <= 0.0 || domain.height() <= 0.0)
    throw std::invalid_argument("build_structured: empty domain");

  Mesh mesh;
  const double hx = domain.width() / n;
  const double hy = domain.height() / n;

  mesh.vertices.reserve((n + 1) * (n + 1));
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i)
      mesh.vertices.emplace_back(domain.x0 + i * hx, domain.y0 + j * hy);

  auto vid = [n](int i, int j) { return j * (n + 1) + i; };
  mesh.cells.reserve(2 * n * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const int ll = vid(i, j), lr = vid(i + 1, j);
      const int ul = vid(i, j + 1), ur = vid(i + 1, j + 1);
      mesh.cells.push_back({ll, lr, ur});
      mesh.cells.push_back({ll, ur, ul});
    }

  // Edge table keyed by sorted endpoints; orientation low -> high id.
  std::map<std::pair<int, int>, int> edge_of;
  mesh.cell_edges.resize(mesh.cells.size());
  mesh.cell_edge_aligned.resize(mesh.cells.size());
  for (int c = 0; c < mesh.n_cells(); ++c) {
    for (int le = 0; le < 3; ++le) {
      const int va = mesh.cells[c][le];
      const int vb = mesh.cells[c][(le + 1) % 3];
      const auto key = std::minmax(va, vb);
      auto [it, inserted] = edge_of.try_emplace(key, mesh.n_edges());
      if (inserted) {
        mesh.edges.push_back({key.first, key.second});
        mesh.edge_cells.push_back({-1, -1});
      }
      const int e = it->second;
      mesh.cell_edges[c][le] = e;
      mesh.cell_edge_aligned[c][le] = (va < vb) ? +1 : -1;
      auto& adj = mesh.edge_cells[e];
      if (adj[0] < 0)
        adj[0] = c;
      else if (adj[1] < 0)
        adj[1] = c;
      else
        throw std::logic_error("edge shared by more than two cells");
    }
  }

  for (int c = 0; c < mesh.n_cells(); ++c)
    if (mesh.cell_geometry(c).detJ <= 0.0)
      throw std::logic_error("cell orientation not counter-clockwise");

  mesh.edge_label.assign(mesh.n_edges(), -1);
  return mesh;
}

void classify_boundary(Mesh& mesh, const std::vector<BoundaryPart>& parts) {
  mesh.labels.clear();
  for (const auto& part : parts) mesh.labels.push_back(part.label);
  for (int e = 0; e < mesh.n_edges(); ++e) {
    if (!mesh.is_boundary_edge(e)) {
      mesh.edge_label[e] = -1;
      continue;
    }
    const Vec2 mid = mesh.edge_midpoint(e);
    int claimed = -1;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (!parts[i].where(mid)) continue;
      if (claimed >= 0)
        throw std::invalid_argument("boundary parts overlap near (" +
                                    std::to_string(mid.x()) + ", " +
                                    std::to_string(mid.y()) + ")");
      claimed = static_cast<int>(i);
    }
    if (claimed < 0)
      throw std::invalid_argument("boundary edge not claimed by any part near (" +
                                  std::to_string(mid.x()) + ", " +
                                  std::to_string(mid.y()) + ")");
    mesh.edge_label[e] = claimed;
  }
}

std::vector<int> classify_cells(const Mesh& mesh,
                                const std::function<int(const Vec2&)>& region) {
  std::vector<int> out(mesh.n_cells());
  for (int c = 0; c < mesh.n_cells(); ++c) {
    const Vec2 cen = mesh.centroid(c);
    const int r = region(cen);
    // A vertex may sit exactly on a region interface; pulling it towards
    // the centroid resolves the tie.  Genuine straddling is an error.
    for (const Vec2& v : mesh.cell_vertices(c)) {
      const Vec2 probe = cen + (1.0 - 1e-9) * (v - cen);
      if (region(probe) != r)
        throw std::invalid_argument(
            "cell straddles a region interface near (" +
            std::to_string(cen.x()) + ", " + std::to_string(cen.y()) +
            "); align the mesh with the region boundary");
    }
    out[c] = r;
  }
  return out;
}

std::string mesh_to_text(const Mesh& mesh) {
  std::string out;
  char line[128];
  std::snprintf(line, sizeof line, "%d %d\n", mesh.n_vertices(), mesh.n_cells());
  out += line;
  for (const Vec2& v : mesh.vertices) {
    std::snprintf(line, sizeof line, "%.17g %.17g\n", v.x(), v.y());
    out += line;
  }
  for (const auto& c : mesh.cells) {
    std::snprintf(line, sizeof line, "%d %d %d\n", c[0], c[1], c[2]);
    out += line;
  }
  return out;
}

}  // namespace metawave
