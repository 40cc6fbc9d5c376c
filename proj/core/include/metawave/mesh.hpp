#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "metawave/geometry.hpp"

namespace metawave {

/// Conforming triangle mesh with oriented edges.
///
/// Edges are stored from the lower to the higher vertex id; the global
/// edge normal is the counter-clockwise tangent rotated by -90 degrees.
/// For each cell, `cell_edge_aligned` records whether the cell's local
/// counter-clockwise traversal of edge le (from vertex le to le+1 mod 3)
/// runs with (+1) or against (-1) the global edge direction.  Exactly one
/// of the two cells sharing an interior edge is aligned.
class Mesh {
 public:
  std::vector<Vec2> vertices;
  std::vector<std::array<int, 3>> cells;             // ccw vertex triples
  std::vector<std::array<int, 2>> edges;             // (low, high) vertex ids
  std::vector<std::array<int, 3>> cell_edges;        // per cell, edge ids
  std::vector<std::array<int, 3>> cell_edge_aligned; // +1 / -1
  std::vector<std::array<int, 2>> edge_cells;        // adjacent cells, -1 if none
  std::vector<int> edge_label;                       // -1 interior, else boundary label id
  std::vector<std::string> labels;                   // boundary label names

  int n_vertices() const { return static_cast<int>(vertices.size()); }
  int n_cells() const { return static_cast<int>(cells.size()); }
  int n_edges() const { return static_cast<int>(edges.size()); }

  std::array<Vec2, 3> cell_vertices(int c) const {
    return {vertices[cells[c][0]], vertices[cells[c][1]], vertices[cells[c][2]]};
  }
  CellGeometry cell_geometry(int c) const {
    const auto v = cell_vertices(c);
    return CellGeometry::affine(v[0], v[1], v[2]);
  }
  Vec2 centroid(int c) const {
    const auto v = cell_vertices(c);
    return (v[0] + v[1] + v[2]) / 3.0;
  }
  double cell_area(int c) const { return cell_geometry(c).area(); }

  Vec2 edge_midpoint(int e) const {
    return 0.5 * (vertices[edges[e][0]] + vertices[edges[e][1]]);
  }
  double edge_length(int e) const {
    return (vertices[edges[e][1]] - vertices[edges[e][0]]).norm();
  }
  /// Unit normal in the global edge orientation (tangent rotated by -90).
  Vec2 edge_normal(int e) const {
    const Vec2 t = vertices[edges[e][1]] - vertices[edges[e][0]];
    return rotate_cw(t.normalized());
  }
  bool is_boundary_edge(int e) const { return edge_cells[e][1] < 0; }
  /// +1 if the global normal of boundary edge e points out of the domain.
  int boundary_orientation(int e) const;

  std::vector<int> boundary_edges() const;
  std::vector<int> boundary_edges(const std::string& label) const;
  int label_id(const std::string& label) const;

  /// Longest edge in the mesh.
  double h_max() const;

  /// Cell containing the point (barycentric test with tolerance), -1 if none.
  int find_cell(const Vec2& p) const;
};

/// Structured mesh of an axis-aligned rectangle: n x n squares, each split
/// along the lower-left -> upper-right diagonal into two triangles.
Mesh build_structured(const Rect& domain, int n);

/// Assign boundary labels by a predicate on edge midpoints.  Every
/// boundary edge must be claimed by exactly one part.
struct BoundaryPart {
  std::string label;
  std::function<bool(const Vec2&)> where;
};
void classify_boundary(Mesh& mesh, const std::vector<BoundaryPart>& parts);

/// Piecewise-constant cell classification by a point predicate.  The
/// classifier is evaluated at cell centroids; each cell must lie entirely
/// in one region (all vertices, pulled slightly towards the centroid,
/// agree), otherwise this throws.
std::vector<int> classify_cells(const Mesh& mesh,
                                const std::function<int(const Vec2&)>& region);

/// Plain-text node/element dump:
///   line 1: <n_vertices> <n_cells>
///   then one "x y" line per vertex, then one "v0 v1 v2" line per cell.
std::string mesh_to_text(const Mesh& mesh);

}  // namespace metawave
