#include "metawave/output.hpp"

#include <cstdarg>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace metawave {

namespace {

void appendf(std::string& out, const char* fmt, ...) {
  char buf[256];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, args);
  va_end(args);
  out += buf;
}

}  // namespace

std::string vtk_snapshot(const Mesh& mesh, const CellScalars& scalars,
                         const CellVectors& vectors) {
  std::string out;
  out += "# vtk DataFile Version 3.0\n";
  out += "metawave snapshot\n";
  out += "ASCII\n";
  out += "DATASET UNSTRUCTURED_GRID\n";
  appendf(out, "POINTS %d double\n", mesh.n_vertices());
  for (const Vec2& v : mesh.vertices)
    appendf(out, "%.17g %.17g 0\n", v.x(), v.y());
  appendf(out, "CELLS %d %d\n", mesh.n_cells(), 4 * mesh.n_cells());
  for (const auto& c : mesh.cells)
    appendf(out, "3 %d %d %d\n", c[0], c[1], c[2]);
  appendf(out, "CELL_TYPES %d\n", mesh.n_cells());
  for (int c = 0; c < mesh.n_cells(); ++c) out += "5\n";

  if (!scalars.empty() || !vectors.empty())
    appendf(out, "CELL_DATA %d\n", mesh.n_cells());
  for (const auto& [name, values] : scalars) {
    if (values.size() != mesh.n_cells())
      throw std::invalid_argument("vtk_snapshot: bad scalar size for " + name);
    appendf(out, "SCALARS %s double 1\n", name.c_str());
    out += "LOOKUP_TABLE default\n";
    for (int c = 0; c < mesh.n_cells(); ++c)
      appendf(out, "%.17g\n", values(c));
  }
  for (const auto& [name, values] : vectors) {
    if (values.rows() != mesh.n_cells())
      throw std::invalid_argument("vtk_snapshot: bad vector size for " + name);
    appendf(out, "VECTORS %s double\n", name.c_str());
    for (int c = 0; c < mesh.n_cells(); ++c)
      appendf(out, "%.17g %.17g 0\n", values(c, 0), values(c, 1));
  }
  return out;
}

std::string csv_escape(const std::string& field) {
  const bool needs_quotes =
      field.find_first_of(",\"\n\r") != std::string::npos;
  if (!needs_quotes) return field;
  std::string out = "\"";
  for (const char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out += ',';
    out += csv_escape(header[i]);
  }
  out += "\r\n";
  for (const auto& row : rows) {
    if (row.size() != header.size())
      throw std::invalid_argument("csv_table: row width != header width");
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += csv_escape(row[i]);
    }
    out += "\r\n";
  }
  return out;
}

std::string csv_snapshot(const Mesh& mesh, const CellScalars& scalars,
                         const CellVectors& vectors) {
  std::vector<std::string> header = {"x", "y"};
  for (const auto& [name, values] : scalars) header.push_back(name);
  for (const auto& [name, values] : vectors) {
    header.push_back(name + "_x");
    header.push_back(name + "_y");
  }

  char buf[64];
  auto num = [&buf](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };

  std::vector<std::vector<std::string>> rows;
  rows.reserve(mesh.n_cells());
  for (int c = 0; c < mesh.n_cells(); ++c) {
    std::vector<std::string> row;
    const Vec2 cen = mesh.centroid(c);
    row.push_back(num(cen.x()));
    row.push_back(num(cen.y()));
    for (const auto& [name, values] : scalars) row.push_back(num(values(c)));
    for (const auto& [name, values] : vectors) {
      row.push_back(num(values(c, 0)));
      row.push_back(num(values(c, 1)));
    }
    rows.push_back(std::move(row));
  }
  return csv_table(header, rows);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

Eigen::VectorXd cell_means(const FESpace& space, const Eigen::VectorXd& coeffs) {
  if (space.family().kind != FamilyKind::DGScalar)
    throw std::invalid_argument("cell_means: expected a scalar DG space");
  const Mesh& mesh = space.mesh();
  Eigen::VectorXd means(mesh.n_cells());
  for (int c = 0; c < mesh.n_cells(); ++c)
    means(c) = coeffs(space.cell_dof(c, 0).index);  // psi_0 = 1
  return means;
}

Eigen::Matrix<double, Eigen::Dynamic, 2> centroid_values(
    const FESpace& space, const Eigen::VectorXd& coeffs) {
  const Mesh& mesh = space.mesh();
  Eigen::Matrix<double, Eigen::Dynamic, 2> vals(mesh.n_cells(), 2);
  FEFunction f{&space, coeffs};
  for (int c = 0; c < mesh.n_cells(); ++c) {
    const Vec2 v = eval_vector(f, c, mesh.centroid(c));
    vals(c, 0) = v.x();
    vals(c, 1) = v.y();
  }
  return vals;
}

}  // namespace metawave
