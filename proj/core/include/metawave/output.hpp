#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "metawave/fespace.hpp"
#include "metawave/mesh.hpp"

namespace metawave {

using CellScalars = std::vector<std::pair<std::string, Eigen::VectorXd>>;
using CellVectors =
    std::vector<std::pair<std::string, Eigen::Matrix<double, Eigen::Dynamic, 2>>>;

/// Legacy ASCII VTK unstructured grid with per-cell data.
std::string vtk_snapshot(const Mesh& mesh, const CellScalars& scalars,
                         const CellVectors& vectors);

/// RFC 4180 CSV: fields containing commas, quotes, or newlines are quoted,
/// embedded quotes doubled.
std::string csv_escape(const std::string& field);
std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows);

/// Cell-centred snapshot table: x, y columns (centroids) then one column
/// per scalar and two per vector.
std::string csv_snapshot(const Mesh& mesh, const CellScalars& scalars,
                         const CellVectors& vectors);

void write_text_file(const std::string& path, const std::string& content);

/// Cell means of a scalar DG function (its lowest modal coefficient).
Eigen::VectorXd cell_means(const FESpace& space, const Eigen::VectorXd& coeffs);
/// Centroid values of a vector-valued function.
Eigen::Matrix<double, Eigen::Dynamic, 2> centroid_values(
    const FESpace& space, const Eigen::VectorXd& coeffs);

}  // namespace metawave
