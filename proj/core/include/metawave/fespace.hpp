#pragma once

#include <functional>
#include <memory>
#include <string>

#include <Eigen/Dense>

#include "metawave/mesh.hpp"
#include "metawave/refelem.hpp"

namespace metawave {

/// Supported velocity/pressure/auxiliary space pairings, parameterised by
/// the pressure degree k: S_k x P_k with S_k either BDM_{k+1} or RTN_k.
/// The auxiliary vector space is P_{k+delta}^2 with delta = 1 for BDM and
/// 0 for RTN; post-processing targets P_{k+2}.
enum class Pairing { BDM1, RTN0, BDM2, RTN1 };

int pairing_k(Pairing p);
int pairing_delta(Pairing p);
ElementFamily velocity_family(Pairing p);
std::string pairing_name(Pairing p);
Pairing pairing_from_name(const std::string& name);

/// Global finite element space over a mesh.
///
/// H(div) spaces number edge DOFs first (edge-major, moment-minor), then
/// cell interiors.  A global edge DOF is the arclength-weighted Legendre
/// moment of v.n in the global edge orientation; restricted to a cell
/// whose traversal runs against that orientation, moment m picks up the
/// sign (-1)^{m+1}.  DG spaces are numbered cell-major.
class FESpace {
 public:
  FESpace(const Mesh& mesh, const ElementFamily& family);

  const Mesh& mesh() const { return *mesh_; }
  const ReferenceElement& ref() const { return ref_; }
  const ElementFamily& family() const { return ref_.family(); }
  bool hdiv() const { return family().hdiv(); }

  int n_dofs() const { return n_dofs_; }
  int n_local() const { return ref_.dim(); }

  struct LocalDof {
    int index;
    double sign;
  };
  LocalDof cell_dof(int cell, int local) const;
  int edge_dof(int edge, int moment) const;  // H(div) only

  /// Canonical (edge/interior moment) interpolation of a smooth field.
  Eigen::VectorXd interpolate(
      const std::function<Vec2(const Vec2&)>& v) const;

  /// Cell-wise L2 projection.
  Eigen::VectorXd project(const std::function<double(const Vec2&)>& f) const;
  Eigen::VectorXd project_vector(
      const std::function<Vec2(const Vec2&)>& f) const;

 private:
  const Mesh* mesh_;
  ReferenceElement ref_;
  int n_dofs_ = 0;
  int interior_offset_ = 0;  // H(div): first interior DOF index
};

/// A coefficient vector bound to its space.
struct FEFunction {
  const FESpace* space = nullptr;
  Eigen::VectorXd coeffs;
};

/// Point evaluation on a given cell (point in physical coordinates).
Vec2 eval_vector(const FEFunction& f, int cell, const Vec2& x);
double eval_scalar(const FEFunction& f, int cell, const Vec2& x);
double eval_div(const FEFunction& f, int cell, const Vec2& x);

/// The four spaces of one pairing on a common mesh.
struct SpaceSet {
  std::shared_ptr<const Mesh> mesh;
  Pairing pairing;
  std::unique_ptr<FESpace> V;      // velocity, H(div)
  std::unique_ptr<FESpace> Q;      // pressure, P_k
  std::unique_ptr<FESpace> W;      // auxiliary vectors, P_{k+delta}^2
  std::unique_ptr<FESpace> Qstar;  // post-processing, P_{k+2}

  static SpaceSet make(std::shared_ptr<const Mesh> mesh, Pairing pairing);
};

}  // namespace metawave
