#pragma once

#include <Eigen/Dense>

#include "metawave/fespace.hpp"

namespace metawave {

/// Offsets of the six solution blocks (v, p, u, w, q, r) inside one
/// monolithic coefficient vector.  u and w share the auxiliary vector
/// space W_h; q and r share the pressure space Q_h.
struct BlockLayout {
  int nv = 0, np = 0, nw = 0, nq = 0;
  int off_v = 0, off_p = 0, off_u = 0, off_w = 0, off_q = 0, off_r = 0;
  int total = 0;

  static BlockLayout from(const SpaceSet& s) {
    BlockLayout l;
    l.nv = s.V->n_dofs();
    l.np = s.Q->n_dofs();
    l.nw = s.W->n_dofs();
    l.nq = s.Q->n_dofs();
    l.off_v = 0;
    l.off_p = l.off_v + l.nv;
    l.off_u = l.off_p + l.np;
    l.off_w = l.off_u + l.nw;
    l.off_q = l.off_w + l.nw;
    l.off_r = l.off_q + l.nq;
    l.total = l.off_r + l.nq;
    return l;
  }
};

/// Monolithic state with named block views.
class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(const BlockLayout& layout)
      : data(Eigen::VectorXd::Zero(layout.total)), layout_(layout) {}

  const BlockLayout& layout() const { return layout_; }

  Eigen::VectorXd data;

  Eigen::Ref<Eigen::VectorXd> v() { return data.segment(layout_.off_v, layout_.nv); }
  Eigen::Ref<Eigen::VectorXd> p() { return data.segment(layout_.off_p, layout_.np); }
  Eigen::Ref<Eigen::VectorXd> u() { return data.segment(layout_.off_u, layout_.nw); }
  Eigen::Ref<Eigen::VectorXd> w() { return data.segment(layout_.off_w, layout_.nw); }
  Eigen::Ref<Eigen::VectorXd> q() { return data.segment(layout_.off_q, layout_.nq); }
  Eigen::Ref<Eigen::VectorXd> r() { return data.segment(layout_.off_r, layout_.nq); }

  Eigen::Ref<const Eigen::VectorXd> v() const { return data.segment(layout_.off_v, layout_.nv); }
  Eigen::Ref<const Eigen::VectorXd> p() const { return data.segment(layout_.off_p, layout_.np); }
  Eigen::Ref<const Eigen::VectorXd> u() const { return data.segment(layout_.off_u, layout_.nw); }
  Eigen::Ref<const Eigen::VectorXd> w() const { return data.segment(layout_.off_w, layout_.nw); }
  Eigen::Ref<const Eigen::VectorXd> q() const { return data.segment(layout_.off_q, layout_.nq); }
  Eigen::Ref<const Eigen::VectorXd> r() const { return data.segment(layout_.off_r, layout_.nq); }

 private:
  BlockLayout layout_;
};

}  // namespace metawave
