#include "metawave/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <tuple>

#include <Eigen/Eigenvalues>

namespace metawave {

namespace {

// Gauss nodes/weights on [-1,1] for a weight function given by its
// three-term recurrence (Golub-Welsch): eigenvalues of the symmetric
// tridiagonal Jacobi matrix are the nodes, mu0 * (first eigenvector
// component)^2 the weights.
void golub_welsch(const std::vector<double>& alpha,
                  const std::vector<double>& beta, double mu0,
                  std::vector<double>& nodes, std::vector<double>& weights) {
  const int n = static_cast<int>(alpha.size());
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    T(i, i) = alpha[i];
    if (i + 1 < n) T(i, i + 1) = T(i + 1, i) = beta[i + 1];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
  nodes.resize(n);
  weights.resize(n);
  for (int i = 0; i < n; ++i) {
    nodes[i] = es.eigenvalues()(i);
    const double v0 = es.eigenvectors()(0, i);
    weights[i] = mu0 * v0 * v0;
  }
}

// Gauss-Legendre on [-1,1], weight 1.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  std::vector<double> alpha(n, 0.0), beta(n, 0.0);
  for (int k = 1; k < n; ++k)
    beta[k] = k / std::sqrt(4.0 * k * k - 1.0);
  golub_welsch(alpha, beta, 2.0, x, w);
}

// Gauss-Jacobi on [-1,1] with weight (1-x)  (Jacobi alpha=1, beta=0).
void gauss_jacobi10(int n, std::vector<double>& x, std::vector<double>& w) {
  std::vector<double> alpha(n, 0.0), beta(n, 0.0);
  for (int k = 0; k < n; ++k)
    alpha[k] = -1.0 / ((2.0 * k + 1.0) * (2.0 * k + 3.0));
  for (int k = 1; k < n; ++k)
    beta[k] = std::sqrt(k * (k + 1.0)) / (2.0 * k + 1.0);
  golub_welsch(alpha, beta, 2.0, x, w);
}

}  // namespace

QuadratureRule triangle_rule(int degree) {
  if (degree < 0) throw std::invalid_argument("triangle_rule: degree < 0");
  const int n = degree / 2 + 1;  // 2n-1 >= degree

  std::vector<double> xs, ws, xy, wy;
  gauss_legendre(n, xs, ws);
  gauss_jacobi10(n, xy, wy);

  // \int_T f = \int_0^1 \int_0^1 f((1-y)s, y) (1-y) ds dy with the (1-y)
  // factor absorbed into the Jacobi weight.
  std::vector<Vec2> pts;
  std::vector<double> wts;
  for (int i = 0; i < n; ++i) {
    const double s = 0.5 * (xs[i] + 1.0);
    const double w_s = 0.5 * ws[i];
    for (int j = 0; j < n; ++j) {
      const double y = 0.5 * (xy[j] + 1.0);
      const double w_y = 0.25 * wy[j];
      pts.emplace_back((1.0 - y) * s, y);
      wts.push_back(w_s * w_y);
    }
  }

  // Symmetrise over the six barycentric permutations, then merge
  // coincident points so that e.g. the centroid stays a single node.
  std::map<std::tuple<long long, long long>, std::pair<Vec2, double>> merged;
  const double scale = 1e12;
  for (std::size_t q = 0; q < pts.size(); ++q) {
    const double l1 = pts[q].x(), l2 = pts[q].y();
    const double l0 = 1.0 - l1 - l2;
    const double bary[3] = {l0, l1, l2};
    static const int perm[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                   {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (const auto& pr : perm) {
      const Vec2 p(bary[pr[1]], bary[pr[2]]);
      const auto key = std::make_tuple(std::llround(p.x() * scale),
                                       std::llround(p.y() * scale));
      auto [it, inserted] = merged.try_emplace(key, p, 0.0);
      it->second.second += wts[q] / 6.0;
    }
  }

  QuadratureRule rule;
  rule.degree = degree;
  for (const auto& [key, pw] : merged) {
    rule.points.push_back(pw.first);
    rule.weights.push_back(pw.second);
  }
  return rule;
}

EdgeRule edge_rule(int npoints) {
  if (npoints < 1) throw std::invalid_argument("edge_rule: npoints < 1");
  std::vector<double> x, w;
  gauss_legendre(npoints, x, w);
  EdgeRule rule;
  rule.points.resize(npoints);
  rule.weights.resize(npoints);
  for (int i = 0; i < npoints; ++i) {
    rule.points[i] = 0.5 * (x[i] + 1.0);
    rule.weights[i] = 0.5 * w[i];
  }
  return rule;
}

double legendre01(int m, double t) {
  const double x = 2.0 * t - 1.0;
  double pm1 = 1.0, p = x;
  if (m == 0) return 1.0;
  for (int k = 1; k < m; ++k) {
    const double pk1 = ((2.0 * k + 1.0) * x * p - k * pm1) / (k + 1.0);
    pm1 = p;
    p = pk1;
  }
  return p;
}

}  // namespace metawave
