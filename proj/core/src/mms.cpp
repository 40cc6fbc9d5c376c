#include "metawave/mms.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <memory>

#include "metawave/assembly.hpp"
#include "metawave/postprocess.hpp"
#include "metawave/quadrature.hpp"
#include "metawave/stepper.hpp"

namespace metawave {

namespace {
// Spatial profiles of the two seed fields.
double prof_a(const Vec2& x) { return x.x() * x.y() * (x.x() + x.y()); }
double prof_b(const Vec2& x) { return x.x() + x.y() + std::cos(x.x()); }
}  // namespace

ExactSolution::ExactSolution(const MmsParams& prm,
                             std::function<double(const Vec2&)> Omega_rho2,
                             std::function<double(const Vec2&)> Omega_kappa2)
    : prm_(prm), Or2_(std::move(Omega_rho2)), Ok2_(std::move(Omega_kappa2)) {}

Vec2 ExactSolution::w(double t, const Vec2& x) const {
  return Vec2((1.0 + std::sin(t)) * prof_a(x), std::cos(2.0 * t) * prof_b(x));
}

Vec2 ExactSolution::u(double t, const Vec2& x) const {
  return Vec2(std::cos(t) * prof_a(x), -2.0 * std::sin(2.0 * t) * prof_b(x));
}

Vec2 ExactSolution::v(double t, const Vec2& x) const {
  const double wr2 = prm_.omega_rho * prm_.omega_rho;
  return Vec2((wr2 * (1.0 + std::sin(t)) - std::sin(t)) * prof_a(x),
              (wr2 - 4.0) * std::cos(2.0 * t) * prof_b(x));
}

double ExactSolution::r(double t, const Vec2& x) const {
  return std::cos(3.0 * t) * x.x() * x.y();
}

double ExactSolution::q(double t, const Vec2& x) const {
  return -3.0 * std::sin(3.0 * t) * x.x() * x.y();
}

double ExactSolution::p(double t, const Vec2& x) const {
  const double wk2 = prm_.omega_kappa * prm_.omega_kappa;
  return ((wk2 - 9.0) * std::cos(3.0 * t) - 3.0 * prm_.gamma * std::sin(3.0 * t)) *
         x.x() * x.y();
}

Vec2 ExactSolution::f(double t, const Vec2& x) const {
  const double wr2 = prm_.omega_rho * prm_.omega_rho;
  const double wk2 = prm_.omega_kappa * prm_.omega_kappa;
  const double Or2 = Or2_(x);
  // rho_a dv/dt + rho_a Omega_rho^2 u + grad p
  const double pf =
      (wk2 - 9.0) * std::cos(3.0 * t) - 3.0 * prm_.gamma * std::sin(3.0 * t);
  const double fx = prm_.rho_a * (wr2 - 1.0 + Or2) * std::cos(t) * prof_a(x) +
                    pf * x.y();
  const double fy =
      -2.0 * prm_.rho_a * (wr2 - 4.0 + Or2) * std::sin(2.0 * t) * prof_b(x) +
      pf * x.x();
  return Vec2(fx, fy);
}

double ExactSolution::g(double t, const Vec2& x) const {
  const double wr2 = prm_.omega_rho * prm_.omega_rho;
  const double wk2 = prm_.omega_kappa * prm_.omega_kappa;
  const double Ok2 = Ok2_(x);
  const double xy = x.x() * x.y();
  // kappa_a^{-1} dp/dt + div v + kappa_a^{-1} Omega_kappa^2 q
  const double dp = (-3.0 * (wk2 - 9.0) * std::sin(3.0 * t) -
                     9.0 * prm_.gamma * std::cos(3.0 * t)) *
                    xy;
  const double div_v =
      (wr2 * (1.0 + std::sin(t)) - std::sin(t)) *
          (2.0 * x.x() * x.y() + x.y() * x.y()) +
      (wr2 - 4.0) * std::cos(2.0 * t);
  const double q_val = -3.0 * std::sin(3.0 * t) * xy;
  return (dp + Ok2 * q_val) / prm_.kappa_a + div_v;
}

namespace {
constexpr int kErrorDegree = 12;
}  // namespace

double l2_error_scalar(const FESpace& space, const Eigen::VectorXd& coeffs,
                       const std::function<double(const Vec2&)>& exact,
                       const Eigen::VectorXd* cell_weight) {
  const Mesh& mesh = space.mesh();
  const QuadratureRule rule = triangle_rule(kErrorDegree);
  const int nl = space.n_local();
  Eigen::MatrixXd vals(nl, rule.size());
  for (int g = 0; g < rule.size(); ++g)
    vals.col(g) = space.ref().eval_scalar(rule.points[g]);

  double err2 = 0.0;
  for (int c = 0; c < mesh.n_cells(); ++c) {
    const CellGeometry g = mesh.cell_geometry(c);
    Eigen::VectorXd loc(nl);
    for (int l = 0; l < nl; ++l) {
      const auto d = space.cell_dof(c, l);
      loc(l) = d.sign * coeffs(d.index);
    }
    const double wK = cell_weight ? (*cell_weight)(c) : 1.0;
    double cell = 0.0;
    for (int gq = 0; gq < rule.size(); ++gq) {
      const double diff =
          loc.dot(vals.col(gq)) - exact(g.map(rule.points[gq]));
      cell += rule.weights[gq] * diff * diff;
    }
    err2 += wK * g.detJ * cell;
  }
  return std::sqrt(err2);
}

double l2_error_vector(const FESpace& space, const Eigen::VectorXd& coeffs,
                       const std::function<Vec2(const Vec2&)>& exact,
                       const Eigen::VectorXd* cell_weight) {
  const Mesh& mesh = space.mesh();
  const QuadratureRule rule = triangle_rule(kErrorDegree);
  const int nl = space.n_local();
  std::vector<Eigen::MatrixXd> vals(rule.size());
  for (int g = 0; g < rule.size(); ++g)
    vals[g] = space.ref().eval_vector(rule.points[g]);

  const bool piola = space.hdiv();
  double err2 = 0.0;
  for (int c = 0; c < mesh.n_cells(); ++c) {
    const CellGeometry g = mesh.cell_geometry(c);
    Eigen::VectorXd loc(nl);
    for (int l = 0; l < nl; ++l) {
      const auto d = space.cell_dof(c, l);
      loc(l) = d.sign * coeffs(d.index);
    }
    const double wK = cell_weight ? (*cell_weight)(c) : 1.0;
    double cell = 0.0;
    for (int gq = 0; gq < rule.size(); ++gq) {
      const Eigen::RowVector2d ref_val = loc.transpose() * vals[gq];
      const Vec2 fe_val =
          piola ? g.piola(ref_val.transpose()) : Vec2(ref_val.transpose());
      const Vec2 diff = fe_val - exact(g.map(rule.points[gq]));
      cell += rule.weights[gq] * diff.squaredNorm();
    }
    err2 += wK * g.detJ * cell;
  }
  return std::sqrt(err2);
}

DtPolicy default_dt_policy(Pairing p) {
  return pairing_k(p) == 0 ? DtPolicy::MatchH : DtPolicy::MatchH2;
}

double rate(double err_coarse, double err_fine) {
  return std::log2(err_coarse / err_fine);
}

ConvergenceReport run_convergence(const StudyOptions& opts_in) {
  StudyOptions opts = opts_in;
  if (!opts.policy_explicit) opts.dt_policy = default_dt_policy(opts.pairing);

  ConvergenceReport report;
  report.opts = opts;

  for (const int n : opts.levels) {
    const auto wall_start = std::chrono::steady_clock::now();

    auto mesh = std::make_shared<Mesh>(build_structured(opts.domain, n));
    auto region = [&](const Vec2& x) {
      return opts.dispersive.contains(x) ? 1 : 0;
    };
    const std::vector<int> cell_region = classify_cells(*mesh, region);

    MaterialField mat = uniform_material(
        mesh->n_cells(), opts.params.rho_a, opts.params.kappa_a,
        opts.params.omega_rho, opts.params.omega_kappa, opts.params.gamma);
    apply_region_contrast(mat, cell_region, 1, opts.Omega_rho,
                          opts.Omega_kappa);

    SpaceSet spaces = SpaceSet::make(mesh, opts.pairing);
    const BlockLayout layout = BlockLayout::from(spaces);

    const double h = opts.domain.width() / n;
    const double dt_target = opts.dt_policy == DtPolicy::MatchH ? h : h * h;
    const int steps = std::max(1, static_cast<int>(std::lround(opts.T / dt_target)));
    const TimeGrid grid{0.0, opts.T, steps};
    const double dt = grid.dt();

    const double Or2 = opts.Omega_rho * opts.Omega_rho;
    const double Ok2 = opts.Omega_kappa * opts.Omega_kappa;
    const ExactSolution exact(
        opts.params,
        [&, Or2](const Vec2& x) { return opts.dispersive.contains(x) ? Or2 : 0.0; },
        [&, Ok2](const Vec2& x) { return opts.dispersive.contains(x) ? Ok2 : 0.0; });

    // Initial data: canonical interpolation for the flux, cell-wise L2
    // projections for everything else.
    StateVector U0(layout);
    U0.v() = spaces.V->interpolate(
        [&](const Vec2& x) { return exact.v(0.0, x); });
    U0.u() = spaces.W->project_vector(
        [&](const Vec2& x) { return exact.u(0.0, x); });
    U0.w() = spaces.W->project_vector(
        [&](const Vec2& x) { return exact.w(0.0, x); });
    U0.p() = spaces.Q->project([&](const Vec2& x) { return exact.p(0.0, x); });
    U0.q() = spaces.Q->project([&](const Vec2& x) { return exact.q(0.0, x); });
    U0.r() = spaces.Q->project([&](const Vec2& x) { return exact.r(0.0, x); });

    TransientSource src;
    src.f = [&](double t, const Vec2& x) { return exact.f(t, x); };
    src.g = [&](double t, const Vec2& x) { return exact.g(t, x); };
    src.pressure_parts.push_back(
        {mesh->boundary_edges(),
         [&](double t, const Vec2& x) { return exact.p(t, x); }});

    const SystemBlocks blocks = assemble_system(spaces, mat);
    CNSystem sys(blocks, layout, dt);
    sys.factorize();

    StateVector U_prev = U0;  // U^{N-1} on exit
    StateVector U = run_transient(sys, spaces, U0, src, grid,
                                  [&](int step, double, const StateVector& Us) {
                                    if (step == grid.n_steps - 1) U_prev = Us;
                                  });

    LevelErrors lev;
    lev.n = n;
    lev.h = h;
    lev.dt = dt;
    lev.steps = steps;
    lev.n_dofs = layout.total;

    const double T = opts.T;
    lev.v = l2_error_vector(*spaces.V, U.v(),
                            [&](const Vec2& x) { return exact.v(T, x); });
    lev.u = l2_error_vector(*spaces.W, U.u(),
                            [&](const Vec2& x) { return exact.u(T, x); });
    lev.w = l2_error_vector(*spaces.W, U.w(),
                            [&](const Vec2& x) { return exact.w(T, x); });
    lev.p = l2_error_scalar(*spaces.Q, U.p(),
                            [&](const Vec2& x) { return exact.p(T, x); });
    lev.q = l2_error_scalar(*spaces.Q, U.q(),
                            [&](const Vec2& x) { return exact.q(T, x); });
    lev.r = l2_error_scalar(*spaces.Q, U.r(),
                            [&](const Vec2& x) { return exact.r(T, x); });

    const PressurePost post = postprocess_pressure(
        spaces, mat, U_prev, U, T - dt, dt,
        [&](double t, const Vec2& x) { return exact.f(t, x); });
    lev.p_star = l2_error_scalar(
        *spaces.Qstar, post.coeffs,
        [&](const Vec2& x) { return exact.p(post.time, x); });

    lev.seconds = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - wall_start)
                      .count();
    report.levels.push_back(lev);
  }
  return report;
}

namespace {

const char* const kFields[] = {"v", "p", "u", "w", "q", "r", "p*"};

double field_error(const LevelErrors& l, int f) {
  switch (f) {
    case 0: return l.v;
    case 1: return l.p;
    case 2: return l.u;
    case 3: return l.w;
    case 4: return l.q;
    case 5: return l.r;
    default: return l.p_star;
  }
}

}  // namespace

std::string format_report(const ConvergenceReport& report) {
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "pairing %s, T = %g, dt ~ %s\n",
                pairing_name(report.opts.pairing).c_str(), report.opts.T,
                report.opts.dt_policy == DtPolicy::MatchH ? "h" : "h^2");
  out += buf;
  std::snprintf(buf, sizeof buf, "%6s %10s", "n", "dofs");
  out += buf;
  for (const char* name : kFields) {
    std::snprintf(buf, sizeof buf, " %10s %6s", name, "rate");
    out += buf;
  }
  out += '\n';
  for (std::size_t i = 0; i < report.levels.size(); ++i) {
    const LevelErrors& lev = report.levels[i];
    std::snprintf(buf, sizeof buf, "%6d %10lld", lev.n, lev.n_dofs);
    out += buf;
    for (int f = 0; f < 7; ++f) {
      if (i == 0)
        std::snprintf(buf, sizeof buf, " %10.3e %6s", field_error(lev, f), "-");
      else
        std::snprintf(buf, sizeof buf, " %10.3e %6.2f", field_error(lev, f),
                      rate(field_error(report.levels[i - 1], f),
                           field_error(lev, f)));
      out += buf;
    }
    out += '\n';
  }
  return out;
}

std::string report_csv(const ConvergenceReport& report) {
  std::string out = "n,h,dt,steps,dofs";
  for (const char* name : kFields) {
    out += ",err_";
    out += (name[1] == '*') ? "pstar" : name;
    out += ",rate_";
    out += (name[1] == '*') ? "pstar" : name;
  }
  out += "\n";
  char buf[512];
  for (std::size_t i = 0; i < report.levels.size(); ++i) {
    const LevelErrors& lev = report.levels[i];
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%d,%lld", lev.n, lev.h,
                  lev.dt, lev.steps, lev.n_dofs);
    out += buf;
    for (int f = 0; f < 7; ++f) {
      if (i == 0)
        std::snprintf(buf, sizeof buf, ",%.17g,", field_error(lev, f));
      else
        std::snprintf(buf, sizeof buf, ",%.17g,%.6f", field_error(lev, f),
                      rate(field_error(report.levels[i - 1], f),
                           field_error(lev, f)));
      out += buf;
    }
    out += "\n";
  }
  return out;
}

}  // namespace metawave
