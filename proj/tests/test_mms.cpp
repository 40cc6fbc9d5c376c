#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <memory>

#include "metawave/mms.hpp"

using namespace metawave;

namespace {

// Central finite differences for the residual checks.
template <typename F>
double ddt(const F& f, double t, const Vec2& x) {
  const double h = 1e-6;
  return (f(t + h, x) - f(t - h, x)) / (2.0 * h);
}

}  // namespace

TEST_CASE("reference solution spot values are frozen") {
  MmsParams prm;  // all ones, gamma = 0
  const ExactSolution sol(
      prm, [](const Vec2&) { return 1.0; }, [](const Vec2&) { return 1.0; });
  const double t = 0.3;
  const Vec2 x(0.55, 0.7);

  CHECK(sol.v(t, x).x() == doctest::Approx(0.48125).epsilon(1e-13));
  CHECK(sol.v(t, x).y() ==
        doctest::Approx(-5.2058651078299789317).epsilon(1e-13));
  CHECK(sol.p(t, x) == doctest::Approx(-1.9145587022736465260).epsilon(1e-13));
  CHECK(sol.u(t, x).x() ==
        doctest::Approx(0.45975568539169789695).epsilon(1e-13));
  CHECK(sol.u(t, x).y() ==
        doctest::Approx(-2.3743492930187878027).epsilon(1e-13));
  CHECK(sol.w(t, x).x() ==
        doctest::Approx(0.62346909945576967052).epsilon(1e-13));
  CHECK(sol.w(t, x).y() ==
        doctest::Approx(1.7352883692766596439).epsilon(1e-13));
  CHECK(sol.q(t, x) == doctest::Approx(-0.90474258061974331367).epsilon(1e-13));
  CHECK(sol.r(t, x) == doctest::Approx(0.23931983778420581575).epsilon(1e-13));
  CHECK(sol.f(t, x).x() ==
        doctest::Approx(-3.0212601369240230594).epsilon(1e-13));
  CHECK(sol.f(t, x).y() ==
        doctest::Approx(2.0136147256466519970).epsilon(1e-13));
  CHECK(sol.g(t, x) == doctest::Approx(5.1171912196091683040).epsilon(1e-13));
}

TEST_CASE("reference solution satisfies all six equations") {
  MmsParams prm;
  prm.rho_a = 1.2;
  prm.kappa_a = 0.8;
  prm.omega_rho = 1.5;
  prm.omega_kappa = 0.7;
  prm.gamma = 0.4;
  const Rect strip{0.375, 0.0, 0.625, 1.0};
  const double Or2 = 1.5 * 1.5, Ok2 = 2.0 * 2.0;
  auto Or2f = [&](const Vec2& x) { return strip.contains(x) ? Or2 : 0.0; };
  auto Ok2f = [&](const Vec2& x) { return strip.contains(x) ? Ok2 : 0.0; };
  const ExactSolution sol(prm, Or2f, Ok2f);

  const double hs = 1e-6;
  const std::vector<std::pair<double, Vec2>> samples = {
      {0.17, Vec2(0.5, 0.4)},   // inside the dispersive strip
      {0.62, Vec2(0.61, 0.93)}, // inside
      {0.17, Vec2(0.2, 0.4)},   // outside
      {0.93, Vec2(0.8, 0.05)},  // outside
  };
  for (const auto& [t, x] : samples) {
    const double wr2 = prm.omega_rho * prm.omega_rho;
    const double wk2 = prm.omega_kappa * prm.omega_kappa;

    // Momentum: rho_a dv/dt + grad p + rho_a Omega_rho^2 u = f.
    const Vec2 dv = Vec2(ddt([&](double s, const Vec2& y) { return sol.v(s, y).x(); }, t, x),
                         ddt([&](double s, const Vec2& y) { return sol.v(s, y).y(); }, t, x));
    const Vec2 grad_p((sol.p(t, Vec2(x.x() + hs, x.y())) -
                       sol.p(t, Vec2(x.x() - hs, x.y()))) /
                          (2 * hs),
                      (sol.p(t, Vec2(x.x(), x.y() + hs)) -
                       sol.p(t, Vec2(x.x(), x.y() - hs))) /
                          (2 * hs));
    const Vec2 res1 = prm.rho_a * dv + grad_p +
                      prm.rho_a * Or2f(x) * sol.u(t, x) - sol.f(t, x);
    CHECK(res1.x() == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(res1.y() == doctest::Approx(0.0).epsilon(1e-6));

    // Mass: kappa^{-1} dp/dt + div v + kappa^{-1} Omega_kappa^2 q = g.
    const double dp = ddt([&](double s, const Vec2& y) { return sol.p(s, y); }, t, x);
    const double div_v = (sol.v(t, Vec2(x.x() + hs, x.y())).x() -
                          sol.v(t, Vec2(x.x() - hs, x.y())).x()) /
                             (2 * hs) +
                         (sol.v(t, Vec2(x.x(), x.y() + hs)).y() -
                          sol.v(t, Vec2(x.x(), x.y() - hs)).y()) /
                             (2 * hs);
    const double res2 = dp / prm.kappa_a + div_v +
                        Ok2f(x) * sol.q(t, x) / prm.kappa_a - sol.g(t, x);
    CHECK(res2 == doctest::Approx(0.0).epsilon(1e-6));

    // Auxiliary chains.
    const Vec2 du = Vec2(ddt([&](double s, const Vec2& y) { return sol.u(s, y).x(); }, t, x),
                         ddt([&](double s, const Vec2& y) { return sol.u(s, y).y(); }, t, x));
    const Vec2 res3 = du - sol.v(t, x) + wr2 * sol.w(t, x);
    CHECK(res3.x() == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(res3.y() == doctest::Approx(0.0).epsilon(1e-6));

    const Vec2 dw = Vec2(ddt([&](double s, const Vec2& y) { return sol.w(s, y).x(); }, t, x),
                         ddt([&](double s, const Vec2& y) { return sol.w(s, y).y(); }, t, x));
    const Vec2 res4 = dw - sol.u(t, x);
    CHECK(res4.x() == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(res4.y() == doctest::Approx(0.0).epsilon(1e-6));

    const double dq = ddt([&](double s, const Vec2& y) { return sol.q(s, y); }, t, x);
    const double res5 =
        dq - sol.p(t, x) + prm.gamma * sol.q(t, x) + wk2 * sol.r(t, x);
    CHECK(res5 == doctest::Approx(0.0).epsilon(1e-6));

    const double dr = ddt([&](double s, const Vec2& y) { return sol.r(s, y); }, t, x);
    CHECK(dr - sol.q(t, x) == doctest::Approx(0.0).epsilon(1e-6));
  }
}

TEST_CASE("error norms vanish for fields inside the space") {
  auto mesh = std::make_shared<Mesh>(build_structured(Rect{0, 0, 1, 1}, 3));
  const FESpace Q(*mesh, ElementFamily::dg_scalar(1));
  auto lin = [](const Vec2& x) { return 1.0 - 2.0 * x.x() + 0.5 * x.y(); };
  CHECK(l2_error_scalar(Q, Q.project(lin), lin) <= 1e-13);

  const FESpace V(*mesh, ElementFamily::bdm(1));
  auto vlin = [](const Vec2& x) -> Vec2 {
    return Vec2(x.x() + x.y(), 2.0 - x.x());
  };
  CHECK(l2_error_vector(V, V.interpolate(vlin), vlin) <= 1e-12);

  // Weighted norm of a known constant-field error.
  const FESpace Q0(*mesh, ElementFamily::dg_scalar(0));
  Eigen::VectorXd weight = Eigen::VectorXd::Constant(mesh->n_cells(), 4.0);
  const Eigen::VectorXd zero_coeffs = Eigen::VectorXd::Zero(Q0.n_dofs());
  const double err = l2_error_scalar(
      Q0, zero_coeffs, [](const Vec2&) { return 3.0; }, &weight);
  CHECK(err == doctest::Approx(std::sqrt(4.0 * 9.0)).epsilon(1e-13));
}

TEST_CASE("rate helper and dt policies") {
  CHECK(rate(4.0, 1.0) == doctest::Approx(2.0));
  CHECK(rate(1.0, 0.5) == doctest::Approx(1.0));
  CHECK(default_dt_policy(Pairing::BDM1) == DtPolicy::MatchH);
  CHECK(default_dt_policy(Pairing::RTN0) == DtPolicy::MatchH);
  CHECK(default_dt_policy(Pairing::BDM2) == DtPolicy::MatchH2);
  CHECK(default_dt_policy(Pairing::RTN1) == DtPolicy::MatchH2);
}

TEST_CASE("convergence harness wiring on a tiny ladder") {
  StudyOptions opts;
  opts.pairing = Pairing::RTN0;
  opts.levels = {4, 8};
  opts.dispersive = Rect{0.25, 0.0, 0.75, 1.0};  // aligned with the n=4 mesh
  const ConvergenceReport report = run_convergence(opts);
  REQUIRE(report.levels.size() == 2);
  CHECK(report.levels[0].n == 4);
  CHECK(report.levels[1].n == 8);
  CHECK(report.levels[0].dt == doctest::Approx(0.25));  // dt = h, one step
  CHECK(report.levels[1].steps == 2);
  // Errors decrease under refinement.
  CHECK(report.levels[1].v < report.levels[0].v);
  CHECK(report.levels[1].p < report.levels[0].p);

  const std::string table = format_report(report);
  CHECK(table.find("rtn0") != std::string::npos);
  CHECK(table.find("rate") != std::string::npos);
  const std::string csv = report_csv(report);
  CHECK(csv.find("err_pstar") != std::string::npos);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}
