#include "metawave/probe.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace metawave {

std::vector<double> sample_on_line(const FESpace& space,
                                   const Eigen::VectorXd& coeffs, double y,
                                   double x0, double x1, int n) {
  if (n < 1) throw std::invalid_argument("sample_on_line: n < 1");
  const FEFunction f{&space, coeffs};
  const double dx = (x1 - x0) / n;
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    const Vec2 x(x0 + (i + 0.5) * dx, y);
    const int cell = space.mesh().find_cell(x);
    if (cell < 0)
      throw std::invalid_argument("sample_on_line: point outside mesh");
    out[i] = eval_scalar(f, cell, x);
  }
  return out;
}

double dominant_phase_shift(const std::vector<double>& s1,
                            const std::vector<double>& s2) {
  const int M = static_cast<int>(s1.size());
  if (M < 8 || s2.size() != s1.size())
    throw std::invalid_argument("dominant_phase_shift: bad trace sizes");

  std::vector<double> w(M);
  for (int j = 0; j < M; ++j)
    w[j] = 0.5 * (1.0 - std::cos(2.0 * M_PI * j / (M - 1)));

  auto dft_bin = [&](const std::vector<double>& s, int k) {
    std::complex<double> acc(0.0, 0.0);
    for (int j = 0; j < M; ++j) {
      const double phase = -2.0 * M_PI * j * k / M;
      acc += s[j] * w[j] * std::complex<double>(std::cos(phase), std::sin(phase));
    }
    return acc;
  };

  int best = 1;
  double best_mag = -1.0;
  std::complex<double> X1_best, X2_best;
  for (int k = 1; k < M / 2; ++k) {
    const std::complex<double> X1 = dft_bin(s1, k);
    const std::complex<double> X2 = dft_bin(s2, k);
    const double mag = std::abs(X1) * std::abs(X2);
    if (mag > best_mag) {
      best_mag = mag;
      best = k;
      X1_best = X1;
      X2_best = X2;
    }
  }
  (void)best;
  return std::arg(X2_best * std::conj(X1_best));
}

}  // namespace metawave
