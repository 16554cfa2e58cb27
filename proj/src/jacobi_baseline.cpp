#include "orthoflow/jacobi_baseline.hpp"

namespace orthoflow {

Configuration steinerberger_rhs(const JacobiParams& p, std::span<const double> x) {
  check_jacobi_domain(x);
  const std::size_t n = x.size();
  Configuration rhs(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const double xj = x[j];
    double interaction = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (k != j) interaction += 2.0 / (xj - x[k]);
    }
    const double a = xj * xj - 1.0;
    const double b = (p.alpha + 1.0) * (xj + 1.0) + (p.beta + 1.0) * (xj - 1.0);
    rhs[j] = -b - a * interaction;
  }
  return rhs;
}

double jacobi_kappa(const JacobiParams& p, unsigned n) noexcept {
  return 2.0 * static_cast<double>(n) + p.alpha + p.beta;
}

Configuration equispaced_start(unsigned n) {
  Configuration x(n);
  for (unsigned j = 1; j <= n; ++j) x[j - 1] = -1.0 + 2.0 * j / static_cast<double>(n + 1);
  return x;
}

}  // namespace orthoflow
