#include "orthoflow/morse.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "orthoflow/errors.hpp"

namespace orthoflow {
namespace {

using std::numbers::pi;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Complex-parameter terms are summed as real parts of principal-branch
// functions; imaginary parts cancel across conjugate pairs. With Re(eps) > 0
// the straight path from 0 to x/eps never meets a branch cut.
Complex complex_atan(double x, Complex eps) {
  const Complex z = Complex(x, 0.0) / eps;
  if (z.real() == 0.0 && std::abs(z.imag()) >= 1.0) {
    throw BranchCrossing("arctan argument on the branch cut; parameter has zero real part");
  }
  return std::atan(z);
}

double atan_term(double x, Complex eps) {
  if (is_real(eps)) return std::atan(x / eps.real());
  return complex_atan(x, eps).real();
}

// Re ∫_0^x arctan(θ/eps) dθ = Re eps F(x/eps), F = antideriv_arctan.
double integral_term(double x, Complex eps) {
  if (is_real(eps)) return eps.real() * antideriv_arctan(x / eps.real());
  const Complex u = Complex(x, 0.0) / eps;
  const Complex f = u * complex_atan(x, eps) - 0.5 * std::log(1.0 + u * u);
  return (eps * f).real();
}

// Re d/dx arctan(x/eps) = Re eps / (eps^2 + x^2).
double curvature_term(double x, Complex eps) {
  if (is_real(eps)) return eps.real() / (eps.real() * eps.real() + x * x);
  return (eps / (eps * eps + x * x)).real();
}

double lorentz(double d) { return 1.0 / (1.0 + d * d); }

// Potentials of the form
//   Σ_{j<k} F(x_j - x_k) [+ F(x_j + x_k)] + Σ_j Σ_eps ∫_0^{x_j} arctan(θ/eps) dθ + Σ_j c_j x_j
// cover the continuous Hahn, Wilson and both reduced systems.
struct ArctanSystem {
  std::vector<Complex> eps;
  bool reflected_pairs = false;  // include F(x_j + x_k)
  // linear coefficient c_j for 1-based j
  double linear_scale = 0.0;
  double linear_offset = 0.0;
  double linear(std::size_t j) const {
    return linear_scale * (static_cast<double>(j) - linear_offset);
  }
};

ArctanSystem system_for(const ContinuousHahnPotential& k, std::size_t n) {
  // c_j = π(n + 1 - 2j)/2 = -π (j - (n+1)/2)
  return {{k.params.a, k.params.b}, false, -pi, 0.5 * static_cast<double>(n + 1)};
}

ArctanSystem system_for(const WilsonPotential& k, std::size_t) {
  const auto e = k.params.as_array();
  return {{e.begin(), e.end()}, true, -pi, 0.0};
}

// The pair (y_j, -y_j) contributes arctan(2 y_j), i.e. eps = 1/2; the
// central zero of the odd case contributes arctan(y_j), i.e. eps = 1.
ArctanSystem system_for(const ReducedEvenPotential& k, std::size_t) {
  return {{k.params.a, k.params.b, Complex(0.5)}, true, -pi, 0.5};
}

ArctanSystem system_for(const ReducedOddPotential& k, std::size_t) {
  return {{k.params.a, k.params.b, Complex(0.5), Complex(1.0)}, true, -pi, 0.0};
}

double arctan_potential(const ArctanSystem& s, std::span<const double> x) {
  const std::size_t n = x.size();
  double v = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    for (Complex e : s.eps) v += integral_term(x[j], e);
    v += s.linear(j + 1) * x[j];
    for (std::size_t k = j + 1; k < n; ++k) {
      v += antideriv_arctan(x[j] - x[k]);
      if (s.reflected_pairs) v += antideriv_arctan(x[j] + x[k]);
    }
  }
  return v;
}

Configuration arctan_gradient(const ArctanSystem& s, std::span<const double> x) {
  const std::size_t n = x.size();
  Configuration g(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double gj = s.linear(j + 1);
    for (Complex e : s.eps) gj += atan_term(x[j], e);
    g[j] += gj;
    for (std::size_t k = j + 1; k < n; ++k) {
      const double t = std::atan(x[j] - x[k]);
      g[j] += t;
      g[k] -= t;
      if (s.reflected_pairs) {
        const double r = std::atan(x[j] + x[k]);
        g[j] += r;
        g[k] += r;
      }
    }
  }
  return g;
}

Eigen::MatrixXd arctan_hessian(const ArctanSystem& s, std::span<const double> x) {
  const auto n = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Complex e : s.eps) h(j, j) += curvature_term(x[j], e);
    for (Eigen::Index k = j + 1; k < n; ++k) {
      const double minus = lorentz(x[j] - x[k]);
      const double plus = s.reflected_pairs ? lorentz(x[j] + x[k]) : 0.0;
      h(j, j) += minus + plus;
      h(k, k) += minus + plus;
      h(j, k) = h(k, j) = plus - minus;
    }
  }
  return h;
}

double jacobi_potential(const JacobiParams& p, std::span<const double> x) {
  check_jacobi_domain(x);
  const std::size_t n = x.size();
  double v = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    v -= 0.5 * (p.alpha + 1.0) * std::log(1.0 - x[j]) + 0.5 * (p.beta + 1.0) * std::log(1.0 + x[j]);
    for (std::size_t k = j + 1; k < n; ++k) v -= std::log(x[k] - x[j]);
  }
  return v;
}

Configuration jacobi_gradient(const JacobiParams& p, std::span<const double> x) {
  check_jacobi_domain(x);
  const std::size_t n = x.size();
  Configuration g(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    g[j] += -0.5 * (p.alpha + 1.0) / (x[j] - 1.0) - 0.5 * (p.beta + 1.0) / (x[j] + 1.0);
    for (std::size_t k = j + 1; k < n; ++k) {
      const double inv = 1.0 / (x[j] - x[k]);
      g[j] -= inv;
      g[k] += inv;
    }
  }
  return g;
}

Eigen::MatrixXd jacobi_hessian(const JacobiParams& p, std::span<const double> x) {
  check_jacobi_domain(x);
  const auto n = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double xm = x[j] - 1.0;
    const double xp = x[j] + 1.0;
    h(j, j) += 0.5 * (p.alpha + 1.0) / (xm * xm) + 0.5 * (p.beta + 1.0) / (xp * xp);
    for (Eigen::Index k = j + 1; k < n; ++k) {
      const double d = x[j] - x[k];
      const double w = 1.0 / (d * d);
      h(j, j) += w;
      h(k, k) += w;
      h(j, k) = h(k, j) = -w;
    }
  }
  return h;
}

}  // namespace

std::string_view kind_name(const PotentialKind& kind) noexcept {
  return std::visit(Overloaded{
                        [](const ContinuousHahnPotential&) { return std::string_view("ch"); },
                        [](const WilsonPotential&) { return std::string_view("wilson"); },
                        [](const JacobiPotential&) { return std::string_view("jacobi"); },
                        [](const ReducedEvenPotential&) { return std::string_view("ch-even"); },
                        [](const ReducedOddPotential&) { return std::string_view("ch-odd"); },
                    },
                    kind);
}

void validate(const PotentialKind& kind) {
  std::visit([](const auto& k) { validate(k.params); }, kind);
}

double antideriv_arctan(double x) noexcept { return x * std::atan(x) - 0.5 * std::log1p(x * x); }

double pair_arctan(double x, Complex a, Complex b) { return atan_term(x, a) + atan_term(x, b); }

void check_jacobi_domain(std::span<const double> x) {
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (!std::isfinite(x[j]) || !(x[j] > -1.0) || !(x[j] < 1.0)) {
      throw DomainViolation("Jacobi coordinate " + std::to_string(j + 1) +
                            " is not strictly inside (-1, 1)");
    }
    if (j > 0 && !(x[j] > x[j - 1])) {
      throw DomainViolation("Jacobi coordinates " + std::to_string(j) + " and " +
                            std::to_string(j + 1) + " are not strictly increasing");
    }
  }
}

double potential(const PotentialKind& kind, std::span<const double> x) {
  return std::visit(Overloaded{
                        [&](const JacobiPotential& k) { return jacobi_potential(k.params, x); },
                        [&](const auto& k) { return arctan_potential(system_for(k, x.size()), x); },
                    },
                    kind);
}

Configuration gradient(const PotentialKind& kind, std::span<const double> x) {
  return std::visit(Overloaded{
                        [&](const JacobiPotential& k) { return jacobi_gradient(k.params, x); },
                        [&](const auto& k) { return arctan_gradient(system_for(k, x.size()), x); },
                    },
                    kind);
}

Eigen::MatrixXd hessian(const PotentialKind& kind, std::span<const double> x) {
  return std::visit(Overloaded{
                        [&](const JacobiPotential& k) { return jacobi_hessian(k.params, x); },
                        [&](const auto& k) { return arctan_hessian(system_for(k, x.size()), x); },
                    },
                    kind);
}

}  // namespace orthoflow
