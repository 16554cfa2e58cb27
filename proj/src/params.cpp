#include "orthoflow/params.hpp"

#include <cmath>
#include <string>

#include "orthoflow/errors.hpp"

namespace orthoflow {
namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

bool conjugates(Complex u, Complex v) {
  return std::abs(v - std::conj(u)) <= 1e-12 * (1.0 + std::abs(u));
}

}  // namespace

bool is_real(Complex z) noexcept { return z.imag() == 0.0; }

void validate(const ContinuousHahnParams& p) {
  if (!finite(p.a) || !finite(p.b)) {
    throw InvalidParameters("continuous Hahn parameters must be finite");
  }
  if (!(p.a.real() > 0.0) || !(p.b.real() > 0.0)) {
    throw InvalidParameters("continuous Hahn parameters need Re(a) > 0 and Re(b) > 0");
  }
  const bool both_real = is_real(p.a) && is_real(p.b);
  if (!both_real && !conjugates(p.a, p.b)) {
    throw InvalidParameters(
        "continuous Hahn parameters must be both real or a complex-conjugate pair (b = conj(a))");
  }
}

void validate(const WilsonParams& p, bool allow_boundary) {
  const auto eps = p.as_array();
  static constexpr const char* names[] = {"a", "b", "c", "d"};
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!finite(eps[i])) {
      throw InvalidParameters(std::string("Wilson parameter ") + names[i] + " must be finite");
    }
    const double re = eps[i].real();
    const bool boundary_ok = allow_boundary && is_real(eps[i]) && re == 0.0;
    if (!(re > 0.0) && !boundary_ok) {
      throw InvalidParameters(std::string("Wilson parameter ") + names[i] +
                              " needs a positive real part");
    }
  }
  std::array<bool, 4> matched{};
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (is_real(eps[i]) || matched[i]) continue;
    bool found = false;
    for (std::size_t j = 0; j < eps.size(); ++j) {
      if (j == i || matched[j] || is_real(eps[j])) continue;
      if (conjugates(eps[i], eps[j])) {
        matched[i] = matched[j] = true;
        found = true;
        break;
      }
    }
    if (!found) {
      throw InvalidParameters(std::string("Wilson parameter ") + names[i] +
                              " is non-real without a conjugate partner");
    }
  }
}

void validate(const JacobiParams& p) {
  if (!std::isfinite(p.alpha) || !std::isfinite(p.beta)) {
    throw InvalidParameters("Jacobi parameters must be finite");
  }
  if (!(p.alpha > -1.0) || !(p.beta > -1.0)) {
    throw InvalidParameters("Jacobi parameters need alpha > -1 and beta > -1");
  }
}

}  // namespace orthoflow
