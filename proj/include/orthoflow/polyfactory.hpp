#pragma once

#include <cstddef>
#include <vector>

#include "orthoflow/params.hpp"

namespace orthoflow {

/// Largest degree accepted by the polynomial constructors.
inline constexpr unsigned kMaxDegree = 64;

enum class VariableKind { X, XSquared };

/// Monic polynomial with real coefficients, coeffs[k] multiplying t^k where
/// t is x or x^2 depending on `variable`.
struct MonicPoly {
  std::vector<double> coeffs{1.0};
  VariableKind variable = VariableKind::X;

  std::size_t degree() const { return coeffs.size() - 1; }
};

/// Result of expanding a terminating hypergeometric series, with the
/// diagnostics gathered before the imaginary parts were dropped.
struct SeriesExpansion {
  MonicPoly poly;
  std::vector<double> imag_residue;  // per coefficient, after monic normalization
  unsigned working_digits = 0;       // decimal digits used for accumulation
};

Complex pochhammer(Complex z, unsigned k) noexcept;

SeriesExpansion expand_continuous_hahn(unsigned n, const ContinuousHahnParams& p);
SeriesExpansion expand_wilson(unsigned n, const WilsonParams& p, bool allow_boundary = false);
SeriesExpansion expand_jacobi(unsigned n, const JacobiParams& p);

/// Monic p_n(x; a, b) in the variable x.
MonicPoly monic_continuous_hahn(unsigned n, const ContinuousHahnParams& p);

/// Monic p_n(x^2; a, b, c, d); `variable` is XSquared.
MonicPoly monic_wilson(unsigned n, const WilsonParams& p, bool allow_boundary = false);

/// Monic rescaling of the Jacobi polynomial P_n^{(alpha, beta)}(x).
MonicPoly monic_jacobi(unsigned n, const JacobiParams& p);

/// Horner evaluation. For XSquared polynomials x is squared first.
Complex eval_poly(const MonicPoly& poly, Complex x) noexcept;

/// d/dx of eval_poly(poly, x), including the chain-rule factor 2x for
/// XSquared polynomials.
Complex eval_poly_derivative(const MonicPoly& poly, Complex x) noexcept;

}  // namespace orthoflow
