#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "orthoflow/flow.hpp"
#include "orthoflow/params.hpp"
#include "orthoflow/polyfactory.hpp"

namespace orthoflow {

/// Eigenvalues of the companion matrix of a monic coefficient vector
/// (coeffs[k] multiplies t^k), computed by balancing followed by the
/// Francis double-shift QR iteration in extended precision.
std::vector<Complex> companion_eigenvalues(std::span<const double> coeffs);

/// Real roots of `poly`, ascending. For XSquared polynomials the roots in
/// x^2 must be positive and their positive square roots are returned.
/// Throws ComplexRoots when an imaginary part exceeds 1e-6 (relative to
/// max(1, |root|)) or an x^2-root is negative.
std::vector<double> companion_roots(const MonicPoly& poly);

/// Ascending eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
std::vector<double> symmetric_eigenvalues(const Eigen::MatrixXd& m);

/// max_j |Π_eps (i eps + x_j)/(i eps - x_j) Π_{k≠j} (i + x_j - x_k)/(i - x_j + x_k) - (-1)^{n+1}|.
double bethe_residual_ch(std::span<const double> x, const ContinuousHahnParams& p);

/// Wilson analogue with the doubled pair product and target 1.
double bethe_residual_w(std::span<const double> x, const WilsonParams& p);

/// max_j |A(x_j) p(x_j + i) + A(-x_j) p(x_j - i)| / (|λ_n| |p'(x_j)|).
double diff_eq_residual(const MonicPoly& poly, std::span<const double> roots,
                        const ContinuousHahnParams& p);
double diff_eq_residual(const MonicPoly& poly, std::span<const double> roots,
                        const WilsonParams& p);

struct VerificationReport {
  double max_bethe_residual = 0.0;
  double max_diff_eq_residual = 0.0;
  double root_mismatch = 0.0;
  double hessian_min_eigenvalue = 0.0;
  double kappa_bound = 0.0;
  std::vector<double> flow_roots;
  std::vector<double> companion_roots;
};

/// Flow + Newton roots from the all-zeros start, checked against companion
/// roots, both residuals and the Hessian spectrum at the equilibrium.
VerificationReport full_verify(const ContinuousHahnParams& p, unsigned n,
                               const FlowSettings& settings = {});
VerificationReport full_verify(const WilsonParams& p, unsigned n,
                               const FlowSettings& settings = {});

}  // namespace orthoflow
