#pragma once

#include <Eigen/Dense>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "orthoflow/params.hpp"

namespace orthoflow {

/// Candidate root positions (x_1, ..., x_n).
using Configuration = std::vector<double>;

struct ContinuousHahnPotential {
  ContinuousHahnParams params;
};

struct WilsonPotential {
  WilsonParams params;
};

/// Stieltjes' logarithmic energy on the ordered cell -1 < x_1 < ... < x_n < 1.
struct JacobiPotential {
  JacobiParams params;
};

/// Continuous Hahn potential restricted to x = (-y_m, ..., -y_1, y_1, ..., y_m).
struct ReducedEvenPotential {
  ContinuousHahnParams params;
};

/// Continuous Hahn potential restricted to x = (-y_m, ..., -y_1, 0, y_1, ..., y_m).
struct ReducedOddPotential {
  ContinuousHahnParams params;
};

using PotentialKind = std::variant<ContinuousHahnPotential, WilsonPotential, JacobiPotential,
                                   ReducedEvenPotential, ReducedOddPotential>;

std::string_view kind_name(const PotentialKind& kind) noexcept;

/// Validates the parameter record carried by `kind`.
void validate(const PotentialKind& kind);

/// ∫_0^x arctan(θ) dθ = x arctan(x) - log(1 + x^2) / 2.
double antideriv_arctan(double x) noexcept;

/// arctan(x/a) + arctan(x/b) for a real pair or a conjugate pair; the
/// latter is evaluated as 2 Re arctan(x/a) on the principal branch.
double pair_arctan(double x, Complex a, Complex b);

/// Throws DomainViolation when a Jacobi configuration leaves the ordered
/// open cell inside (-1, 1).
void check_jacobi_domain(std::span<const double> x);

double potential(const PotentialKind& kind, std::span<const double> x);
Configuration gradient(const PotentialKind& kind, std::span<const double> x);
Eigen::MatrixXd hessian(const PotentialKind& kind, std::span<const double> x);

}  // namespace orthoflow
