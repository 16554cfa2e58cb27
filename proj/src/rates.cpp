#include "orthoflow/rates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <variant>

#include "orthoflow/errors.hpp"
#include "orthoflow/jacobi_baseline.hpp"

namespace orthoflow {
namespace {

constexpr std::size_t kMinSamples = 5;

double rate_term(Complex eps, double R_n) {
  const double re = eps.real();
  const double shifted = R_n + std::abs(eps.imag());
  return re / (re * re + shifted * shifted);
}

// Slope of the least-squares line through (t, y).
double fit_slope(const std::vector<double>& t, const std::vector<double>& y) {
  const auto m = static_cast<double>(t.size());
  double st = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    st += t[i];
    sy += y[i];
  }
  const double tm = st / m, ym = sy / m;
  double stt = 0.0, sty = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    stt += (t[i] - tm) * (t[i] - tm);
    sty += (t[i] - tm) * (y[i] - ym);
  }
  return sty / stt;
}

}  // namespace

double RateReport::min_slope() const noexcept {
  double m = std::numeric_limits<double>::infinity();
  for (double s : measured_slopes) {
    if (std::isfinite(s)) m = std::min(m, s);
  }
  return m;
}

double parameter_rate_terms(std::span<const Complex> eps, double R_n) noexcept {
  double sum = 0.0;
  for (Complex e : eps) sum += rate_term(e, R_n);
  return sum;
}

double kappa_continuous_hahn(const ContinuousHahnParams& p, double R_n) noexcept {
  const Complex eps[] = {p.a, p.b};
  return parameter_rate_terms(eps, R_n);
}

double kappa_wilson(const WilsonParams& p, unsigned n, double R_n) noexcept {
  const auto eps = p.as_array();
  const double crowd = 2.0 * (static_cast<double>(n) - 1.0) / (1.0 + 4.0 * R_n * R_n);
  return crowd + parameter_rate_terms(eps, R_n);
}

double kappa_continuous_hahn_symmetric(const ContinuousHahnParams& p, unsigned n,
                                       double R_n) noexcept {
  const double pairs = 2.0 * static_cast<double>(n / 2) / (1.0 + 4.0 * R_n * R_n);
  const double centre = (n % 2 == 1) ? 2.0 / (2.0 + 2.0 * R_n * R_n) : 0.0;
  return pairs + kappa_continuous_hahn(p, R_n) + centre;
}

double kappa_bound_for(const PotentialKind& kind, std::span<const double> equilibrium) {
  double R_n = 0.0;
  for (double x : equilibrium) R_n = std::max(R_n, std::abs(x));
  const auto n = static_cast<unsigned>(equilibrium.size());
  if (const auto* k = std::get_if<ContinuousHahnPotential>(&kind)) {
    return kappa_continuous_hahn(k->params, R_n);
  }
  if (const auto* k = std::get_if<WilsonPotential>(&kind)) return kappa_wilson(k->params, n, R_n);
  if (const auto* k = std::get_if<JacobiPotential>(&kind)) return jacobi_kappa(k->params, n);
  if (const auto* k = std::get_if<ReducedEvenPotential>(&kind)) {
    return kappa_continuous_hahn_symmetric(k->params, 2 * n, R_n);
  }
  const auto& odd = std::get<ReducedOddPotential>(kind);
  return kappa_continuous_hahn_symmetric(odd.params, 2 * n + 1, R_n);
}

RateReport measure_decay(const Trajectory& traj, std::span<const double> equilibrium,
                         std::pair<double, double> window, std::optional<double> floor) {
  if (traj.times.empty()) throw InsufficientSamples("empty trajectory");
  if (traj.states.front().size() != equilibrium.size()) {
    throw InvalidParameters("equilibrium length does not match the trajectory");
  }
  if (!(window.first < window.second)) throw InvalidParameters("fit window must be increasing");

  RateReport report;
  report.fit_window = {std::max(window.first, traj.times.front()),
                       std::min(window.second, traj.times.back())};
  for (double x : equilibrium) report.R_n = std::max(report.R_n, std::abs(x));
  report.kappa_bound = kappa_bound_for(traj.kind, equilibrium);
  if (const auto* k = std::get_if<ContinuousHahnPotential>(&traj.kind)) {
    if (parity_defect(traj.states.front()) <= 1e-12) {
      report.improved_bound = kappa_continuous_hahn_symmetric(
          k->params, static_cast<unsigned>(equilibrium.size()), report.R_n);
    }
  }

  const double eps = std::numeric_limits<double>::epsilon();
  bool any = false;
  report.measured_slopes.assign(equilibrium.size(), std::numeric_limits<double>::quiet_NaN());
  for (std::size_t j = 0; j < equilibrium.size(); ++j) {
    const double threshold = floor.value_or(10.0 * eps * std::max(1.0, std::abs(equilibrium[j])));
    std::vector<double> t, y;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
      const double ti = traj.times[i];
      if (ti < report.fit_window.first || ti > report.fit_window.second) continue;
      const double err = std::abs(traj.states[i][j] - equilibrium[j]);
      if (err <= threshold) continue;
      t.push_back(ti);
      y.push_back(std::log(err));
    }
    if (t.size() < kMinSamples) continue;
    report.measured_slopes[j] = -fit_slope(t, y);
    any = true;
  }
  if (!any && !equilibrium.empty()) {
    throw InsufficientSamples("fewer than 5 samples above the noise floor in the fit window");
  }
  return report;
}

}  // namespace orthoflow
