#include "orthoflow/polyfactory.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <string>

#include "orthoflow/errors.hpp"

namespace orthoflow {
namespace {

namespace mp = boost::multiprecision;

// The hypergeometric basis (a + ix)_k is badly conditioned against the
// monomial basis: converting a degree-n series loses roughly n decimal
// digits to cancellation. Terms are therefore accumulated in extended
// precision and only the normalized coefficients are rounded to double.
template <unsigned Digits>
using Float = mp::number<mp::cpp_bin_float<Digits>, mp::et_off>;

template <class Real>
struct Cx {
  Real re{0};
  Real im{0};
};

template <class Real>
Cx<Real> make(Complex z) {
  return {Real(z.real()), Real(z.imag())};
}

template <class Real>
Cx<Real> operator+(const Cx<Real>& u, const Cx<Real>& v) {
  return {u.re + v.re, u.im + v.im};
}

template <class Real>
Cx<Real> operator*(const Cx<Real>& u, const Cx<Real>& v) {
  return {u.re * v.re - u.im * v.im, u.re * v.im + u.im * v.re};
}

template <class Real>
Cx<Real> operator/(const Cx<Real>& u, const Cx<Real>& v) {
  const Real den = v.re * v.re + v.im * v.im;
  return {(u.re * v.re + u.im * v.im) / den, (u.im * v.re - u.re * v.im) / den};
}

template <class Real>
Real norm(const Cx<Real>& u) {
  return u.re * u.re + u.im * u.im;
}

// Polynomial Σ_k coef_k B_k(t), coef_k = (-n)_k Π(upper+k) / (k! Π(lower+k)),
// B_{k+1}(t) = B_k(t) (constant (shift+k)^power + slope t).
struct SeriesSpec {
  unsigned n = 0;
  // Each parameter is a sum of exact terms, added in working precision so
  // that relations such as upper = n - 1 + sum(lower) hold without rounding.
  std::vector<std::vector<Complex>> upper;
  std::vector<std::vector<Complex>> lower;
  Complex shift{0.0};
  int power = 0;
  double constant = 1.0;
  Complex slope{1.0};
  bool parity_zeros = false;  // indices of parity opposite to n vanish exactly
  VariableKind variable = VariableKind::X;
};

struct Attempt {
  bool resolved = false;
  std::vector<Complex> coeffs;
};

template <unsigned Digits>
Attempt accumulate(const SeriesSpec& spec) {
  using Real = Float<Digits>;
  const unsigned n = spec.n;
  std::vector<Cx<Real>> sum(n + 1), basis(n + 1);
  std::vector<Real> magnitude(n + 1, Real(0));
  basis[0] = {Real(1), Real(0)};
  Cx<Real> coef{Real(1), Real(0)};
  const Cx<Real> slope = make<Real>(spec.slope);
  const Cx<Real> shift = make<Real>(spec.shift);

  auto total = [](const std::vector<Complex>& terms) {
    Cx<Real> acc{Real(0), Real(0)};
    for (Complex t : terms) acc = acc + make<Real>(t);
    return acc;
  };
  std::vector<Cx<Real>> upper, lower;
  for (const auto& u : spec.upper) upper.push_back(total(u));
  for (const auto& l : spec.lower) lower.push_back(total(l));

  for (unsigned k = 0; k <= n; ++k) {
    for (unsigned j = 0; j <= k; ++j) {
      const Cx<Real> term = coef * basis[j];
      sum[j] = sum[j] + term;
      magnitude[j] += sqrt(norm(term));
    }
    if (k == n) break;

    Cx<Real> num{Real(static_cast<int>(k) - static_cast<int>(n)), Real(0)};
    for (const auto& u : upper) num = num * (u + Cx<Real>{Real(k), Real(0)});
    Cx<Real> den{Real(k + 1), Real(0)};
    for (const auto& l : lower) den = den * (l + Cx<Real>{Real(k), Real(0)});
    coef = coef * num / den;

    Cx<Real> u{Real(spec.constant), Real(0)};
    const Cx<Real> shifted = shift + Cx<Real>{Real(k), Real(0)};
    for (int p = 0; p < spec.power; ++p) u = u * shifted;
    for (unsigned j = k + 1; j > 0; --j) basis[j] = basis[j] * u + basis[j - 1] * slope;
    basis[0] = basis[0] * u;
  }

  const Cx<Real> lead = sum[n];
  const Real lead_abs = sqrt(norm(lead));
  Attempt out;
  out.resolved = true;
  out.coeffs.resize(n + 1);
  // At least 20 significant digits must survive the cancellation.
  const Real margin = pow(Real(10), -static_cast<int>(Digits) + 20);
  for (unsigned j = 0; j <= n; ++j) {
    const Cx<Real> c = sum[j] / lead;
    out.coeffs[j] = Complex(static_cast<double>(c.re), static_cast<double>(c.im));
    const Real noise = magnitude[j] / lead_abs * margin;
    const bool structural_zero = spec.parity_zeros && (j % 2) != (n % 2);
    // Structural zeros carry pure rounding noise, which must stay below 1e-20.
    if (structural_zero ? noise > Real(1) : sqrt(norm(c)) < noise) out.resolved = false;
  }
  out.coeffs[n] = Complex(1.0, 0.0);
  return out;
}

void check_pochhammer_nonzero(Complex base, unsigned n, const char* what) {
  for (unsigned k = 0; k < n; ++k) {
    const Complex f = base + static_cast<double>(k);
    if (std::abs(f) <= 1e-12 * (1.0 + std::abs(base))) {
      throw DegenerateParameters(std::string("vanishing Pochhammer factor in ") + what);
    }
  }
}

SeriesExpansion expand(const SeriesSpec& spec) {
  if (spec.n > kMaxDegree) {
    throw InvalidParameters("degree " + std::to_string(spec.n) + " exceeds the cap of " +
                            std::to_string(kMaxDegree));
  }
  SeriesExpansion result;
  result.poly.variable = spec.variable;
  if (spec.n == 0) {
    result.poly.coeffs = {1.0};
    result.imag_residue = {0.0};
    result.working_digits = 0;
    return result;
  }
  auto total = [](const std::vector<Complex>& terms) {
    Complex acc(0.0, 0.0);
    for (Complex t : terms) acc += t;
    return acc;
  };
  for (const auto& l : spec.lower) check_pochhammer_nonzero(total(l), spec.n, "the series denominator");
  for (const auto& u : spec.upper) check_pochhammer_nonzero(total(u), spec.n, "the normalizing prefactor");

  Attempt attempt = accumulate<50>(spec);
  result.working_digits = 50;
  if (!attempt.resolved) {
    attempt = accumulate<100>(spec);
    result.working_digits = 100;
  }
  if (!attempt.resolved) {
    attempt = accumulate<200>(spec);
    result.working_digits = 200;
  }
  if (!attempt.resolved) {
    // Anything still unresolved here is an accidental near-zero coefficient.
    attempt = accumulate<400>(spec);
    result.working_digits = 400;
  }

  const std::size_t m = attempt.coeffs.size();
  result.poly.coeffs.resize(m);
  result.imag_residue.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    const Complex c = attempt.coeffs[j];
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw PrecisionLoss("non-finite coefficient in series expansion");
    }
    result.imag_residue[j] = std::abs(c.imag());
    if (std::abs(c.imag()) >= 1e-9 * (1.0 + std::abs(c.real()))) {
      throw PrecisionLoss("imaginary residue " + std::to_string(c.imag()) + " at coefficient " +
                          std::to_string(j));
    }
    result.poly.coeffs[j] = c.real();
  }
  return result;
}

}  // namespace

Complex pochhammer(Complex z, unsigned k) noexcept {
  Complex acc(1.0, 0.0);
  for (unsigned j = 0; j < k; ++j) acc *= z + static_cast<double>(j);
  return acc;
}

SeriesExpansion expand_continuous_hahn(unsigned n, const ContinuousHahnParams& p) {
  validate(p);
  const Complex a = p.a;
  const Complex ab = std::conj(p.a);
  const Complex bb = std::conj(p.b);
  SeriesSpec spec;
  spec.n = n;
  spec.upper = {{static_cast<double>(n) - 1.0, a, ab, p.b, bb}};
  spec.lower = {{a, ab}, {a, bb}};
  spec.shift = a;
  spec.power = 1;
  spec.slope = Complex(0.0, 1.0);
  spec.parity_zeros = true;
  spec.variable = VariableKind::X;
  return expand(spec);
}

SeriesExpansion expand_wilson(unsigned n, const WilsonParams& p, bool allow_boundary) {
  validate(p, allow_boundary);
  SeriesSpec spec;
  spec.n = n;
  spec.upper = {{static_cast<double>(n) - 1.0, p.a, p.b, p.c, p.d}};
  spec.lower = {{p.a, p.b}, {p.a, p.c}, {p.a, p.d}};
  spec.shift = p.a;
  spec.power = 2;
  spec.slope = Complex(1.0, 0.0);
  spec.variable = VariableKind::XSquared;
  return expand(spec);
}

SeriesExpansion expand_jacobi(unsigned n, const JacobiParams& p) {
  validate(p);
  SeriesSpec spec;
  spec.n = n;
  spec.upper = {{Complex(n + 1.0), Complex(p.alpha), Complex(p.beta)}};
  spec.lower = {{Complex(p.alpha), Complex(1.0)}};
  spec.power = 0;
  spec.constant = 0.5;
  spec.slope = Complex(-0.5, 0.0);
  spec.parity_zeros = p.alpha == p.beta;
  spec.variable = VariableKind::X;
  return expand(spec);
}

MonicPoly monic_continuous_hahn(unsigned n, const ContinuousHahnParams& p) {
  return expand_continuous_hahn(n, p).poly;
}

MonicPoly monic_wilson(unsigned n, const WilsonParams& p, bool allow_boundary) {
  return expand_wilson(n, p, allow_boundary).poly;
}

MonicPoly monic_jacobi(unsigned n, const JacobiParams& p) { return expand_jacobi(n, p).poly; }

Complex eval_poly(const MonicPoly& poly, Complex x) noexcept {
  const Complex t = poly.variable == VariableKind::XSquared ? x * x : x;
  Complex acc(0.0, 0.0);
  for (auto it = poly.coeffs.rbegin(); it != poly.coeffs.rend(); ++it) acc = acc * t + *it;
  return acc;
}

Complex eval_poly_derivative(const MonicPoly& poly, Complex x) noexcept {
  const bool squared = poly.variable == VariableKind::XSquared;
  const Complex t = squared ? x * x : x;
  Complex acc(0.0, 0.0);
  for (std::size_t k = poly.coeffs.size(); k-- > 1;) {
    acc = acc * t + static_cast<double>(k) * poly.coeffs[k];
  }
  return squared ? 2.0 * x * acc : acc;
}

}  // namespace orthoflow
