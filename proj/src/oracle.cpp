#include "orthoflow/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "orthoflow/errors.hpp"
#include "orthoflow/rates.hpp"

namespace orthoflow {
namespace {

using Real = long double;
using Matrix = std::vector<std::vector<Real>>;

constexpr double kSingularTol = 1e-12;

Real sign_of(Real a, Real b) { return b >= 0 ? std::abs(a) : -std::abs(a); }

// Diagonal similarity scaling by powers of two; keeps Hessenberg structure.
void balance(Matrix& a) {
  const std::size_t n = a.size();
  constexpr Real radix = 2;
  constexpr Real sqrdx = radix * radix;
  bool done = false;
  while (!done) {
    done = true;
    for (std::size_t i = 0; i < n; ++i) {
      Real r = 0, c = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a[j][i]);
        r += std::abs(a[i][j]);
      }
      if (c == 0 || r == 0) continue;
      Real g = r / radix;
      Real f = 1;
      const Real s = c + r;
      while (c < g) {
        f *= radix;
        c *= sqrdx;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= sqrdx;
      }
      if ((c + r) / f < 0.95L * s) {
        done = false;
        g = 1 / f;
        for (std::size_t j = 0; j < n; ++j) a[i][j] *= g;
        for (std::size_t j = 0; j < n; ++j) a[j][i] *= f;
      }
    }
  }
}

// Francis double-shift QR on an upper Hessenberg matrix (destroys `a`).
void hessenberg_qr(Matrix& a, std::vector<Real>& wr, std::vector<Real>& wi) {
  const int n = static_cast<int>(a.size());
  wr.assign(n, 0);
  wi.assign(n, 0);
  Real anorm = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = std::max(i - 1, 0); j < n; ++j) anorm += std::abs(a[i][j]);
  }
  int nn = n - 1;
  Real t = 0;
  int l = 0;
  while (nn >= 0) {
    int its = 0;
    do {
      for (l = nn; l >= 1; --l) {
        Real s = std::abs(a[l - 1][l - 1]) + std::abs(a[l][l]);
        if (s == 0) s = anorm;
        if (std::abs(a[l][l - 1]) + s == s) {
          a[l][l - 1] = 0;
          break;
        }
      }
      Real x = a[nn][nn];
      if (l == nn) {
        wr[nn] = x + t;
        wi[nn] = 0;
        --nn;
      } else {
        Real y = a[nn - 1][nn - 1];
        Real w = a[nn][nn - 1] * a[nn - 1][nn];
        if (l == nn - 1) {
          const Real p = 0.5L * (y - x);
          const Real q = p * p + w;
          Real z = std::sqrt(std::abs(q));
          x += t;
          if (q >= 0) {
            z = p + sign_of(z, p);
            wr[nn - 1] = wr[nn] = x + z;
            if (z != 0) wr[nn] = x - w / z;
            wi[nn - 1] = wi[nn] = 0;
          } else {
            wr[nn - 1] = wr[nn] = x + p;
            wi[nn - 1] = -z;
            wi[nn] = z;
          }
          nn -= 2;
        } else {
          if (its == 60) throw MaxIterations("companion QR iteration did not converge");
          if (its == 10 || its == 20 || its == 40) {
            t += x;
            for (int i = 0; i <= nn; ++i) a[i][i] -= x;
            const Real s = std::abs(a[nn][nn - 1]) + std::abs(a[nn - 1][nn - 2]);
            y = x = 0.75L * s;
            w = -0.4375L * s * s;
          }
          ++its;
          int m = nn - 2;
          Real p = 0, q = 0, r = 0, z = 0;
          for (; m >= l; --m) {
            z = a[m][m];
            r = x - z;
            Real s = y - z;
            p = (r * s - w) / a[m + 1][m] + a[m][m + 1];
            q = a[m + 1][m + 1] - z - r - s;
            r = a[m + 2][m + 1];
            s = std::abs(p) + std::abs(q) + std::abs(r);
            p /= s;
            q /= s;
            r /= s;
            if (m == l) break;
            const Real u = std::abs(a[m][m - 1]) * (std::abs(q) + std::abs(r));
            const Real v = std::abs(p) * (std::abs(a[m - 1][m - 1]) + std::abs(z) +
                                          std::abs(a[m + 1][m + 1]));
            if (u + v == v) break;
          }
          for (int i = m + 2; i <= nn; ++i) {
            a[i][i - 2] = 0;
            if (i != m + 2) a[i][i - 3] = 0;
          }
          for (int k = m; k <= nn - 1; ++k) {
            if (k != m) {
              p = a[k][k - 1];
              q = a[k + 1][k - 1];
              r = 0;
              if (k != nn - 1) r = a[k + 2][k - 1];
              if ((x = std::abs(p) + std::abs(q) + std::abs(r)) != 0) {
                p /= x;
                q /= x;
                r /= x;
              }
            }
            const Real s = sign_of(std::sqrt(p * p + q * q + r * r), p);
            if (s != 0) {
              if (k == m) {
                if (l != m) a[k][k - 1] = -a[k][k - 1];
              } else {
                a[k][k - 1] = -s * x;
              }
              p += s;
              x = p / s;
              y = q / s;
              z = r / s;
              q /= p;
              r /= p;
              for (int j = k; j <= nn; ++j) {
                p = a[k][j] + q * a[k + 1][j];
                if (k != nn - 1) {
                  p += r * a[k + 2][j];
                  a[k + 2][j] -= p * z;
                }
                a[k + 1][j] -= p * y;
                a[k][j] -= p * x;
              }
              const int mmin = nn < k + 3 ? nn : k + 3;
              for (int i = l; i <= mmin; ++i) {
                p = x * a[i][k] + y * a[i][k + 1];
                if (k != nn - 1) {
                  p += z * a[i][k + 2];
                  a[i][k + 2] -= p * r;
                }
                a[i][k + 1] -= p * q;
                a[i][k] -= p;
              }
            }
          }
        }
      }
    } while (l < nn - 1);
  }
}

Complex unit_ratio_product(double x, std::span<const Complex> eps) {
  const Complex i(0.0, 1.0);
  Complex acc(1.0, 0.0);
  for (Complex e : eps) {
    const Complex den = i * e - x;
    if (std::abs(den) < kSingularTol) throw SingularFactor("vanishing parameter factor i*eps - x");
    acc *= (i * e + x) / den;
  }
  return acc;
}

Complex pair_ratio(double d) {
  const Complex i(0.0, 1.0);
  const Complex den = i - d;
  if (std::abs(den) < kSingularTol) throw SingularFactor("vanishing pair factor");
  return (i + d) / den;
}

template <class Params>
VerificationReport verify_common(const PotentialKind& kind, const Params& p, const MonicPoly& poly,
                                 unsigned n, const FlowSettings& settings) {
  VerificationReport report;
  if (n == 0) return report;
  report.flow_roots = find_equilibrium(kind, Configuration(n, 0.0), settings);
  report.companion_roots = companion_roots(poly);
  for (unsigned j = 0; j < n; ++j) {
    report.root_mismatch =
        std::max(report.root_mismatch, std::abs(report.flow_roots[j] - report.companion_roots[j]));
  }
  report.max_diff_eq_residual = diff_eq_residual(poly, report.flow_roots, p);
  report.hessian_min_eigenvalue = symmetric_eigenvalues(hessian(kind, report.flow_roots)).front();
  report.kappa_bound = kappa_bound_for(kind, report.flow_roots);
  return report;
}

}  // namespace

std::vector<Complex> companion_eigenvalues(std::span<const double> coeffs) {
  if (coeffs.size() < 2) throw InvalidParameters("companion matrix needs degree >= 1");
  const std::size_t n = coeffs.size() - 1;
  Matrix a(n, std::vector<Real>(n, 0));
  for (std::size_t j = 0; j < n; ++j) {
    a[0][j] = -static_cast<Real>(coeffs[n - 1 - j]) / static_cast<Real>(coeffs[n]);
  }
  for (std::size_t i = 1; i < n; ++i) a[i][i - 1] = 1;
  balance(a);
  std::vector<Real> wr, wi;
  hessenberg_qr(a, wr, wi);
  std::vector<Complex> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = Complex(static_cast<double>(wr[i]), static_cast<double>(wi[i]));
  }
  return out;
}

std::vector<double> companion_roots(const MonicPoly& poly) {
  if (poly.degree() < 1) throw InvalidParameters("companion_roots needs degree >= 1");
  const std::vector<Complex> eig = companion_eigenvalues(poly.coeffs);
  std::vector<double> roots;
  roots.reserve(eig.size());
  for (Complex z : eig) {
    if (std::abs(z.imag()) > 1e-6 * std::max(1.0, std::abs(z))) {
      throw ComplexRoots("companion eigenvalue with imaginary part " + std::to_string(z.imag()));
    }
    if (poly.variable == VariableKind::XSquared) {
      if (z.real() < 0.0) {
        throw ComplexRoots("negative root " + std::to_string(z.real()) + " in x^2");
      }
      roots.push_back(std::sqrt(z.real()));
    } else {
      roots.push_back(z.real());
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::vector<double> symmetric_eigenvalues(const Eigen::MatrixXd& m) {
  const Eigen::Index n = m.rows();
  Eigen::MatrixXd a = 0.5 * (m + m.transpose());
  const double scale = a.squaredNorm();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    }
    if (off <= 1e-32 * scale) break;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> eig(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) eig[static_cast<std::size_t>(i)] = a(i, i);
  std::sort(eig.begin(), eig.end());
  return eig;
}

double bethe_residual_ch(std::span<const double> x, const ContinuousHahnParams& p) {
  const std::size_t n = x.size();
  const Complex eps[] = {p.a, p.b};
  const double target = (n % 2 == 1) ? 1.0 : -1.0;  // (-1)^{n+1}
  double worst = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    Complex lhs = unit_ratio_product(x[j], eps);
    for (std::size_t k = 0; k < n; ++k) {
      if (k != j) lhs *= pair_ratio(x[j] - x[k]);
    }
    worst = std::max(worst, std::abs(lhs - target));
  }
  return worst;
}

double bethe_residual_w(std::span<const double> x, const WilsonParams& p) {
  const std::size_t n = x.size();
  const auto eps = p.as_array();
  double worst = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    Complex lhs = unit_ratio_product(x[j], eps);
    for (std::size_t k = 0; k < n; ++k) {
      if (k == j) continue;
      lhs *= pair_ratio(x[j] + x[k]) * pair_ratio(x[j] - x[k]);
    }
    worst = std::max(worst, std::abs(lhs - 1.0));
  }
  return worst;
}

double diff_eq_residual(const MonicPoly& poly, std::span<const double> roots,
                        const ContinuousHahnParams& p) {
  const Complex i(0.0, 1.0);
  const double n = static_cast<double>(poly.degree());
  const double lambda = -n * (n + (2.0 * p.a + 2.0 * p.b).real() - 1.0);
  auto a_fn = [&](double x) { return (x + i * p.a) * (x + i * p.b); };
  double worst = 0.0;
  for (double x : roots) {
    const Complex lhs = a_fn(x) * eval_poly(poly, x + i) + a_fn(-x) * eval_poly(poly, x - i);
    const double scale = std::abs(lambda) * std::abs(eval_poly_derivative(poly, x));
    if (scale < kSingularTol) throw SingularFactor("vanishing derivative scale at a node");
    worst = std::max(worst, std::abs(lhs) / scale);
  }
  return worst;
}

double diff_eq_residual(const MonicPoly& poly, std::span<const double> roots,
                        const WilsonParams& p) {
  const Complex i(0.0, 1.0);
  const double n = static_cast<double>(poly.degree());
  const double lambda = -n * (n + (p.a + p.b + p.c + p.d).real() - 1.0);
  const auto eps = p.as_array();
  auto a_fn = [&](double x) {
    Complex num(1.0, 0.0);
    for (Complex e : eps) num *= x + i * e;
    return num / (2.0 * x * (2.0 * x + i));
  };
  double worst = 0.0;
  for (double x : roots) {
    if (std::abs(x) < kSingularTol) throw SingularFactor("Wilson node at x = 0");
    const Complex lhs = a_fn(x) * eval_poly(poly, x + i) + a_fn(-x) * eval_poly(poly, x - i);
    const double scale = std::abs(lambda) * std::abs(eval_poly_derivative(poly, x));
    if (scale < kSingularTol) throw SingularFactor("vanishing derivative scale at a node");
    worst = std::max(worst, std::abs(lhs) / scale);
  }
  return worst;
}

VerificationReport full_verify(const ContinuousHahnParams& p, unsigned n,
                               const FlowSettings& settings) {
  validate(p);
  VerificationReport r =
      verify_common(ContinuousHahnPotential{p}, p, monic_continuous_hahn(n, p), n, settings);
  if (n > 0) r.max_bethe_residual = bethe_residual_ch(r.flow_roots, p);
  return r;
}

VerificationReport full_verify(const WilsonParams& p, unsigned n, const FlowSettings& settings) {
  validate(p);
  VerificationReport r = verify_common(WilsonPotential{p}, p, monic_wilson(n, p), n, settings);
  if (n > 0) r.max_bethe_residual = bethe_residual_w(r.flow_roots, p);
  return r;
}

}  // namespace orthoflow
