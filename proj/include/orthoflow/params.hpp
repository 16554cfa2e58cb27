#pragma once

#include <array>
#include <complex>

namespace orthoflow {

using Complex = std::complex<double>;

/// Parameters (a, b) of the symmetric continuous Hahn family: both real, or
/// b = conj(a). Re(a), Re(b) > 0.
struct ContinuousHahnParams {
  Complex a;
  Complex b;
};

/// Parameters (a, b, c, d) of the Wilson family. Non-real entries must come
/// in conjugate pairs; all real parts positive.
struct WilsonParams {
  Complex a;
  Complex b;
  Complex c;
  Complex d;

  std::array<Complex, 4> as_array() const { return {a, b, c, d}; }
};

struct JacobiParams {
  double alpha;
  double beta;
};

bool is_real(Complex z) noexcept;

// Each validate() throws InvalidParameters naming the violated invariant.
void validate(const ContinuousHahnParams& p);

/// With allow_boundary, real parameters equal to zero are admitted (the
/// d = 0 specialization reached by the even parity reduction).
void validate(const WilsonParams& p, bool allow_boundary = false);

void validate(const JacobiParams& p);

}  // namespace orthoflow
