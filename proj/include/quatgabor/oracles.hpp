#pragma once

// Independent ground truth for the Gabor transform: the incomplete Gaussian
// integral qf(z) = int_0^z e^{-t^2} dt (real and complex arguments), direct
// 2D quadrature of the continuum transform integral, and the closed forms of
// the two worked examples (box window on a one-sided exponential, Haar window
// on a Gaussian).
//
// Nothing here includes or calls the discrete transform code.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>

#include "quatgabor/error.hpp"
#include "quatgabor/quaternion.hpp"

namespace quatgabor::oracles {

using cplx = std::complex<double>;

/// Complex number living in the (1, axis) subplane of the quaternions.
struct PlaneComplex {
  double re = 0.0;
  double im = 0.0;
  QAxis axis = QAxis::i;

  cplx value() const { return {re, im}; }
  static PlaneComplex from(cplx c, QAxis axis) { return {c.real(), c.imag(), axis}; }

  Quaternion to_quaternion() const {
    return axis == QAxis::i ? Quaternion{re, im, 0.0, 0.0} : Quaternion{re, 0.0, im, 0.0};
  }
};

inline constexpr double qf_stability_bound = 50.0;

namespace detail {

// sum_{n >= 0} (-1)^n z^{2n+1} / (n! (2n + 1))
inline cplx qf_series(cplx z) {
  const cplx z2 = z * z;
  const double mag = std::abs(z2);
  cplx term = z;
  cplx sum = z;
  for (int n = 1; n < 10000; ++n) {
    term *= -z2 / static_cast<double>(n);
    const cplx add = term / static_cast<double>(2 * n + 1);
    sum += add;
    if (n > mag && std::abs(add) <= 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

// erfc(z) = e^{-z^2} / sqrt(pi) * 1 / (z + (1/2) / (z + 1 / (z + (3/2) / (z + ...)))),
// evaluated by modified Lentz. Needs Re z > 0; used for Re z >= 2.
inline cplx qf_continued_fraction(cplx z) {
  constexpr double tiny = 1e-300;
  cplx f = z;
  cplx c = f;
  cplx d = 0.0;
  for (int k = 1; k < 100000; ++k) {
    const double a = 0.5 * k;
    d = z + a * d;
    if (std::abs(d) < tiny) d = tiny;
    d = 1.0 / d;
    c = z + a / c;
    if (std::abs(c) < tiny) c = tiny;
    const cplx delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return 0.5 * std::sqrt(std::numbers::pi) - 0.5 * std::exp(-z * z) / f;
}

inline cplx qf_dispatch(cplx z) {
  if (z.real() < 0.0) return -qf_dispatch(-z);
  return z.real() >= 2.0 ? qf_continued_fraction(z) : qf_series(z);
}

}  // namespace detail

/// int_0^x e^{-t^2} dt = (sqrt(pi) / 2) erf(x).
inline double qf(double x) {
  if (!std::isfinite(x)) throw error(errc::invalid_argument, "qf argument must be finite");
  return detail::qf_dispatch(cplx(x, 0.0)).real();
}

/// int_0^z e^{-t^2} dt along the straight segment, z in one quaternion subplane.
inline PlaneComplex qf_complex(const PlaneComplex& z) {
  if (!std::isfinite(z.re) || !std::isfinite(z.im))
    throw error(errc::invalid_argument, "qf argument must be finite");
  if (std::fabs(z.im) > qf_stability_bound)
    throw error(errc::out_of_range, "|Im z| = " + std::to_string(std::fabs(z.im)) + " exceeds the stability bound");
  const cplx v = detail::qf_dispatch(z.value());
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw error(errc::out_of_range, "qf value overflows at Im z = " + std::to_string(z.im));
  return PlaneComplex::from(v, z.axis);
}

enum class QuadratureRule { midpoint, simpson };

struct QuadratureDomain {
  std::array<double, 2> lo{};
  std::array<double, 2> hi{};
  std::size_t resolution = 256;  // intervals per axis
  QuadratureRule rule = QuadratureRule::simpson;
  /// When set, the integrand must be below 1e-12 on the domain edges (truncated
  /// infinite support). Clear it when the domain is an exact piece of a compact support.
  bool require_decay = true;
};

namespace detail {

inline double simpson_weight(std::size_t k, std::size_t n) {
  if (k == 0 || k == n) return 1.0;
  return k % 2 == 1 ? 4.0 : 2.0;
}

}  // namespace detail

/// Composite quadrature of e^{-i 2pi x1 w1} f(x) conj(phi(x - b)) e^{-j 2pi x2 w2} over `dom`.
template <class SignalFn, class WindowFn>
Quaternion gqft_quadrature(SignalFn&& f_fn, WindowFn&& phi_fn, std::array<double, 2> omega,
                           std::array<double, 2> b, const QuadratureDomain& dom) {
  if (!(dom.lo[0] < dom.hi[0]) || !(dom.lo[1] < dom.hi[1]))
    throw error(errc::invalid_argument, "quadrature domain must satisfy lo < hi");
  if (dom.resolution < 2) throw error(errc::invalid_argument, "quadrature resolution must be at least 2");
  if (dom.rule == QuadratureRule::simpson && dom.resolution % 2 != 0)
    throw error(errc::invalid_argument, "simpson rule needs an even resolution");

  const double two_pi = 2.0 * std::numbers::pi;
  auto integrand = [&](double x1, double x2) {
    const Quaternion v = qmul(f_fn(x1, x2), qconj(phi_fn(x1 - b[0], x2 - b[1])));
    return qmul(qmul(qexp_axis(QAxis::i, -two_pi * x1 * omega[0]), v), qexp_axis(QAxis::j, -two_pi * x2 * omega[1]));
  };

  const std::size_t n = dom.resolution;
  const double d1 = (dom.hi[0] - dom.lo[0]) / static_cast<double>(n);
  const double d2 = (dom.hi[1] - dom.lo[1]) / static_cast<double>(n);

  if (dom.require_decay) {
    double edge = 0.0;
    for (std::size_t k = 0; k <= n; ++k) {
      const double x1 = dom.lo[0] + d1 * static_cast<double>(k);
      const double x2 = dom.lo[1] + d2 * static_cast<double>(k);
      edge = std::fmax(edge, qnorm(integrand(x1, dom.lo[1])));
      edge = std::fmax(edge, qnorm(integrand(x1, dom.hi[1])));
      edge = std::fmax(edge, qnorm(integrand(dom.lo[0], x2)));
      edge = std::fmax(edge, qnorm(integrand(dom.hi[0], x2)));
    }
    if (edge >= 1e-12)
      throw error(errc::boundary_mass, "integrand reaches " + std::to_string(edge) + " on the domain boundary");
  }

  Quaternion acc;
  if (dom.rule == QuadratureRule::midpoint) {
    for (std::size_t a = 0; a < n; ++a) {
      const double x1 = dom.lo[0] + d1 * (static_cast<double>(a) + 0.5);
      for (std::size_t c = 0; c < n; ++c)
        acc += integrand(x1, dom.lo[1] + d2 * (static_cast<double>(c) + 0.5));
    }
    return acc * (d1 * d2);
  }
  for (std::size_t a = 0; a <= n; ++a) {
    const double w1 = detail::simpson_weight(a, n);
    const double x1 = a == n ? dom.hi[0] : dom.lo[0] + d1 * static_cast<double>(a);
    Quaternion row;
    for (std::size_t c = 0; c <= n; ++c) {
      const double x2 = c == n ? dom.hi[1] : dom.lo[1] + d2 * static_cast<double>(c);
      row += integrand(x1, x2) * detail::simpson_weight(c, n);
    }
    acc += row * w1;
  }
  return acc * (d1 * d2 / 9.0);
}

// ---------------------------------------------------------------------------
// Example 1: box window 1_{[-1,1]^2}, signal e^{-x1-x2} on the positive quadrant.

namespace detail {

// int_lo^hi e^{-x (1 + axis 2pi w)} dx as a complex number in the axis plane; zero if hi <= lo.
inline cplx exponential_segment(double w, double lo, double hi) {
  if (hi <= lo) return 0.0;
  const cplx s(1.0, 2.0 * std::numbers::pi * w);
  return (std::exp(-hi * s) - std::exp(-lo * s)) / (-s);
}

}  // namespace detail

/// Closed form at continuum (omega, b). Each axis factor
///   [e^{-x (1 + axis 2pi w)} / (-1 - axis 2pi w)]_{max(0, b - 1)}^{1 + b}
/// stays in its own subplane, and the i-factor multiplies the j-factor from the left.
inline Quaternion example1_closed(std::array<double, 2> omega, std::array<double, 2> b) {
  const cplx f1 = detail::exponential_segment(omega[0], std::fmax(0.0, b[0] - 1.0), 1.0 + b[0]);
  const cplx f2 = detail::exponential_segment(omega[1], std::fmax(0.0, b[1] - 1.0), 1.0 + b[1]);
  return qmul(PlaneComplex::from(f1, QAxis::i).to_quaternion(), PlaneComplex::from(f2, QAxis::j).to_quaternion());
}

inline Quaternion example1_signal(double x1, double x2) {
  return (x1 >= 0.0 && x2 >= 0.0) ? Quaternion(std::exp(-x1 - x2)) : Quaternion();
}

/// The same integral by quadrature over the support rectangle (where the window is 1).
inline Quaternion example1_quadrature(std::array<double, 2> omega, std::array<double, 2> b,
                                      std::size_t resolution = 400) {
  const double lo1 = std::fmax(0.0, b[0] - 1.0);
  const double lo2 = std::fmax(0.0, b[1] - 1.0);
  const double hi1 = 1.0 + b[0];
  const double hi2 = 1.0 + b[1];
  if (hi1 <= lo1 || hi2 <= lo2) return {};
  QuadratureDomain dom{{lo1, lo2}, {hi1, hi2}, resolution, QuadratureRule::simpson, false};
  return gqft_quadrature(example1_signal, [](double, double) { return Quaternion(1.0); }, omega, b, dom);
}

// ---------------------------------------------------------------------------
// Example 2: Haar window (+1 on [0,1/2]^2, -1 on [1/2,1]^2), signal e^{-(x1^2 + x2^2)}.

namespace detail {

inline Quaternion qf_at(double shift, double w, QAxis axis) {
  return qf_complex(PlaneComplex{shift, std::numbers::pi * w, axis}).to_quaternion();
}

}  // namespace detail

/// The published final expression, term by term:
///   e^{-(w1^2 + w2^2) pi^2} { [-qf(1 + b1 + i pi w1) + qf(1/2 + b1 + i pi w1)] [-qf(1 + b2 + j pi w2) + qf(1/2 + b2 + j pi w2)]
///                           - [-qf(1/2 + b1 + i pi w1) + qf(1 + b1 + i pi w1)] [-qf(1/2 + b2 + j pi w2) + qf(1 + b2 + j pi w2)] }
/// The second product equals the first (both brackets change sign), so this
/// evaluates to zero for every (omega, b). Kept verbatim so the comparison
/// against quadrature can report the mismatch.
inline Quaternion example2_closed(std::array<double, 2> omega, std::array<double, 2> b) {
  using detail::qf_at;
  const double damp = std::exp(-(omega[0] * omega[0] + omega[1] * omega[1]) * std::numbers::pi * std::numbers::pi);
  const Quaternion a1 = -qf_at(1.0 + b[0], omega[0], QAxis::i) + qf_at(0.5 + b[0], omega[0], QAxis::i);
  const Quaternion a2 = -qf_at(1.0 + b[1], omega[1], QAxis::j) + qf_at(0.5 + b[1], omega[1], QAxis::j);
  const Quaternion c1 = -qf_at(0.5 + b[0], omega[0], QAxis::i) + qf_at(1.0 + b[0], omega[0], QAxis::i);
  const Quaternion c2 = -qf_at(0.5 + b[1], omega[1], QAxis::j) + qf_at(1.0 + b[1], omega[1], QAxis::j);
  return (qmul(a1, a2) - qmul(c1, c2)) * damp;
}

/// Example 2 with the integration limits carried through correctly:
///   e^{-|w|^2 pi^2} { [qf(1/2 + b1 + i pi w1) - qf(b1 + i pi w1)] [qf(1/2 + b2 + j pi w2) - qf(b2 + j pi w2)]
///                   - [qf(1 + b1 + i pi w1) - qf(1/2 + b1 + i pi w1)] [qf(1 + b2 + j pi w2) - qf(1/2 + b2 + j pi w2)] }
inline Quaternion example2_corrected(std::array<double, 2> omega, std::array<double, 2> b) {
  using detail::qf_at;
  const double damp = std::exp(-(omega[0] * omega[0] + omega[1] * omega[1]) * std::numbers::pi * std::numbers::pi);
  const Quaternion lo1 = qf_at(0.5 + b[0], omega[0], QAxis::i) - qf_at(b[0], omega[0], QAxis::i);
  const Quaternion lo2 = qf_at(0.5 + b[1], omega[1], QAxis::j) - qf_at(b[1], omega[1], QAxis::j);
  const Quaternion hi1 = qf_at(1.0 + b[0], omega[0], QAxis::i) - qf_at(0.5 + b[0], omega[0], QAxis::i);
  const Quaternion hi2 = qf_at(1.0 + b[1], omega[1], QAxis::j) - qf_at(0.5 + b[1], omega[1], QAxis::j);
  return (qmul(lo1, lo2) - qmul(hi1, hi2)) * damp;
}

inline Quaternion example2_signal(double x1, double x2) { return Quaternion(std::exp(-(x1 * x1 + x2 * x2))); }

/// Quadrature over the two squares where the Haar window is +1 and -1.
inline Quaternion example2_quadrature(std::array<double, 2> omega, std::array<double, 2> b,
                                      std::size_t resolution = 200) {
  QuadratureDomain lower{{b[0], b[1]}, {b[0] + 0.5, b[1] + 0.5}, resolution, QuadratureRule::simpson, false};
  QuadratureDomain upper{{b[0] + 0.5, b[1] + 0.5}, {b[0] + 1.0, b[1] + 1.0}, resolution, QuadratureRule::simpson, false};
  const Quaternion plus =
      gqft_quadrature(example2_signal, [](double, double) { return Quaternion(1.0); }, omega, b, lower);
  const Quaternion minus =
      gqft_quadrature(example2_signal, [](double, double) { return Quaternion(-1.0); }, omega, b, upper);
  return plus + minus;
}

/// |a - b| / |b| with the quaternion modulus; 0 when both vanish.
inline double relative_error(const Quaternion& value, const Quaternion& reference) {
  const double diff = qnorm(value - reference);
  const double ref = qnorm(reference);
  if (ref == 0.0) return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return diff / ref;
}

}  // namespace quatgabor::oracles
