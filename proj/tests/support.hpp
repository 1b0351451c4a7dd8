#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "quatgabor/grid.hpp"
#include "quatgabor/quaternion.hpp"

namespace qg_test {

using quatgabor::GridSpec;
using quatgabor::QSignal2D;
using quatgabor::Quaternion;

inline Quaternion random_quaternion(std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return {u(rng), u(rng), u(rng), u(rng)};
}

inline Quaternion random_unit_in_plane(std::mt19937_64& rng, quatgabor::QAxis axis) {
  std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
  return quatgabor::qexp_axis(axis, u(rng));
}

inline QSignal2D random_signal(std::mt19937_64& rng, const GridSpec& spec) {
  std::vector<Quaternion> d(spec.size());
  for (auto& q : d) q = random_quaternion(rng);
  return QSignal2D(spec, std::move(d));
}

inline QSignal2D random_signal(std::mt19937_64& rng, std::size_t n1, std::size_t n2) {
  return random_signal(rng, GridSpec(n1, n2, 1.0, 1.0, true));
}

inline QSignal2D delta(const GridSpec& spec, std::size_t m1, std::size_t m2, Quaternion value = Quaternion(1.0)) {
  std::vector<Quaternion> d(spec.size());
  d[m1 * spec.n2 + m2] = value;
  return QSignal2D(spec, std::move(d));
}

/// e^{-pi a |x - c|^2}, optionally modulated by e^{i 2pi u1 x1} (left) and e^{j 2pi u2 x2} (right).
struct GaussianParams {
  double a = 1.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double u1 = 0.0;
  double u2 = 0.0;
};

inline QSignal2D gaussian(const GridSpec& spec, GaussianParams p = {}) {
  return quatgabor::sample(
      [p](double x1, double x2) {
        const double d1 = x1 - p.c1;
        const double d2 = x2 - p.c2;
        const Quaternion g(std::exp(-std::numbers::pi * p.a * (d1 * d1 + d2 * d2)));
        return quatgabor::qmul(quatgabor::qmul(quatgabor::qexp_axis(quatgabor::QAxis::i, 2.0 * std::numbers::pi * p.u1 * x1), g),
                               quatgabor::qexp_axis(quatgabor::QAxis::j, 2.0 * std::numbers::pi * p.u2 * x2));
      },
      spec);
}

/// Adaptive Simpson on [a, b].
template <class Fn>
double adaptive_simpson(Fn&& f, double a, double b, double tol, int depth = 50) {
  auto simpson = [&](double lo, double hi, double flo, double fmid, double fhi) {
    return (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
  };
  auto rec = [&](auto&& self, double lo, double hi, double flo, double fmid, double fhi, double whole, double eps,
                 int d) -> double {
    const double mid = 0.5 * (lo + hi);
    const double lm = 0.5 * (lo + mid);
    const double rm = 0.5 * (mid + hi);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(lo, mid, flo, flm, fmid);
    const double right = simpson(mid, hi, fmid, frm, fhi);
    if (d <= 0 || std::fabs(left + right - whole) <= 15.0 * eps) return left + right + (left + right - whole) / 15.0;
    return self(self, lo, mid, flo, flm, fmid, left, eps / 2.0, d - 1) +
           self(self, mid, hi, fmid, frm, fhi, right, eps / 2.0, d - 1);
  };
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  return rec(rec, a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), tol, depth);
}

}  // namespace qg_test
