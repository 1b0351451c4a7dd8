#pragma once

// Numerical checks of the Heisenberg and logarithmic uncertainty inequalities
// for the two-sided QFT and the Gabor QFT.
//
// Spatial integrals are Riemann sums over the signal grid; frequency integrals
// use the continuum frequency of each bin with cell 1 / (n1 h1 n2 h2); shift
// integrals use the shift cell h1 h2. Reports carry both sides of each
// inequality; they never decide on their own whether a gap is grid error.

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <numbers>
#include <string>

#include "quatgabor/error.hpp"
#include "quatgabor/gqft.hpp"
#include "quatgabor/grid.hpp"
#include "quatgabor/qft.hpp"

namespace quatgabor {

/// Default one-sided slack for inequality verdicts at desk resolutions.
inline constexpr double default_grid_tolerance = 1e-2;
/// Boundary-frame samples must stay below this fraction of the peak.
inline constexpr double decay_threshold = 1e-10;
/// Default digamma argument for the logarithmic bound.
inline constexpr double default_log_t = 0.5;

/// psi(t) = Gamma'(t) / Gamma(t) via upward recurrence to t >= 10 and the asymptotic series.
inline double digamma(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw error(errc::domain_error, "digamma needs t > 0");
  double acc = 0.0;
  while (t < 10.0) {
    acc -= 1.0 / t;
    t += 1.0;
  }
  const double inv = 1.0 / t;
  const double inv2 = inv * inv;
  const double tail =
      inv2 * (1.0 / 12 -
              inv2 * (1.0 / 120 -
                      inv2 * (1.0 / 252 -
                              inv2 * (1.0 / 240 - inv2 * (1.0 / 132 - inv2 * (691.0 / 32760 - inv2 / 12))))));
  return acc + std::log(t) - 0.5 * inv - tail;
}

/// psi(t) - ln(pi), the constant of the logarithmic bound.
inline double log_bound_constant(double t) { return digamma(t) - std::log(std::numbers::pi); }

struct HeisenbergReport {
  Axis axis = Axis::one;
  double spatial_moment = 0.0;    // int x_k^2 |f|^2 dx
  double frequency_moment = 0.0;  // int omega_k^2 |F|^2 d omega  (or the double integral for the GQFT)
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  GridSpec grid;

  bool holds(double eps = default_grid_tolerance) const { return ratio >= 1.0 - eps; }
};

struct GaborHeisenbergReport {
  HeisenbergReport heisenberg;
  double window_energy = 0.0;
  // ||phi||^2 int x_k^2 |f|^2  vs  int int x_k^2 |IDQFT(G(., b))|^2 dx db
  double window_lemma_lhs = 0.0;
  double window_lemma_rhs = 0.0;
  double window_lemma_rel_gap = 0.0;
  // (sum_b A_b B_b)^2 <= (sum_b A_b^2)(sum_b B_b^2) for the per-shift moment roots
  double cauchy_schwarz_lhs = 0.0;
  double cauchy_schwarz_rhs = 0.0;
  bool cauchy_schwarz_holds = false;
};

struct LogUncertaintyReport {
  double spatial_log = 0.0;
  double frequency_log = 0.0;
  double t = default_log_t;
  double D = 0.0;  // psi(t) - ln(pi)
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  GridSpec grid;
  // GQFT only: the form before the final Plancherel step, whose right side is
  // D ||phi||^2 int int |G|^2 = D ||phi||^4 ||f||^2. Equal to rhs / slack for the QFT.
  double rhs_intermediate = 0.0;
  double slack_intermediate = 0.0;
  // GQFT only: relative gap of int int ln|x| |IDQFT(G(., b))|^2 dx db = ||phi||^2 int ln|x| |f|^2.
  double window_lemma_rel_gap = 0.0;

  bool holds(double eps = default_grid_tolerance) const { return slack >= -eps * std::fabs(rhs); }
};

struct DerivativeReport {
  Axis axis = Axis::one;
  double frequency_side = 0.0;   // (2 pi)^2 int omega_k^2 |F|^2 d omega
  double derivative_side = 0.0;  // int |d_k f|^2 dx
  double rel_gap = 0.0;
};

namespace detail {

inline double rel_gap(double a, double b) {
  const double scale = std::fmax(std::fabs(a), std::fabs(b));
  return scale == 0.0 ? 0.0 : std::fabs(a - b) / scale;
}

inline void require_decay(const QSignal2D& f, const char* what) {
  const double p = peak(f);
  const double edge = boundary_peak(f);
  if (edge > decay_threshold * p) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s: boundary samples reach %.3g of the peak (limit %.3g)", what, edge / p,
                  decay_threshold);
    throw error(errc::boundary_mass, buf);
  }
}

inline double require_nonzero(const QSignal2D& f) {
  const double e = l2_norm_sq(f);
  if (!(e > 0.0)) throw error(errc::zero_signal, "signal has zero energy");
  return e;
}

}  // namespace detail

/// sqrt(int x_k^2 |f|^2) sqrt(int omega_k^2 |F f|^2)  >=  ||f||^2 / (4 pi).
inline HeisenbergReport heisenberg_qft(const QSignal2D& f, Axis k) {
  const double energy = detail::require_nonzero(f);
  HeisenbergReport r;
  r.axis = k;
  r.grid = f.spec();
  r.spatial_moment = moment2(f, k);
  r.frequency_moment = moment2_frequency(dqft(f), k);
  r.lhs = std::sqrt(r.spatial_moment) * std::sqrt(r.frequency_moment);
  r.rhs = energy / (4.0 * std::numbers::pi);
  r.ratio = r.lhs / r.rhs;
  return r;
}

/// sqrt(int x_k^2 |f|^2) sqrt(int int omega_k^2 |G|^2 d omega db)  >=  ||f||^2 ||phi|| / (4 pi),
/// with the window-moment identity and the Cauchy-Schwarz step evaluated on the same slices.
inline GaborHeisenbergReport heisenberg_gqft(const QSignal2D& f, const Window& w, Axis k) {
  const double energy = detail::require_nonzero(f);
  if (!(w.energy() > 0.0)) throw error(errc::zero_window, "window has zero energy");
  const double db = f.spec().cell_area();

  double freq = 0.0;
  double local_spatial = 0.0;
  double cross = 0.0;
  for_each_slice(f, w, [&](Shift, const QSpectrum2D& slice) {
    const double mw = moment2_frequency(slice, k) * db;
    const double mx = moment2(idqft(slice), k) * db;
    freq += mw;
    local_spatial += mx;
    cross += std::sqrt(mw) * std::sqrt(mx);
  });

  GaborHeisenbergReport g;
  auto& r = g.heisenberg;
  r.axis = k;
  r.grid = f.spec();
  r.spatial_moment = moment2(f, k);
  r.frequency_moment = freq;
  r.lhs = std::sqrt(r.spatial_moment) * std::sqrt(freq);
  r.rhs = energy * std::sqrt(w.energy()) / (4.0 * std::numbers::pi);
  r.ratio = r.lhs / r.rhs;

  g.window_energy = w.energy();
  g.window_lemma_lhs = w.energy() * r.spatial_moment;
  g.window_lemma_rhs = local_spatial;
  g.window_lemma_rel_gap = detail::rel_gap(g.window_lemma_lhs, g.window_lemma_rhs);
  g.cauchy_schwarz_lhs = cross * cross;
  g.cauchy_schwarz_rhs = local_spatial * freq;
  // Equality is attainable, so allow rounding in the comparison.
  g.cauchy_schwarz_holds = g.cauchy_schwarz_lhs <= g.cauchy_schwarz_rhs * (1.0 + 1e-12);
  return g;
}

/// int ln|x| |f|^2 + int ln|omega| |F f|^2  >=  (psi(t) - ln pi) ||f||^2.
inline LogUncertaintyReport log_qft(const QSignal2D& f, double t = default_log_t) {
  detail::require_decay(f, "log_qft");
  LogUncertaintyReport r;
  r.grid = f.spec();
  r.t = t;
  r.D = log_bound_constant(t);
  r.spatial_log = log_moment(f);
  r.frequency_log = log_moment_frequency(dqft(f));
  r.lhs = r.spatial_log + r.frequency_log;
  r.rhs = r.D * l2_norm_sq(f);
  r.slack = r.lhs - r.rhs;
  r.rhs_intermediate = r.rhs;
  r.slack_intermediate = r.slack;
  return r;
}

/// ||phi||^2 int ln|x| |f|^2 + int int ln|omega| |G|^2  >=  ||phi||^2 (psi(t) - ln pi) ||f||^2.
inline LogUncertaintyReport log_gqft(const QSignal2D& f, const Window& w, double t = default_log_t) {
  detail::require_decay(f, "log_gqft");
  if (!(w.energy() > 0.0)) throw error(errc::zero_window, "window has zero energy");
  const double db = f.spec().cell_area();
  double freq = 0.0;
  double local_log = 0.0;
  double gabor_energy = 0.0;
  for_each_slice(f, w, [&](Shift, const QSpectrum2D& slice) {
    freq += log_moment_frequency(slice) * db;
    local_log += log_moment(idqft(slice)) * db;
    gabor_energy += spectrum_energy(slice) * db;
  });

  LogUncertaintyReport r;
  r.grid = f.spec();
  r.t = t;
  r.D = log_bound_constant(t);
  r.spatial_log = w.energy() * log_moment(f);
  r.frequency_log = freq;
  r.lhs = r.spatial_log + r.frequency_log;
  r.rhs = w.energy() * r.D * l2_norm_sq(f);
  r.slack = r.lhs - r.rhs;
  r.rhs_intermediate = r.D * w.energy() * gabor_energy;
  r.slack_intermediate = r.lhs - r.rhs_intermediate;
  r.window_lemma_rel_gap = detail::rel_gap(r.spatial_log, local_log);
  return r;
}

/// (2 pi)^2 int omega_k^2 |F f|^2 d omega  =  int |d_k f|^2 dx, with `derivative` holding d_k f samples.
inline DerivativeReport derivative_identity_check(const QSignal2D& f, const QSignal2D& derivative, Axis k) {
  detail::require_same_grid(f.spec(), derivative.spec(), "derivative_identity_check");
  detail::require_decay(f, "derivative_identity_check");
  DerivativeReport r;
  r.axis = k;
  const double two_pi = 2.0 * std::numbers::pi;
  r.frequency_side = two_pi * two_pi * moment2_frequency(dqft(f), k);
  r.derivative_side = l2_norm_sq(derivative);
  r.rel_gap = detail::rel_gap(r.frequency_side, r.derivative_side);
  return r;
}

/// Same identity with the derivative taken by periodic central differences (O(h^2) bias).
inline DerivativeReport derivative_identity_check(const QSignal2D& f, Axis k) {
  return derivative_identity_check(f, partial_diff_central(f, k), k);
}

}  // namespace quatgabor
