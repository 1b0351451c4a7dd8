#pragma once

// Two-sided Gabor quaternionic Fourier transform on the sample lattice.
//
//   G(w, b) = DQFT[ x -> f[x] conj(phi[(x - b) mod n]) ](w)
//
// Shifts b run over the whole signal grid with circular wrapping, which
// makes sum_b |phi[x - b]|^2 h1 h2 = ||phi||^2 for every x. Plancherel and
// reconstruction are then exact discrete identities.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "quatgabor/error.hpp"
#include "quatgabor/grid.hpp"
#include "quatgabor/qft.hpp"
#include "quatgabor/quaternion.hpp"

namespace quatgabor {

/// Indicator of [-1, 1]^2.
struct BoxWindow {};
/// +1 on [0, 1/2]^2, -1 on [1/2, 1]^2, 0 elsewhere.
struct Haar2DWindow {};
/// exp(-|x|^2 / (2 sigma^2)) / (2 pi sigma^2); energy 1 / (4 pi sigma^2).
struct GaussianWindow {
  double sigma = 1.0;
};
struct CustomWindow {
  QSignal2D samples;
};

using WindowShape = std::variant<BoxWindow, Haar2DWindow, GaussianWindow, CustomWindow>;

inline double box_window_value(double x1, double x2) {
  return (std::fabs(x1) <= 1.0 && std::fabs(x2) <= 1.0) ? 1.0 : 0.0;
}

inline double haar2d_window_value(double x1, double x2) {
  if (x1 >= 0.0 && x1 <= 0.5 && x2 >= 0.0 && x2 <= 0.5) return 1.0;
  if (x1 >= 0.5 && x1 <= 1.0 && x2 >= 0.5 && x2 <= 1.0) return -1.0;
  return 0.0;
}

inline double gaussian_window_value(double sigma, double x1, double x2) {
  const double s2 = sigma * sigma;
  return std::exp(-(x1 * x1 + x2 * x2) / (2.0 * s2)) / (2.0 * std::numbers::pi * s2);
}

class Window {
 public:
  Window(WindowShape shape, QSignal2D samples)
      : shape_(std::move(shape)), samples_(std::move(samples)), energy_(l2_norm_sq(samples_)) {
    if (!(energy_ > 0.0)) throw error(errc::zero_window, "window has zero energy");
  }

  const WindowShape& shape() const { return shape_; }
  const QSignal2D& samples() const { return samples_; }
  const GridSpec& spec() const { return samples_.spec(); }
  /// C_phi = ||phi||^2.
  double energy() const { return energy_; }

 private:
  WindowShape shape_;
  QSignal2D samples_;
  double energy_;
};

namespace detail {

inline void require_cover(const GridSpec& s, double lo, double hi, const char* name) {
  for (Axis a : {Axis::one, Axis::two}) {
    const double first = s.coordinate(a, 0);
    const double last = s.coordinate(a, s.extent(a) - 1);
    if (first > lo || last < hi)
      throw error(errc::invalid_argument, std::string(name) + " window support [" + std::to_string(lo) + ", " +
                                              std::to_string(hi) + "] is not covered by the grid");
  }
}

}  // namespace detail

inline Window make_window(const WindowShape& shape, const GridSpec& spec) {
  return std::visit(
      [&](const auto& k) -> Window {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, BoxWindow>) {
          detail::require_cover(spec, -1.0, 1.0, "box");
          return Window(k, sample([](double a, double b) { return Quaternion(box_window_value(a, b)); }, spec));
        } else if constexpr (std::is_same_v<K, Haar2DWindow>) {
          detail::require_cover(spec, 0.0, 1.0, "haar2d");
          return Window(k, sample([](double a, double b) { return Quaternion(haar2d_window_value(a, b)); }, spec));
        } else if constexpr (std::is_same_v<K, GaussianWindow>) {
          if (!(k.sigma > 0.0) || !std::isfinite(k.sigma))
            throw error(errc::invalid_argument, "gaussian window sigma must be positive");
          const double sigma = k.sigma;
          return Window(k, sample([sigma](double a, double b) { return Quaternion(gaussian_window_value(sigma, a, b)); },
                                  spec));
        } else {
          detail::require_same_grid(k.samples.spec(), spec, "custom window");
          return Window(k, k.samples);
        }
      },
      shape);
}

/// Pointwise f[x] conj(phi[(x - b) mod n]) in that order.
inline QSignal2D windowed_product(const QSignal2D& f, const Window& w, Shift b) {
  detail::require_same_grid(f.spec(), w.spec(), "gqft");
  const auto& s = f.spec();
  const auto& phi = w.samples();
  std::vector<Quaternion> out(f.size());
  for (std::size_t m1 = 0; m1 < s.n1; ++m1) {
    for (std::size_t m2 = 0; m2 < s.n2; ++m2) {
      const Quaternion& p = phi.at_wrapped(static_cast<std::int64_t>(m1) - b.s1, static_cast<std::int64_t>(m2) - b.s2);
      out[m1 * s.n2 + m2] = qmul(f(m1, m2), qconj(p));
    }
  }
  return QSignal2D(s, std::move(out));
}

inline QSpectrum2D gqft_slice(const QSignal2D& f, const Window& w, Shift b) {
  return dqft(windowed_product(f, w, b));
}

/// Calls `fn(b, slice)` for every shift in row-major order without storing the family.
template <class Fn>
void for_each_slice(const QSignal2D& f, const Window& w, Fn&& fn) {
  detail::require_same_grid(f.spec(), w.spec(), "gqft");
  for (std::size_t b1 = 0; b1 < f.n1(); ++b1)
    for (std::size_t b2 = 0; b2 < f.n2(); ++b2) {
      const Shift b{static_cast<std::int64_t>(b1), static_cast<std::int64_t>(b2)};
      fn(b, gqft_slice(f, w, b));
    }
}

/// integral integral |G(omega, b)|^2 d omega db, streamed over the shifts.
inline double gqft_energy(const QSignal2D& f, const Window& w) {
  double acc = 0.0;
  for_each_slice(f, w, [&](Shift, const QSpectrum2D& s) { acc += bin_energy(s); });
  const double cell = f.spec().cell_area();
  return acc * cell * cell;
}

class GaborTransform {
 public:
  GaborTransform(const GridSpec& grid, std::vector<QSpectrum2D> slices, double window_energy)
      : spec_b_(grid), spec_w_(grid), slices_(std::move(slices)), window_energy_(window_energy) {
    if (slices_.size() != grid.size()) throw error(errc::shape_mismatch, "slice count does not match shift grid");
    for (const auto& s : slices_) detail::require_same_grid(s.grid(), grid, "gabor slice");
  }

  /// Shift grid (identical to the signal grid).
  const GridSpec& spec_b() const { return spec_b_; }
  /// Spatial grid the frequency bins derive from.
  const GridSpec& spec_w() const { return spec_w_; }
  double window_energy() const { return window_energy_; }
  std::size_t slice_count() const { return slices_.size(); }

  const QSpectrum2D& slice(Shift b) const {
    if (b.s1 < 0 || b.s2 < 0 || static_cast<std::size_t>(b.s1) >= spec_b_.n1 ||
        static_cast<std::size_t>(b.s2) >= spec_b_.n2)
      throw error(errc::out_of_range, "shift (" + std::to_string(b.s1) + ", " + std::to_string(b.s2) +
                                          ") is outside the shift grid");
    return slices_[static_cast<std::size_t>(b.s1) * spec_b_.n2 + static_cast<std::size_t>(b.s2)];
  }
  const std::vector<QSpectrum2D>& slices() const { return slices_; }

  /// integral integral |G(omega, b)|^2 d omega db.
  double energy() const {
    double acc = 0.0;
    for (const auto& s : slices_) acc += bin_energy(s);
    const double cell = spec_b_.cell_area();
    return acc * cell * cell;
  }

 private:
  GridSpec spec_b_;
  GridSpec spec_w_;
  std::vector<QSpectrum2D> slices_;
  double window_energy_;
};

struct GqftOptions {
  std::size_t max_slices = 4096;
};

inline GaborTransform gqft_full(const QSignal2D& f, const Window& w, const GqftOptions& opt = {}) {
  if (f.size() > opt.max_slices)
    throw error(errc::budget_exceeded, "full transform needs " + std::to_string(f.size()) +
                                           " slices, budget is " + std::to_string(opt.max_slices));
  std::vector<QSpectrum2D> slices;
  slices.reserve(f.size());
  for_each_slice(f, w, [&](Shift, QSpectrum2D s) { slices.push_back(std::move(s)); });
  return GaborTransform(f.spec(), std::move(slices), w.energy());
}

/// Real-valued n1 x n2 array in row-major order.
struct Heatmap {
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  std::vector<double> values;

  double operator()(std::size_t a, std::size_t b) const { return values[a * n2 + b]; }
};

/// Energy per frequency cell, h1 h2 |D(w, b)|^2; sums to ||f conj(T_b phi)||^2.
inline Heatmap spectrogram(const QSpectrum2D& slice) {
  Heatmap h{slice.n1(), slice.n2(), {}};
  h.values.reserve(slice.size());
  const double cell = slice.grid().cell_area();
  for (const auto& q : slice.data()) h.values.push_back(qnorm_sq(q) * cell);
  return h;
}

inline Heatmap spectrogram(const GaborTransform& g, Shift b) { return spectrogram(g.slice(b)); }

/// Moves bin 0 to the centre (bin index floor(n/2)), the usual display layout.
inline Heatmap centered_layout(const Heatmap& h) {
  Heatmap out{h.n1, h.n2, std::vector<double>(h.values.size())};
  for (std::size_t a = 0; a < h.n1; ++a)
    for (std::size_t b = 0; b < h.n2; ++b)
      out.values[((a + h.n1 / 2) % h.n1) * h.n2 + (b + h.n2 / 2) % h.n2] = h(a, b);
  return out;
}

/// f[x] = 1/C_phi sum_b h1 h2 IDQFT(G(., b))[x] phi[(x - b) mod n].
inline QSignal2D reconstruct(const GaborTransform& g, const Window& w) {
  detail::require_same_grid(g.spec_b(), w.spec(), "reconstruct");
  if (!(w.energy() > 0.0)) throw error(errc::zero_window, "window has zero energy");
  const auto& s = g.spec_b();
  const auto& phi = w.samples();
  std::vector<Quaternion> acc(s.size());
  for (std::size_t b1 = 0; b1 < s.n1; ++b1) {
    for (std::size_t b2 = 0; b2 < s.n2; ++b2) {
      const Shift b{static_cast<std::int64_t>(b1), static_cast<std::int64_t>(b2)};
      const QSignal2D local = idqft(g.slice(b));
      for (std::size_t m1 = 0; m1 < s.n1; ++m1)
        for (std::size_t m2 = 0; m2 < s.n2; ++m2)
          acc[m1 * s.n2 + m2] += qmul(local(m1, m2), phi.at_wrapped(static_cast<std::int64_t>(m1) - b.s1,
                                                                    static_cast<std::int64_t>(m2) - b.s2));
    }
  }
  const double factor = s.cell_area() / w.energy();
  for (auto& q : acc) q *= factor;
  return QSignal2D(s, std::move(acc));
}

struct IdentityCheck {
  double max_deviation = 0.0;
  std::size_t points = 0;
};

/// Checks G{T_y f}(w, b) = e^{-i 2pi y1 w1 / n1} G{f}(w, b - y) e^{-j 2pi y2 w2 / n2}
/// at every (w, b). The right phase carries y2 (not x2): the factor pulled out
/// of the integral after substituting t = x - y.
inline IdentityCheck shift_covariance_check(const QSignal2D& f, const Window& w, Shift y) {
  const auto& s = f.spec();
  const QSignal2D shifted = translate_circular(f, y);
  const std::size_t y1 = wrap_index(y.s1, s.n1);
  const std::size_t y2 = wrap_index(y.s2, s.n2);
  IdentityCheck out;
  for (std::size_t b1 = 0; b1 < s.n1; ++b1) {
    for (std::size_t b2 = 0; b2 < s.n2; ++b2) {
      const Shift b{static_cast<std::int64_t>(b1), static_cast<std::int64_t>(b2)};
      const QSpectrum2D lhs = gqft_slice(shifted, w, b);
      const QSpectrum2D base = gqft_slice(f, w, Shift{b.s1 - y.s1, b.s2 - y.s2});
      for (std::size_t w1 = 0; w1 < s.n1; ++w1) {
        const Quaternion left = qexp_axis(QAxis::i, -2.0 * std::numbers::pi *
                                                        static_cast<double>((y1 * w1) % s.n1) /
                                                        static_cast<double>(s.n1));
        for (std::size_t w2 = 0; w2 < s.n2; ++w2) {
          const Quaternion right = qexp_axis(QAxis::j, -2.0 * std::numbers::pi *
                                                           static_cast<double>((y2 * w2) % s.n2) /
                                                           static_cast<double>(s.n2));
          const Quaternion rhs = qmul(qmul(left, base(w1, w2)), right);
          out.max_deviation = std::fmax(out.max_deviation, max_abs_diff(lhs(w1, w2), rhs));
          ++out.points;
        }
      }
    }
  }
  return out;
}

/// Checks G_{reflect phi}(reflect f)(w, b) = G_phi f(-w, -b) at every (w, b).
inline IdentityCheck reflection_check(const QSignal2D& f, const Window& w) {
  const auto& s = f.spec();
  const QSignal2D fr = reflect(f);
  const Window wr(w.shape(), reflect(w.samples()));
  IdentityCheck out;
  for (std::size_t b1 = 0; b1 < s.n1; ++b1) {
    for (std::size_t b2 = 0; b2 < s.n2; ++b2) {
      const Shift b{static_cast<std::int64_t>(b1), static_cast<std::int64_t>(b2)};
      const QSpectrum2D lhs = gqft_slice(fr, wr, b);
      const QSpectrum2D rhs = gqft_slice(f, w, Shift{-b.s1, -b.s2});
      for (std::size_t w1 = 0; w1 < s.n1; ++w1)
        for (std::size_t w2 = 0; w2 < s.n2; ++w2) {
          const Quaternion& r = rhs(wrap_index(-static_cast<std::int64_t>(w1), s.n1),
                                    wrap_index(-static_cast<std::int64_t>(w2), s.n2));
          out.max_deviation = std::fmax(out.max_deviation, max_abs_diff(lhs(w1, w2), r));
          ++out.points;
        }
    }
  }
  return out;
}

}  // namespace quatgabor
