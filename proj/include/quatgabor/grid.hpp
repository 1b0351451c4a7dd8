#pragma once

// Sampled quaternion-valued signals on a uniform 2D grid.
//
// A grid index m along axis k maps to the continuum coordinate
//   x_k(m) = (m - floor(n_k / 2)) * h_k   (centered grids)
//   x_k(m) = m * h_k                      (uncentered grids, domain [0, n_k h_k))
// and every integral is a Riemann sum weighted by the cell area h1 * h2.
// Translation, reflection and differences use circular (periodic) indexing.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "quatgabor/error.hpp"
#include "quatgabor/quaternion.hpp"

namespace quatgabor {

enum class Axis { one = 1, two = 2 };

inline Axis axis_from_int(int k) {
  if (k == 1) return Axis::one;
  if (k == 2) return Axis::two;
  throw error(errc::invalid_argument, "axis index must be 1 or 2, got " + std::to_string(k));
}

/// Integer shift on the sample lattice; components are reduced modulo the grid size.
struct Shift {
  std::int64_t s1 = 0;
  std::int64_t s2 = 0;
  constexpr bool operator==(const Shift&) const = default;
};

constexpr std::size_t wrap_index(std::int64_t m, std::size_t n) {
  const auto nn = static_cast<std::int64_t>(n);
  const std::int64_t r = m % nn;
  return static_cast<std::size_t>(r < 0 ? r + nn : r);
}

struct GridSpec {
  std::size_t n1 = 1;
  std::size_t n2 = 1;
  double h1 = 1.0;
  double h2 = 1.0;
  bool centered = true;

  GridSpec() = default;
  GridSpec(std::size_t n1_, std::size_t n2_, double h1_, double h2_, bool centered_)
      : n1(n1_), n2(n2_), h1(h1_), h2(h2_), centered(centered_) {
    validate();
  }

  /// Centered n x n grid covering [-half_width, half_width) on both axes.
  static GridSpec square(std::size_t n, double half_width) {
    return GridSpec(n, n, 2.0 * half_width / static_cast<double>(n),
                    2.0 * half_width / static_cast<double>(n), true);
  }

  void validate() const {
    if (n1 < 1 || n2 < 1) throw error(errc::invalid_argument, "grid sizes must be positive");
    if (!(h1 > 0.0) || !(h2 > 0.0) || !std::isfinite(h1) || !std::isfinite(h2))
      throw error(errc::invalid_argument, "grid steps must be finite and positive");
  }

  bool operator==(const GridSpec&) const = default;

  std::size_t size() const { return n1 * n2; }
  std::size_t extent(Axis a) const { return a == Axis::one ? n1 : n2; }
  double step(Axis a) const { return a == Axis::one ? h1 : h2; }
  double cell_area() const { return h1 * h2; }

  std::int64_t origin_index(Axis a) const {
    return centered ? static_cast<std::int64_t>(extent(a) / 2) : 0;
  }

  double coordinate(Axis a, std::size_t m) const {
    return static_cast<double>(static_cast<std::int64_t>(m) - origin_index(a)) * step(a);
  }
};

class QSignal2D {
 public:
  QSignal2D() = default;

  /// Zero signal on `spec`.
  explicit QSignal2D(const GridSpec& spec) : spec_(spec), data_(spec.size()) { spec_.validate(); }

  QSignal2D(const GridSpec& spec, std::vector<Quaternion> data)
      : spec_(spec), data_(std::move(data)) {
    spec_.validate();
    if (data_.size() != spec_.size())
      throw error(errc::shape_mismatch, "data length " + std::to_string(data_.size()) +
                                            " does not match grid " + std::to_string(spec_.n1) +
                                            "x" + std::to_string(spec_.n2));
    for (const auto& q : data_)
      if (!q.is_finite()) throw error(errc::non_finite, "signal sample is not finite");
  }

  const GridSpec& spec() const { return spec_; }
  std::size_t n1() const { return spec_.n1; }
  std::size_t n2() const { return spec_.n2; }
  std::size_t size() const { return data_.size(); }

  const Quaternion& operator()(std::size_t m1, std::size_t m2) const { return data_[m1 * spec_.n2 + m2]; }
  const Quaternion& at_wrapped(std::int64_t m1, std::int64_t m2) const {
    return (*this)(wrap_index(m1, spec_.n1), wrap_index(m2, spec_.n2));
  }

  std::span<const Quaternion> data() const { return data_; }

 private:
  GridSpec spec_;
  std::vector<Quaternion> data_;
};

namespace detail {

inline void require_same_grid(const GridSpec& a, const GridSpec& b, const char* what) {
  if (!(a == b)) throw error(errc::shape_mismatch, std::string(what) + ": grid specs differ");
}

}  // namespace detail

/// Samples `fn(x1, x2)` at every grid coordinate.
template <class Fn>
QSignal2D sample(Fn&& fn, const GridSpec& spec) {
  spec.validate();
  std::vector<Quaternion> data;
  data.reserve(spec.size());
  for (std::size_t m1 = 0; m1 < spec.n1; ++m1) {
    const double x1 = spec.coordinate(Axis::one, m1);
    for (std::size_t m2 = 0; m2 < spec.n2; ++m2) {
      const Quaternion q = fn(x1, spec.coordinate(Axis::two, m2));
      if (!q.is_finite())
        throw error(errc::non_finite, "sampled function is not finite at (" + std::to_string(x1) +
                                          ", " + std::to_string(spec.coordinate(Axis::two, m2)) + ")");
      data.push_back(q);
    }
  }
  return QSignal2D(spec, std::move(data));
}

/// Applies `fn` to every sample, keeping the grid.
template <class Fn>
QSignal2D map_samples(const QSignal2D& f, Fn&& fn) {
  std::vector<Quaternion> out;
  out.reserve(f.size());
  for (const auto& q : f.data()) out.push_back(fn(q));
  return QSignal2D(f.spec(), std::move(out));
}

inline QSignal2D scale(const QSignal2D& f, double c) {
  return map_samples(f, [c](const Quaternion& q) { return q * c; });
}

inline QSignal2D add(const QSignal2D& f, const QSignal2D& g) {
  detail::require_same_grid(f.spec(), g.spec(), "add");
  std::vector<Quaternion> out(f.size());
  for (std::size_t n = 0; n < out.size(); ++n) out[n] = f.data()[n] + g.data()[n];
  return QSignal2D(f.spec(), std::move(out));
}

/// <f, g> = h1 h2 sum f[m] conj(g[m]).
inline Quaternion inner_product(const QSignal2D& f, const QSignal2D& g) {
  detail::require_same_grid(f.spec(), g.spec(), "inner_product");
  Quaternion acc;
  for (std::size_t n = 0; n < f.size(); ++n) acc += qmul(f.data()[n], qconj(g.data()[n]));
  return acc * f.spec().cell_area();
}

inline double l2_norm_sq(const QSignal2D& f) {
  double acc = 0.0;
  for (const auto& q : f.data()) acc += qnorm_sq(q);
  return acc * f.spec().cell_area();
}

/// h1 h2 sum x_k(m)^2 |f[m]|^2.
inline double moment2(const QSignal2D& f, Axis k) {
  const auto& s = f.spec();
  double acc = 0.0;
  for (std::size_t m1 = 0; m1 < s.n1; ++m1) {
    for (std::size_t m2 = 0; m2 < s.n2; ++m2) {
      const double xk = s.coordinate(k, k == Axis::one ? m1 : m2);
      acc += xk * xk * qnorm_sq(f(m1, m2));
    }
  }
  return acc * s.cell_area();
}

/// h1 h2 sum ln|x(m)| |f[m]|^2; the sample at the origin contributes nothing.
inline double log_moment(const QSignal2D& f) {
  const auto& s = f.spec();
  double acc = 0.0;
  for (std::size_t m1 = 0; m1 < s.n1; ++m1) {
    const double x1 = s.coordinate(Axis::one, m1);
    for (std::size_t m2 = 0; m2 < s.n2; ++m2) {
      const double x2 = s.coordinate(Axis::two, m2);
      const double r = std::hypot(x1, x2);
      if (r == 0.0) continue;
      acc += std::log(r) * qnorm_sq(f(m1, m2));
    }
  }
  return acc * s.cell_area();
}

/// out[m] = f[(m - y) mod n].
inline QSignal2D translate_circular(const QSignal2D& f, Shift y) {
  const auto& s = f.spec();
  std::vector<Quaternion> out(f.size());
  for (std::size_t m1 = 0; m1 < s.n1; ++m1)
    for (std::size_t m2 = 0; m2 < s.n2; ++m2)
      out[m1 * s.n2 + m2] = f.at_wrapped(static_cast<std::int64_t>(m1) - y.s1,
                                         static_cast<std::int64_t>(m2) - y.s2);
  return QSignal2D(s, std::move(out));
}

/// out[m] = f[(-m) mod n].
inline QSignal2D reflect(const QSignal2D& f) {
  const auto& s = f.spec();
  std::vector<Quaternion> out(f.size());
  for (std::size_t m1 = 0; m1 < s.n1; ++m1)
    for (std::size_t m2 = 0; m2 < s.n2; ++m2)
      out[m1 * s.n2 + m2] = f.at_wrapped(-static_cast<std::int64_t>(m1), -static_cast<std::int64_t>(m2));
  return QSignal2D(s, std::move(out));
}

/// Periodic central difference (f[m + e_k] - f[m - e_k]) / (2 h_k).
inline QSignal2D partial_diff_central(const QSignal2D& f, Axis k) {
  const auto& s = f.spec();
  if (s.extent(k) < 3)
    throw error(errc::invalid_argument, "central difference needs at least 3 samples along the axis");
  const double inv = 1.0 / (2.0 * s.step(k));
  const std::int64_t d1 = k == Axis::one ? 1 : 0;
  const std::int64_t d2 = k == Axis::two ? 1 : 0;
  std::vector<Quaternion> out(f.size());
  for (std::size_t m1 = 0; m1 < s.n1; ++m1) {
    for (std::size_t m2 = 0; m2 < s.n2; ++m2) {
      const auto i1 = static_cast<std::int64_t>(m1);
      const auto i2 = static_cast<std::int64_t>(m2);
      out[m1 * s.n2 + m2] = (f.at_wrapped(i1 + d1, i2 + d2) - f.at_wrapped(i1 - d1, i2 - d2)) * inv;
    }
  }
  return QSignal2D(s, std::move(out));
}

inline double max_abs_diff(const QSignal2D& f, const QSignal2D& g) {
  detail::require_same_grid(f.spec(), g.spec(), "max_abs_diff");
  double m = 0.0;
  for (std::size_t n = 0; n < f.size(); ++n) m = std::fmax(m, max_abs_diff(f.data()[n], g.data()[n]));
  return m;
}

/// Largest sample modulus on the outer frame of the grid.
inline double boundary_peak(const QSignal2D& f) {
  const auto& s = f.spec();
  double m = 0.0;
  for (std::size_t m1 = 0; m1 < s.n1; ++m1) {
    for (std::size_t m2 = 0; m2 < s.n2; ++m2) {
      if (m1 == 0 || m2 == 0 || m1 + 1 == s.n1 || m2 + 1 == s.n2) m = std::fmax(m, qnorm(f(m1, m2)));
    }
  }
  return m;
}

inline double peak(const QSignal2D& f) {
  double m = 0.0;
  for (const auto& q : f.data()) m = std::fmax(m, qnorm(q));
  return m;
}

}  // namespace quatgabor
