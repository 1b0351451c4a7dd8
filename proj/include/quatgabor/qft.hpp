#pragma once

// Two-sided discrete quaternion Fourier transform.
//
//   F[w1, w2] = 1/sqrt(n1 n2) sum_{m1, m2} e^{-i 2pi m1 w1 / n1} f[m1, m2] e^{-j 2pi m2 w2 / n2}
//
// The i-kernel multiplies from the left and the j-kernel from the right.
// Spectra are stored in natural DFT order (bin 0 first). The continuum
// frequency of bin w is the aliased index s(w) / (n h), with s(w) in
// [-floor(n/2), n - floor(n/2)) on centered grids and s(w) = w otherwise.
//
// With the unitary normalization, a bin value D relates to the continuum
// transform by |F(omega)| = h1 h2 sqrt(n1 n2) |D|, and the frequency cell is
// 1 / (n1 h1 n2 h2); so every frequency-domain integral is h1 h2 sum (.) |D|^2.

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "quatgabor/detail/fft.hpp"
#include "quatgabor/error.hpp"
#include "quatgabor/grid.hpp"
#include "quatgabor/quaternion.hpp"

namespace quatgabor {

enum class Normalization { unitary };

class QSpectrum2D {
 public:
  QSpectrum2D() = default;

  /// `grid` is the spatial grid the spectrum was computed from.
  QSpectrum2D(const GridSpec& grid, std::vector<Quaternion> data)
      : grid_(grid), data_(std::move(data)) {
    grid_.validate();
    if (data_.size() != grid_.size()) throw error(errc::shape_mismatch, "spectrum length does not match grid");
  }

  const GridSpec& grid() const { return grid_; }
  Normalization normalization() const { return Normalization::unitary; }
  std::size_t n1() const { return grid_.n1; }
  std::size_t n2() const { return grid_.n2; }
  std::size_t size() const { return data_.size(); }

  const Quaternion& operator()(std::size_t w1, std::size_t w2) const { return data_[w1 * grid_.n2 + w2]; }
  std::span<const Quaternion> data() const { return data_; }

  double bin_width(Axis a) const {
    return 1.0 / (static_cast<double>(grid_.extent(a)) * grid_.step(a));
  }

  std::int64_t signed_bin(Axis a, std::size_t w) const {
    const auto n = static_cast<std::int64_t>(grid_.extent(a));
    const auto iw = static_cast<std::int64_t>(w);
    if (!grid_.centered) return iw;
    const std::int64_t c = n / 2;
    return static_cast<std::int64_t>(wrap_index(iw + c, grid_.extent(a))) - c;
  }

  double frequency(Axis a, std::size_t w) const {
    return static_cast<double>(signed_bin(a, w)) * bin_width(a);
  }

 private:
  GridSpec grid_;
  std::vector<Quaternion> data_;
};

namespace detail {

inline std::vector<Quaternion> kernel_table(QAxis axis, std::size_t n, double sign) {
  std::vector<Quaternion> t(n);
  for (std::size_t m = 0; m < n; ++m)
    t[m] = qexp_axis(axis, sign * 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(n));
  return t;
}

// Direct O(N^4) evaluation of the defining double sum; `sign` is -1 forward, +1 inverse.
inline std::vector<Quaternion> dqft_direct(std::span<const Quaternion> in, const GridSpec& s, double sign) {
  const auto left = kernel_table(QAxis::i, s.n1, sign);
  const auto right = kernel_table(QAxis::j, s.n2, sign);
  const double norm = 1.0 / std::sqrt(static_cast<double>(s.size()));
  std::vector<Quaternion> out(s.size());
  for (std::size_t w1 = 0; w1 < s.n1; ++w1) {
    for (std::size_t w2 = 0; w2 < s.n2; ++w2) {
      Quaternion acc;
      for (std::size_t m1 = 0; m1 < s.n1; ++m1) {
        const Quaternion& el = left[(m1 * w1) % s.n1];
        for (std::size_t m2 = 0; m2 < s.n2; ++m2) {
          acc += qmul(qmul(el, in[m1 * s.n2 + m2]), right[(m2 * w2) % s.n2]);
        }
      }
      out[w1 * s.n2 + w2] = acc * norm;
    }
  }
  return out;
}

// Separable evaluation with two batches of complex FFTs.
//
// Axis 1 (left i-kernel): write q = c1 + c2 j with c1 = w + x i, c2 = y + z i.
//   e^{-ia} (c1 + c2 j) = (e^{-ia} c1) + (e^{-ia} c2) j, so c1 and c2 are
//   transformed as ordinary complex sequences.
// Axis 2 (right j-kernel): write q = a + i b with a = w + y j, b = x + z j.
//   (a + i b) e^{-jb'} = a e^{-jb'} + i (b e^{-jb'}), so a and b are complex
//   sequences in the (1, j) plane.
inline std::vector<Quaternion> dqft_separable(std::span<const Quaternion> in, const GridSpec& s, FftSign sign) {
  const std::size_t n1 = s.n1;
  const std::size_t n2 = s.n2;
  std::vector<Quaternion> work(in.begin(), in.end());

  // Axis 1: lines indexed by (channel, m2), samples along m1.
  std::vector<std::complex<double>> lines(2 * n1 * n2);
  for (std::size_t m2 = 0; m2 < n2; ++m2) {
    for (std::size_t m1 = 0; m1 < n1; ++m1) {
      const Quaternion& q = work[m1 * n2 + m2];
      lines[m2 * n1 + m1] = {q.w, q.x};
      lines[(n2 + m2) * n1 + m1] = {q.y, q.z};
    }
  }
  fft_lines(lines, 2 * n2, n1, sign);
  for (std::size_t m2 = 0; m2 < n2; ++m2) {
    for (std::size_t m1 = 0; m1 < n1; ++m1) {
      const auto c1 = lines[m2 * n1 + m1];
      const auto c2 = lines[(n2 + m2) * n1 + m1];
      work[m1 * n2 + m2] = {c1.real(), c1.imag(), c2.real(), c2.imag()};
    }
  }

  // Axis 2: lines indexed by (channel, w1), samples along m2.
  for (std::size_t w1 = 0; w1 < n1; ++w1) {
    for (std::size_t m2 = 0; m2 < n2; ++m2) {
      const Quaternion& q = work[w1 * n2 + m2];
      lines[w1 * n2 + m2] = {q.w, q.y};
      lines[(n1 + w1) * n2 + m2] = {q.x, q.z};
    }
  }
  fft_lines(lines, 2 * n1, n2, sign);
  const double norm = 1.0 / std::sqrt(static_cast<double>(s.size()));
  for (std::size_t w1 = 0; w1 < n1; ++w1) {
    for (std::size_t m2 = 0; m2 < n2; ++m2) {
      const auto a = lines[w1 * n2 + m2];
      const auto b = lines[(n1 + w1) * n2 + m2];
      work[w1 * n2 + m2] = Quaternion{a.real(), b.real(), a.imag(), b.imag()} * norm;
    }
  }
  return work;
}

}  // namespace detail

/// Reference transform straight from the definition. O(N^4); for testing and small grids.
inline QSpectrum2D dqft_brute(const QSignal2D& f) {
  return QSpectrum2D(f.spec(), detail::dqft_direct(f.data(), f.spec(), -1.0));
}

inline QSpectrum2D dqft_fast(const QSignal2D& f) {
  return QSpectrum2D(f.spec(), detail::dqft_separable(f.data(), f.spec(), detail::FftSign::forward));
}

inline QSpectrum2D dqft(const QSignal2D& f) { return dqft_fast(f); }

inline QSignal2D idqft(const QSpectrum2D& F) {
  return QSignal2D(F.grid(), detail::dqft_separable(F.data(), F.grid(), detail::FftSign::backward));
}

/// Inverse from the definition, O(N^4).
inline QSignal2D idqft_brute(const QSpectrum2D& F) {
  return QSignal2D(F.grid(), detail::dqft_direct(F.data(), F.grid(), +1.0));
}

/// Raw bin energy sum |D|^2; equals the sample sum |f|^2 by unitarity.
inline double bin_energy(const QSpectrum2D& F) {
  double acc = 0.0;
  for (const auto& q : F.data()) acc += qnorm_sq(q);
  return acc;
}

/// Continuum energy: integral |F(omega)|^2 d omega = h1 h2 sum |D|^2.
inline double spectrum_energy(const QSpectrum2D& F) { return bin_energy(F) * F.grid().cell_area(); }

/// integral omega_k^2 |F(omega)|^2 d omega.
inline double moment2_frequency(const QSpectrum2D& F, Axis k) {
  double acc = 0.0;
  for (std::size_t w1 = 0; w1 < F.n1(); ++w1) {
    for (std::size_t w2 = 0; w2 < F.n2(); ++w2) {
      const double om = F.frequency(k, k == Axis::one ? w1 : w2);
      acc += om * om * qnorm_sq(F(w1, w2));
    }
  }
  return acc * F.grid().cell_area();
}

/// integral ln|omega| |F(omega)|^2 d omega; the zero-frequency bin contributes nothing.
inline double log_moment_frequency(const QSpectrum2D& F) {
  double acc = 0.0;
  for (std::size_t w1 = 0; w1 < F.n1(); ++w1) {
    const double o1 = F.frequency(Axis::one, w1);
    for (std::size_t w2 = 0; w2 < F.n2(); ++w2) {
      const double r = std::hypot(o1, F.frequency(Axis::two, w2));
      if (r == 0.0) continue;
      acc += std::log(r) * qnorm_sq(F(w1, w2));
    }
  }
  return acc * F.grid().cell_area();
}

/// Bin (w1, w2) expressed as the continuum transform value at its frequency:
/// h1 h2 sqrt(n1 n2) e^{i 2pi c1 w1 / n1} D e^{j 2pi c2 w2 / n2}, where c_k is the
/// index of the spatial origin. The phases undo the offset of centered grids.
inline Quaternion continuum_value(const QSpectrum2D& F, std::size_t w1, std::size_t w2) {
  const auto& g = F.grid();
  const auto c1 = static_cast<std::size_t>(g.origin_index(Axis::one));
  const auto c2 = static_cast<std::size_t>(g.origin_index(Axis::two));
  const double two_pi = 2.0 * std::numbers::pi;
  const Quaternion left =
      qexp_axis(QAxis::i, two_pi * static_cast<double>((c1 * w1) % g.n1) / static_cast<double>(g.n1));
  const Quaternion right =
      qexp_axis(QAxis::j, two_pi * static_cast<double>((c2 * w2) % g.n2) / static_cast<double>(g.n2));
  const double scale = g.cell_area() * std::sqrt(static_cast<double>(g.size()));
  return qmul(qmul(left, F(w1, w2)), right) * scale;
}

inline double max_abs_diff(const QSpectrum2D& a, const QSpectrum2D& b) {
  detail::require_same_grid(a.grid(), b.grid(), "max_abs_diff");
  double m = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) m = std::fmax(m, max_abs_diff(a.data()[n], b.data()[n]));
  return m;
}

}  // namespace quatgabor
