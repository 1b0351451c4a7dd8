#pragma once

// Batched 1D complex FFTs over contiguous lines, backed by FFTW3.
// Plans are created with FFTW_ESTIMATE (deterministic, no timing runs); the
// FFTW planner is not re-entrant, so plan creation and destruction are
// serialized. Execution is unnormalized.

#include <fftw3.h>

#include <complex>
#include <cstddef>
#include <mutex>
#include <vector>

namespace quatgabor::detail {

enum class FftSign { forward = FFTW_FORWARD, backward = FFTW_BACKWARD };

inline std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

/// Transforms `lines` consecutive sequences of length `len` stored back to back in `data`.
inline void fft_lines(std::vector<std::complex<double>>& data, std::size_t lines, std::size_t len,
                      FftSign sign) {
  if (len <= 1 || lines == 0) return;
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  const int n = static_cast<int>(len);
  fftw_plan plan;
  {
    std::lock_guard lock(fftw_planner_mutex());
    plan = fftw_plan_many_dft(1, &n, static_cast<int>(lines), buf, nullptr, 1, n, buf, nullptr, 1, n,
                              static_cast<int>(sign), FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard lock(fftw_planner_mutex());
  fftw_destroy_plan(plan);
}

}  // namespace quatgabor::detail
