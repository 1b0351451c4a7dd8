#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace quatgabor {

enum class errc {
  invalid_argument,
  shape_mismatch,
  non_finite,
  zero_window,
  zero_signal,
  budget_exceeded,
  boundary_mass,
  out_of_range,
  domain_error,
  bad_magic,
  bad_version,
  truncated_payload,
  unsupported_format,
  io,
};

constexpr std::string_view to_string(errc code) noexcept {
  switch (code) {
    case errc::invalid_argument: return "InvalidArgument";
    case errc::shape_mismatch: return "ShapeMismatch";
    case errc::non_finite: return "NonFinite";
    case errc::zero_window: return "ZeroWindow";
    case errc::zero_signal: return "ZeroSignal";
    case errc::budget_exceeded: return "BudgetExceeded";
    case errc::boundary_mass: return "BoundaryMass";
    case errc::out_of_range: return "OutOfRange";
    case errc::domain_error: return "DomainError";
    case errc::bad_magic: return "BadMagic";
    case errc::bad_version: return "BadVersion";
    case errc::truncated_payload: return "TruncatedPayload";
    case errc::unsupported_format: return "UnsupportedFormat";
    case errc::io: return "IoError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the `errc` codes.
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

}  // namespace quatgabor
