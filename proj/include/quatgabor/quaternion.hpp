#pragma once

// Quaternion scalar arithmetic.
//
//   q = w + x i + y j + z k,   i² = j² = k² = ijk = -1
//   ij = -ji = k,  jk = -kj = i,  ki = -ik = j
//
// Multiplication is not commutative; every product in this library is
// written in the order the transform definitions require.

#include <cmath>
#include <complex>
#include <ostream>

namespace quatgabor {

struct Quaternion {
  double w = 0.0;  // scalar part
  double x = 0.0;  // i
  double y = 0.0;  // j
  double z = 0.0;  // k

  constexpr Quaternion() = default;
  constexpr Quaternion(double w_, double x_ = 0.0, double y_ = 0.0, double z_ = 0.0)
      : w(w_), x(x_), y(y_), z(z_) {}

  static constexpr Quaternion one() { return {1.0, 0.0, 0.0, 0.0}; }
  static constexpr Quaternion i() { return {0.0, 1.0, 0.0, 0.0}; }
  static constexpr Quaternion j() { return {0.0, 0.0, 1.0, 0.0}; }
  static constexpr Quaternion k() { return {0.0, 0.0, 0.0, 1.0}; }

  constexpr bool operator==(const Quaternion&) const = default;

  constexpr Quaternion& operator+=(const Quaternion& o) {
    w += o.w; x += o.x; y += o.y; z += o.z;
    return *this;
  }
  constexpr Quaternion& operator-=(const Quaternion& o) {
    w -= o.w; x -= o.x; y -= o.y; z -= o.z;
    return *this;
  }
  constexpr Quaternion& operator*=(double s) {
    w *= s; x *= s; y *= s; z *= s;
    return *this;
  }

  bool is_finite() const {
    return std::isfinite(w) && std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
  }
};

constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
constexpr Quaternion operator-(const Quaternion& q) { return {-q.w, -q.x, -q.y, -q.z}; }
constexpr Quaternion operator*(Quaternion q, double s) { return q *= s; }
constexpr Quaternion operator*(double s, Quaternion q) { return q *= s; }

/// Hamilton product.
constexpr Quaternion qmul(const Quaternion& p, const Quaternion& q) {
  return {p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
          p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
          p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
          p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w};
}

constexpr Quaternion operator*(const Quaternion& p, const Quaternion& q) { return qmul(p, q); }

constexpr Quaternion qconj(const Quaternion& q) { return {q.w, -q.x, -q.y, -q.z}; }

constexpr double qnorm_sq(const Quaternion& q) {
  return q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z;
}

inline double qnorm(const Quaternion& q) { return std::sqrt(qnorm_sq(q)); }

/// Largest absolute component difference; the tolerance metric used throughout the tests.
inline double max_abs_diff(const Quaternion& a, const Quaternion& b) {
  return std::fmax(std::fmax(std::fabs(a.w - b.w), std::fabs(a.x - b.x)),
                   std::fmax(std::fabs(a.y - b.y), std::fabs(a.z - b.z)));
}

/// Imaginary unit an exponential kernel is built on.
enum class QAxis { i, j };

/// cos(theta) + axis * sin(theta).
inline Quaternion qexp_axis(QAxis axis, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return axis == QAxis::i ? Quaternion{c, s, 0.0, 0.0} : Quaternion{c, 0.0, s, 0.0};
}

/// Symplectic pair: q = c1 + c2 * j with c1, c2 in the (1, i) plane.
struct ComplexPair {
  std::complex<double> c1;
  std::complex<double> c2;
};

constexpr ComplexPair split(const Quaternion& q) {
  return {{q.w, q.x}, {q.y, q.z}};
}

constexpr Quaternion join(const ComplexPair& p) {
  // c2 * j = (y + z i) j = y j + z k
  return {p.c1.real(), p.c1.imag(), p.c2.real(), p.c2.imag()};
}

inline std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
  return os << '(' << q.w << ", " << q.x << "i, " << q.y << "j, " << q.z << "k)";
}

}  // namespace quatgabor
