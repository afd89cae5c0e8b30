#pragma once

#include <array>
#include <ostream>

#include "qsp/real.hpp"

namespace qsp {

/// 2x2 complex matrix, row-major.
struct Mat2 {
  std::array<Complex, 4> e;

  Mat2() = default;
  Mat2(Complex a, Complex b, Complex c, Complex d) : e{std::move(a), std::move(b), std::move(c), std::move(d)} {}

  static Mat2 identity() { return {Complex(1), Complex(0), Complex(0), Complex(1)}; }
  static Mat2 zero() { return {}; }
  static Mat2 pauli_x() { return {Complex(0), Complex(1), Complex(1), Complex(0)}; }
  static Mat2 pauli_y() { return {Complex(0), Complex(Real(0), Real(-1)), Complex(Real(0), Real(1)), Complex(0)}; }
  static Mat2 pauli_z() { return {Complex(1), Complex(0), Complex(0), Complex(-1)}; }

  Complex& operator()(int r, int c) { return e[static_cast<std::size_t>(2 * r + c)]; }
  const Complex& operator()(int r, int c) const { return e[static_cast<std::size_t>(2 * r + c)]; }

  Mat2& operator+=(const Mat2& o) {
    for (std::size_t i = 0; i < 4; ++i) e[i] += o.e[i];
    return *this;
  }
  Mat2& operator-=(const Mat2& o) {
    for (std::size_t i = 0; i < 4; ++i) e[i] -= o.e[i];
    return *this;
  }

  friend Mat2 operator+(Mat2 a, const Mat2& b) { return a += b; }
  friend Mat2 operator-(Mat2 a, const Mat2& b) { return a -= b; }
  friend Mat2 operator*(const Complex& s, const Mat2& m) { return {s * m.e[0], s * m.e[1], s * m.e[2], s * m.e[3]}; }
  friend Mat2 operator*(const Real& s, const Mat2& m) { return {s * m.e[0], s * m.e[1], s * m.e[2], s * m.e[3]}; }
  friend Mat2 operator*(const Mat2& a, const Mat2& b) {
    return {a.e[0] * b.e[0] + a.e[1] * b.e[2], a.e[0] * b.e[1] + a.e[1] * b.e[3],
            a.e[2] * b.e[0] + a.e[3] * b.e[2], a.e[2] * b.e[1] + a.e[3] * b.e[3]};
  }

  friend std::ostream& operator<<(std::ostream& os, const Mat2& m) {
    return os << "[[" << m.e[0] << ", " << m.e[1] << "], [" << m.e[2] << ", " << m.e[3] << "]]";
  }
};

inline Mat2 dagger(const Mat2& m) { return {conj(m.e[0]), conj(m.e[2]), conj(m.e[1]), conj(m.e[3])}; }
inline Complex trace(const Mat2& m) { return m.e[0] + m.e[3]; }
inline Complex det(const Mat2& m) { return m.e[0] * m.e[3] - m.e[1] * m.e[2]; }

/// Tr(M^dagger M)
inline Real frobenius_norm_squared(const Mat2& m) {
  return norm(m.e[0]) + norm(m.e[1]) + norm(m.e[2]) + norm(m.e[3]);
}

/// Largest singular value.
inline Real operator_norm(const Mat2& m) {
  Real f = frobenius_norm_squared(m);
  Real d = abs(det(m));
  Real disc = f * f - 4 * d * d;
  if (disc.sign() < 0) disc = 0;
  return sqrt((f + sqrt(disc)) / 2);
}

/// Matrix of the rank-one projector (I + px X + py Y + pz Z)/2.
inline Mat2 bloch_projector(const Real& px, const Real& py, const Real& pz) {
  Real hx = ldexp(px, -1);
  Real hy = ldexp(py, -1);
  return {Complex(ldexp(Real(1) + pz, -1)), Complex(hx, -hy), Complex(hx, hy), Complex(ldexp(Real(1) - pz, -1))};
}

}  // namespace qsp
