#pragma once

// Small fixed-size helpers for the planar (n = 2) setting.

#include <array>
#include <cmath>
#include <complex>

namespace layerlab {

using Complex = std::complex<double>;
using Vec2 = std::array<double, 2>;
using CVec2 = std::array<Complex, 2>;

struct Mat2 {
  // Row-major entries m[r][c].
  std::array<std::array<double, 2>, 2> m{};

  static Mat2 of(double m00, double m01, double m10, double m11) {
    Mat2 r;
    r.m[0][0] = m00;
    r.m[0][1] = m01;
    r.m[1][0] = m10;
    r.m[1][1] = m11;
    return r;
  }
  static Mat2 identity() { return of(1.0, 0.0, 0.0, 1.0); }
  static Mat2 diag(double d0, double d1) { return of(d0, 0.0, 0.0, d1); }

  double det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

  Mat2 inverse() const {
    const double d = det();
    return of(m[1][1] / d, -m[0][1] / d, -m[1][0] / d, m[0][0] / d);
  }

  Vec2 apply(const Vec2& v) const {
    return {m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]};
  }

  CVec2 apply(const CVec2& v) const {
    return {m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]};
  }
};

inline double dot(const Vec2& a, const Vec2& b) { return a[0] * b[0] + a[1] * b[1]; }

inline Complex dot(const CVec2& a, const Vec2& b) { return a[0] * b[0] + a[1] * b[1]; }

inline Complex dot(const Vec2& a, const CVec2& b) { return a[0] * b[0] + a[1] * b[1]; }

inline double cross(const Vec2& a, const Vec2& b) { return a[0] * b[1] - a[1] * b[0]; }

inline double norm(const Vec2& a) { return std::hypot(a[0], a[1]); }

inline Vec2 operator+(const Vec2& a, const Vec2& b) { return {a[0] + b[0], a[1] + b[1]}; }

inline Vec2 operator-(const Vec2& a, const Vec2& b) { return {a[0] - b[0], a[1] - b[1]}; }

inline Vec2 operator*(double c, const Vec2& a) { return {c * a[0], c * a[1]}; }

// Quadratic form v^t M w.
inline double quad_form(const Vec2& v, const Mat2& M, const Vec2& w) {
  return dot(v, M.apply(w));
}

} // namespace layerlab
