// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <string_view>

namespace sepvol {

enum class Field { Real, Complex };

/// Dimension of the scalar field over the reals: 1 for Real, 2 for Complex.
constexpr int real_dim(Field f) noexcept { return f == Field::Real ? 1 : 2; }

constexpr std::string_view to_string(Field f) noexcept {
  return f == Field::Real ? "real" : "complex";
}

Field parse_field(std::string_view name);

/// Complex scalar as a pair of reals. Real-field matrices keep im == 0.
struct Cplx {
  double re = 0.0;
  double im = 0.0;

  constexpr Cplx() = default;
  constexpr Cplx(double r) : re(r) {}  // NOLINT(google-explicit-constructor)
  constexpr Cplx(double r, double i) : re(r), im(i) {}

  constexpr Cplx& operator+=(Cplx o) noexcept {
    re += o.re;
    im += o.im;
    return *this;
  }
  constexpr Cplx& operator-=(Cplx o) noexcept {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  constexpr Cplx& operator*=(double s) noexcept {
    re *= s;
    im *= s;
    return *this;
  }

  friend constexpr bool operator==(Cplx, Cplx) = default;
};

constexpr Cplx operator+(Cplx a, Cplx b) noexcept { return {a.re + b.re, a.im + b.im}; }
constexpr Cplx operator-(Cplx a, Cplx b) noexcept { return {a.re - b.re, a.im - b.im}; }
constexpr Cplx operator-(Cplx a) noexcept { return {-a.re, -a.im}; }
constexpr Cplx operator*(Cplx a, Cplx b) noexcept {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
constexpr Cplx operator*(double s, Cplx a) noexcept { return {s * a.re, s * a.im}; }
constexpr Cplx operator*(Cplx a, double s) noexcept { return {s * a.re, s * a.im}; }
constexpr Cplx operator/(Cplx a, double s) noexcept { return {a.re / s, a.im / s}; }

constexpr Cplx conj(Cplx a) noexcept { return {a.re, -a.im}; }
/// |a|^2
constexpr double norm2(Cplx a) noexcept { return a.re * a.re + a.im * a.im; }
inline double abs(Cplx a) noexcept { return std::hypot(a.re, a.im); }

}  // namespace sepvol
