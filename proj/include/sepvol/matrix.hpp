// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <utility>

#include "sepvol/field.hpp"

namespace sepvol {

/// 2x2 matrix over R or C, row-major.
struct Mat2 {
  std::array<Cplx, 4> e{};

  static constexpr Mat2 identity() noexcept { return {{Cplx{1}, Cplx{}, Cplx{}, Cplx{1}}}; }
  static constexpr Mat2 diag(Cplx a, Cplx b) noexcept { return {{a, Cplx{}, Cplx{}, b}}; }
  static constexpr Mat2 of(Cplx a, Cplx b, Cplx c, Cplx d) noexcept { return {{a, b, c, d}}; }

  constexpr Cplx& operator()(int r, int c) noexcept { return e[static_cast<std::size_t>(2 * r + c)]; }
  constexpr Cplx operator()(int r, int c) const noexcept {
    return e[static_cast<std::size_t>(2 * r + c)];
  }

  friend constexpr bool operator==(const Mat2&, const Mat2&) = default;
};

Mat2 operator+(const Mat2& a, const Mat2& b) noexcept;
Mat2 operator-(const Mat2& a, const Mat2& b) noexcept;
Mat2 operator*(const Mat2& a, const Mat2& b) noexcept;
Mat2 operator*(double s, const Mat2& a) noexcept;

Mat2 adjoint(const Mat2& a) noexcept;
Cplx det(const Mat2& a) noexcept;
Cplx trace(const Mat2& a) noexcept;
/// Squared Hilbert-Schmidt norm.
double hs_norm2(const Mat2& a) noexcept;
Mat2 inverse(const Mat2& a);

/// Self-adjoint 2x2 matrix [[a, b], [conj(b), d]]. Symmetric by construction.
class Herm2 {
 public:
  constexpr Herm2() = default;
  constexpr Herm2(double a, double d, Cplx b = {}) : a_(a), d_(d), b_(b) {}

  /// Takes the upper triangle of m; the lower triangle is ignored.
  static Herm2 from_upper(const Mat2& m) noexcept { return {m(0, 0).re, m(1, 1).re, m(0, 1)}; }
  static constexpr Herm2 identity() noexcept { return {1.0, 1.0}; }

  [[nodiscard]] constexpr double a() const noexcept { return a_; }
  [[nodiscard]] constexpr double d() const noexcept { return d_; }
  [[nodiscard]] constexpr Cplx b() const noexcept { return b_; }

  [[nodiscard]] Mat2 mat() const noexcept { return Mat2::of(a_, b_, conj(b_), d_); }
  [[nodiscard]] constexpr double trace() const noexcept { return a_ + d_; }
  [[nodiscard]] constexpr double det() const noexcept { return a_ * d_ - norm2(b_); }
  /// (largest, smallest)
  [[nodiscard]] std::pair<double, double> eigenvalues() const noexcept;
  /// Strict positive definiteness, no tolerance band.
  [[nodiscard]] bool positive_definite() const noexcept { return a_ > 0.0 && det() > 0.0; }

  friend constexpr bool operator==(const Herm2&, const Herm2&) = default;

 private:
  double a_ = 0.0;
  double d_ = 0.0;
  Cplx b_{};
};

Herm2 operator+(const Herm2& x, const Herm2& y) noexcept;
Herm2 operator-(const Herm2& x, const Herm2& y) noexcept;
Herm2 operator*(double s, const Herm2& x) noexcept;
/// m h m*
Herm2 congruence(const Mat2& m, const Herm2& h) noexcept;
Herm2 inverse(const Herm2& h);

/// Square root of a positive definite matrix; throws NotPositive otherwise.
Herm2 herm_sqrt(const Herm2& h);
/// Inverse square root of a positive definite matrix; throws NotPositive otherwise.
Herm2 herm_inv_sqrt(const Herm2& h);

struct SingularValues {
  double hi = 0.0;
  double lo = 0.0;
};

/// Singular values from the determinant and Hilbert-Schmidt norm:
/// sigma = sqrt|det| * exp(+-acosh(|A|^2 / (2|det|)) / 2).
SingularValues singular_values(const Mat2& a) noexcept;
double op_norm(const Mat2& a) noexcept;
/// sigma_lo / sigma_hi; throws SingularInput for det == 0.
double sv_ratio(const Mat2& a);

/// 4x4 self-adjoint matrix, row-major.
struct Herm4 {
  std::array<Cplx, 16> e{};

  constexpr Cplx& operator()(int r, int c) noexcept { return e[static_cast<std::size_t>(4 * r + c)]; }
  constexpr Cplx operator()(int r, int c) const noexcept {
    return e[static_cast<std::size_t>(4 * r + c)];
  }
  static Herm4 identity() noexcept;
};

/// Block matrix [[d1, c], [c*, d2]].
Herm4 assemble(const Herm2& d1, const Herm2& d2, const Mat2& c) noexcept;
/// Transpose on the second tensor factor (each 2x2 block transposed).
Herm4 partial_transpose(const Herm4& m) noexcept;
double hs_norm(const Herm4& m) noexcept;

/// Eigenvalues of a self-adjoint 4x4 matrix in ascending order by cyclic
/// Jacobi sweeps (complex input goes through the 8x8 real embedding).
/// Throws NoConvergence when the sweep budget runs out.
std::array<double, 4> eig4_sym(const Herm4& m);

inline constexpr int kJacobiSweepBudget = 64;

/// D > 0 for D = [[d1, c], [c*, d2]], decided through d2 > 0 and the Schur
/// complement d1 - c d2^{-1} c* > 0. Throws SingularBlock when det(d2) == 0.
bool schur_positive(const Herm2& d1, const Herm2& d2, const Mat2& c);

}  // namespace sepvol
