// SPDX-License-Identifier: Apache-2.0
#include "sepvol/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sepvol/error.hpp"

namespace sepvol {

Field parse_field(std::string_view name) {
  if (name == "real") return Field::Real;
  if (name == "complex") return Field::Complex;
  throw DomainError("unknown field '" + std::string(name) + "'");
}

Mat2 operator+(const Mat2& a, const Mat2& b) noexcept {
  Mat2 r;
  for (std::size_t i = 0; i < 4; ++i) r.e[i] = a.e[i] + b.e[i];
  return r;
}

Mat2 operator-(const Mat2& a, const Mat2& b) noexcept {
  Mat2 r;
  for (std::size_t i = 0; i < 4; ++i) r.e[i] = a.e[i] - b.e[i];
  return r;
}

Mat2 operator*(const Mat2& a, const Mat2& b) noexcept {
  return Mat2::of(a(0, 0) * b(0, 0) + a(0, 1) * b(1, 0), a(0, 0) * b(0, 1) + a(0, 1) * b(1, 1),
                  a(1, 0) * b(0, 0) + a(1, 1) * b(1, 0), a(1, 0) * b(0, 1) + a(1, 1) * b(1, 1));
}

Mat2 operator*(double s, const Mat2& a) noexcept {
  Mat2 r;
  for (std::size_t i = 0; i < 4; ++i) r.e[i] = s * a.e[i];
  return r;
}

Mat2 adjoint(const Mat2& a) noexcept {
  return Mat2::of(conj(a(0, 0)), conj(a(1, 0)), conj(a(0, 1)), conj(a(1, 1)));
}

Cplx det(const Mat2& a) noexcept { return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0); }

Cplx trace(const Mat2& a) noexcept { return a(0, 0) + a(1, 1); }

double hs_norm2(const Mat2& a) noexcept {
  double s = 0.0;
  for (const auto& z : a.e) s += norm2(z);
  return s;
}

Mat2 inverse(const Mat2& a) {
  const Cplx dt = det(a);
  const double n = norm2(dt);
  if (n == 0.0) throw SingularInput("inverse of a singular 2x2 matrix");
  const Cplx inv = conj(dt) / n;
  return Mat2::of(a(1, 1) * inv, -a(0, 1) * inv, -a(1, 0) * inv, a(0, 0) * inv);
}

std::pair<double, double> Herm2::eigenvalues() const noexcept {
  const double mean = 0.5 * (a_ + d_);
  const double radius = std::hypot(0.5 * (a_ - d_), abs(b_));
  return {mean + radius, mean - radius};
}

Herm2 operator+(const Herm2& x, const Herm2& y) noexcept {
  return {x.a() + y.a(), x.d() + y.d(), x.b() + y.b()};
}

Herm2 operator-(const Herm2& x, const Herm2& y) noexcept {
  return {x.a() - y.a(), x.d() - y.d(), x.b() - y.b()};
}

Herm2 operator*(double s, const Herm2& x) noexcept { return {s * x.a(), s * x.d(), s * x.b()}; }

Herm2 congruence(const Mat2& m, const Herm2& h) noexcept {
  return Herm2::from_upper(m * h.mat() * adjoint(m));
}

Herm2 inverse(const Herm2& h) {
  const double dt = h.det();
  if (dt == 0.0) throw SingularInput("inverse of a singular self-adjoint matrix");
  return {h.d() / dt, h.a() / dt, -h.b() / dt};
}

namespace {

void require_positive(const Herm2& h, const char* what) {
  const auto [hi, lo] = h.eigenvalues();
  if (!(lo > 0.0) || !(hi > 0.0)) {
    throw NotPositive(std::string(what) + ": matrix has a non-positive eigenvalue (" +
                      std::to_string(lo) + ")");
  }
}

}  // namespace

Herm2 herm_sqrt(const Herm2& h) {
  require_positive(h, "herm_sqrt");
  // For 2x2 positive h: sqrt(h) = (h + sqrt(det h) I) / sqrt(tr h + 2 sqrt(det h)).
  const auto [hi, lo] = h.eigenvalues();
  const double root_det = std::sqrt(hi) * std::sqrt(lo);
  const double scale = 1.0 / (std::sqrt(hi) + std::sqrt(lo));
  return {(h.a() + root_det) * scale, (h.d() + root_det) * scale, h.b() * scale};
}

Herm2 herm_inv_sqrt(const Herm2& h) {
  require_positive(h, "herm_inv_sqrt");
  const Herm2 r = herm_sqrt(h);
  const auto [hi, lo] = h.eigenvalues();
  const double det_r = std::sqrt(hi) * std::sqrt(lo);
  return {r.d() / det_r, r.a() / det_r, -r.b() / det_r};
}

SingularValues singular_values(const Mat2& a) noexcept {
  const double n = hs_norm2(a);
  const double adet = abs(det(a));
  if (adet == 0.0) return {std::sqrt(n), 0.0};
  const double h = n / (2.0 * adet);
  if (!std::isfinite(h)) return {std::sqrt(n), 0.0};
  // exp(acosh(h)) = h + sqrt(h^2 - 1); rounding can put h a hair below 1.
  const double root = h > 1.0 ? std::sqrt((h - 1.0) * (h + 1.0)) : 0.0;
  const double hi = std::sqrt(adet) * std::sqrt(h + root);
  return {hi, adet / hi};
}

double op_norm(const Mat2& a) noexcept { return singular_values(a).hi; }

double sv_ratio(const Mat2& a) {
  const double adet = abs(det(a));
  if (adet == 0.0) throw SingularInput("sv_ratio of a singular matrix");
  const double h = hs_norm2(a) / (2.0 * adet);
  if (h < 1.0 + 1e-12) return 1.0;
  return 1.0 / (h + std::sqrt((h - 1.0) * (h + 1.0)));
}

Herm4 Herm4::identity() noexcept {
  Herm4 m;
  for (int i = 0; i < 4; ++i) m(i, i) = 1.0;
  return m;
}

Herm4 assemble(const Herm2& d1, const Herm2& d2, const Mat2& c) noexcept {
  Herm4 m;
  const Mat2 a = d1.mat();
  const Mat2 b = d2.mat();
  for (int r = 0; r < 2; ++r) {
    for (int k = 0; k < 2; ++k) {
      m(r, k) = a(r, k);
      m(r + 2, k + 2) = b(r, k);
      m(r, k + 2) = c(r, k);
      m(k + 2, r) = conj(c(r, k));
    }
  }
  return m;
}

Herm4 partial_transpose(const Herm4& m) noexcept {
  Herm4 r;
  for (int br = 0; br < 2; ++br)
    for (int bc = 0; bc < 2; ++bc)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r(2 * br + i, 2 * bc + j) = m(2 * br + j, 2 * bc + i);
  return r;
}

double hs_norm(const Herm4& m) noexcept {
  double s = 0.0;
  for (const auto& z : m.e) s += norm2(z);
  return std::sqrt(s);
}

namespace {

template <std::size_t N>
std::array<double, N> jacobi_eigenvalues(std::array<double, N * N> a) {
  auto at = [&a](std::size_t r, std::size_t c) -> double& { return a[r * N + c]; };
  double total = 0.0;
  for (double v : a) total += v * v;
  const double target = 1e-13 * std::sqrt(total);

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t p = 0; p < N; ++p)
      for (std::size_t q = 0; q < N; ++q)
        if (p != q) s += at(p, q) * at(p, q);
    return std::sqrt(s);
  };

  int sweep = 0;
  for (; sweep < kJacobiSweepBudget; ++sweep) {
    if (off_norm() <= target) break;
    for (std::size_t p = 0; p + 1 < N; ++p) {
      for (std::size_t q = p + 1; q < N; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < N; ++k) {
          const double akp = at(k, p);
          const double akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < N; ++k) {
          const double apk = at(p, k);
          const double aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  if (sweep == kJacobiSweepBudget && off_norm() > target) {
    throw NoConvergence("eig4_sym: Jacobi did not converge", off_norm(), off_norm(),
                        static_cast<std::uint64_t>(kJacobiSweepBudget));
  }
  std::array<double, N> ev{};
  for (std::size_t i = 0; i < N; ++i) ev[i] = at(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

}  // namespace

std::array<double, 4> eig4_sym(const Herm4& m) {
  bool complex = false;
  for (const auto& z : m.e) complex = complex || z.im != 0.0;
  if (!complex) {
    std::array<double, 16> a{};
    for (std::size_t i = 0; i < 16; ++i) a[i] = m.e[i].re;
    return jacobi_eigenvalues<4>(a);
  }
  // [[Re, -Im], [Im, Re]] has every eigenvalue of m twice.
  std::array<double, 64> a{};
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) {
      const Cplx z = m.e[4 * r + c];
      a[r * 8 + c] = z.re;
      a[(r + 4) * 8 + c + 4] = z.re;
      a[r * 8 + c + 4] = -z.im;
      a[(r + 4) * 8 + c] = z.im;
    }
  }
  const auto ev = jacobi_eigenvalues<8>(a);
  return {ev[0], ev[2], ev[4], ev[6]};
}

bool schur_positive(const Herm2& d1, const Herm2& d2, const Mat2& c) {
  const double scale = std::max({std::abs(d2.a()), std::abs(d2.d()), abs(d2.b())});
  const double dt = d2.det();
  if (scale == 0.0 || std::abs(dt) <= 4.0 * std::numeric_limits<double>::epsilon() * scale * scale) {
    throw SingularBlock("schur_positive: lower-right block is singular");
  }
  if (!d2.positive_definite()) return false;
  return (d1 - congruence(c, inverse(d2))).positive_definite();
}

}  // namespace sepvol
