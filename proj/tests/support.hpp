// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>

#include "sepvol/matrix.hpp"
#include "sepvol/random.hpp"
#include "sepvol/special.hpp"

namespace sepvol::testing {

inline Cplx random_entry(Field field, SeededStream& rng, double scale = 1.0) {
  const double re = rng.uniform(-scale, scale);
  if (field == Field::Real) return re;
  return {re, rng.uniform(-scale, scale)};
}

inline Mat2 random_mat2(Field field, SeededStream& rng, double scale = 1.0) {
  return Mat2::of(random_entry(field, rng, scale), random_entry(field, rng, scale),
                  random_entry(field, rng, scale), random_entry(field, rng, scale));
}

/// Haar-ish unitary (orthogonal for Real): exp of phases times a rotation,
/// optionally with a reflection.
inline Mat2 random_unitary(Field field, SeededStream& rng) {
  const double a = rng.uniform(0.0, 2.0 * kPi);
  const Mat2 rot = Mat2::of(std::cos(a), -std::sin(a), std::sin(a), std::cos(a));
  if (field == Field::Real) {
    return rng.uniform() < 0.5 ? rot : rot * Mat2::diag(1.0, -1.0);
  }
  const double p = rng.uniform(0.0, 2.0 * kPi);
  const double q = rng.uniform(0.0, 2.0 * kPi);
  const double g = rng.uniform(0.0, 2.0 * kPi);
  const Mat2 left = Mat2::diag(Cplx{std::cos(p), std::sin(p)}, Cplx{std::cos(q), std::sin(q)});
  const Mat2 right = Mat2::diag(1.0, Cplx{std::cos(g), std::sin(g)});
  return left * rot * right;
}

/// Random self-adjoint 4x4 matrix with entries in [-1, 1].
inline Herm4 random_herm4(Field field, SeededStream& rng) {
  Herm4 m;
  for (int r = 0; r < 4; ++r) {
    m(r, r) = rng.uniform(-1.0, 1.0);
    for (int c = r + 1; c < 4; ++c) {
      const Cplx z = random_entry(field, rng);
      m(r, c) = z;
      m(c, r) = conj(z);
    }
  }
  return m;
}

/// (U (x) W) m (U (x) W)*
inline Herm4 local_conjugate(const Herm4& m, const Mat2& u, const Mat2& w) {
  Cplx k[4][4];
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) k[2 * a + b][2 * c + d] = u(a, c) * w(b, d);
  Cplx t[4][4];
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      Cplx s;
      for (int j = 0; j < 4; ++j) s += k[r][j] * m(j, c);
      t[r][c] = s;
    }
  Herm4 out;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      Cplx s;
      for (int j = 0; j < 4; ++j) s += t[r][j] * conj(k[c][j]);
      out(r, c) = s;
    }
  return out;
}

inline double max_abs_diff(const Mat2& a, const Mat2& b) {
  double m = 0.0;
  for (int i = 0; i < 4; ++i) m = std::max(m, abs(a.e[i] - b.e[i]));
  return m;
}

}  // namespace sepvol::testing
