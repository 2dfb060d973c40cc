// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "sepvol/field.hpp"
#include "sepvol/matrix.hpp"

namespace sepvol {

/// Single-qubit (or rebit) state in Bloch-sphere coordinates.
struct Density2 {
  Herm2 matrix;
  double theta = 0.0;
  double phi = 0.0;  // unused for the real field
  double r = 0.0;

  /// (I + r(cos(theta) s1 + sin(theta) s3)) / 2
  static Density2 real(double theta, double r);
  /// (I + r(cos(theta)sin(phi) s1 + sin(theta)sin(phi) s2 + cos(phi) s3)) / 2
  static Density2 complex(double theta, double phi, double r);
  /// D(0, r) for Real, D(0, 0, r) for Complex.
  static Density2 on_axis(Field field, double r);
};

/// Two-qubit state rho(D1, D2, C) = [[D1, C], [C*, D2]].
struct BlockState4 {
  Field field = Field::Real;
  Herm2 d1;
  Herm2 d2;
  Mat2 c;

  [[nodiscard]] Herm4 matrix() const noexcept { return assemble(d1, d2, c); }
  [[nodiscard]] double trace() const noexcept { return d1.trace() + d2.trace(); }
  /// Partial trace over the second block index: D1 + D2.
  [[nodiscard]] Herm2 reduced() const noexcept { return d1 + d2; }

  static BlockState4 from_matrix(Field field, const Herm4& m) noexcept;
};

/// Checks trace 1 (within 1e-12) and d1, d2 > 0. Throws DomainError.
void validate(const BlockState4& rho);

/// rho(D1, D2, C) > 0 and rho(D1, D2, C*) > 0; for 2x2 systems this is
/// separability (Peres-Horodecki). Propagates SingularBlock.
bool is_ppt(const BlockState4& rho);

/// Point Y of the operator interval -I < Y < I.
struct OperatorIntervalPoint {
  Herm2 y;
  double hi = 0.0;  // larger eigenvalue
  double lo = 0.0;  // smaller eigenvalue

  /// Builds from a matrix; throws DomainError outside the open interval.
  static OperatorIntervalPoint from_matrix(const Herm2& y);
};

/// sigma(sqrt((I - Y)/(I + Y))) = sqrt((1-x)(1+y) / ((1+x)(1-y))) for x >= y.
double epsilon_of(const OperatorIntervalPoint& p) noexcept;
double epsilon_of_eigs(double hi, double lo) noexcept;

std::string to_json(const BlockState4& rho, int indent = -1);
/// Parses {"field":..,"d1":..,"d2":..,"c":..}; complex entries as [re, im].
BlockState4 block_state_from_json(const std::string& text);

}  // namespace sepvol
