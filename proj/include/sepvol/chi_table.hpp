// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "sepvol/field.hpp"

namespace sepvol {

/// Tabulated eps -> chi~_d(eps) on [0, 1] with piecewise cubic Lagrange
/// interpolation. Monte Carlo tables carry the covariance of their values.
struct ChiTable {
  Field field = Field::Complex;
  std::vector<double> eps;
  std::vector<double> value;
  /// Row-major K x K covariance of `value`; all zeros for exact tables.
  std::vector<double> covariance;
  std::uint64_t n = 0;
  std::uint64_t seed = 0;

  /// value(e) = sum_i weight[i] * value[index[i]]
  struct Stencil {
    std::array<std::size_t, 4> index{};
    std::array<double, 4> weight{};
  };

  [[nodiscard]] std::size_t size() const noexcept { return eps.size(); }
  [[nodiscard]] Stencil stencil(double e) const;
  [[nodiscard]] double operator()(double e) const;
  /// w^T Sigma w for a weight vector over the table nodes.
  [[nodiscard]] double variance_of(std::span<const double> w) const;
  /// Keeps nodes 0, 2, 4, ...; requires an odd node count.
  [[nodiscard]] ChiTable every_other() const;

  /// Exact table of a known profile (zero covariance).
  static ChiTable from_function(Field field, std::span<const double> grid,
                                const std::function<double(double)>& f);
};

/// k/(points-1), k = 0..points-1.
std::vector<double> uniform_grid(std::size_t points);

}  // namespace sepvol
