// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace sepvol {

struct QuadResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  std::uint64_t evaluations = 0;
  bool converged = false;
};

enum class EndpointTransform {
  None,
  /// x = a + (b - a)(3u^2 - 2u^3): clusters nodes at both ends and damps
  /// integrable endpoint singularities.
  Cubic,
};

struct QuadOptions {
  double abs_tol = 1e-10;
  std::uint64_t max_evaluations = 2'000'000;
  EndpointTransform transform = EndpointTransform::None;
  /// When false, an exhausted budget returns converged == false instead of
  /// throwing NoConvergence.
  bool throw_on_failure = true;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive Gauss-Kronrod (10/21) bisection. b may be +infinity, in
/// which case the range is mapped through x = a + u/(1-u).
QuadResult integrate_1d(const Integrand& f, double a, double b, const QuadOptions& opts = {});

/// Same as integrate_1d but splits at the given interior breakpoints first
/// (kinks of the integrand). Breakpoints outside (a, b) are ignored.
QuadResult integrate_1d(const Integrand& f, double a, double b, std::span<const double> breakpoints,
                        const QuadOptions& opts = {});

/// Region {(x, y) : x0 < x < x1, lower(x) < y < upper(x)}.
struct Region2D {
  double x0 = 0.0;
  double x1 = 1.0;
  std::function<double(double)> lower;
  std::function<double(double)> upper;
  /// Optional inner breakpoints as a function of x.
  std::function<std::vector<double>(double)> inner_breakpoints;

  static Region2D rectangle(double x0, double x1, double y0, double y1);
  /// -1 < y < x < 1
  static Region2D lower_triangle_pm1();
};

/// Iterated adaptive quadrature: the inner integral runs at tol / 10.
QuadResult integrate_2d(const std::function<double(double, double)>& f, const Region2D& region,
                        const QuadOptions& opts = {});

/// Fixed 21-point Kronrod rule on [a, b], used where a vector of integrals over
/// one cell must share nodes.
struct FixedRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
FixedRule kronrod21(double a, double b);

}  // namespace sepvol
