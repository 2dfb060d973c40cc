// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sepvol/chi_table.hpp"
#include "sepvol/estimate.hpp"
#include "sepvol/field.hpp"
#include "sepvol/quadrature.hpp"
#include "sepvol/state.hpp"

namespace sepvol {

// ---------------------------------------------------------------------------
// Real Hilbert-Schmidt separability probability

struct RealHsResult {
  /// 1 - (35/16) * identity.value, the reduced one-dimensional path.
  QuadResult result;
  /// (64/3) int_0^1 w(t) chi~_1'(t) dt
  QuadResult identity;
  /// (35/16) int int_{-1<y<x<1} chi~_1(eps(x, y)) (1-x^2)(1-y^2)(x-y)
  QuadResult direct_2d;
  bool paths_agree = false;
};

RealHsResult psep_real_hs(double tol = 1e-10);

/// Only the inner identity, without the 2D cross-check.
QuadResult hs_inner_identity(double tol = 1e-10);

// ---------------------------------------------------------------------------
// Real sqrt(x)-metric separability probability

struct SqrtxResult {
  /// int_0^1 sqrtx_weight(t) chi~_1(t) dt
  QuadResult result;
  /// The same integral before division by the denominator 2 pi / 3.
  double numerator = 0.0;
  double denominator = 0.0;
};

SqrtxResult psep_sqrtx_real(double tol = 1e-10);

// ---------------------------------------------------------------------------
// Complex Hilbert-Schmidt separability probability from a chi~_2 table

struct HybridOptions {
  double tol = 1e-9;
  /// Largest accepted |P(table) - P(every other node)|.
  double table_tol = 2e-3;
  /// Skip the coarse-grid comparison (used for exact profiles).
  bool check_interpolation = true;
};

struct HybridResult {
  double value = 0.0;
  /// Quadrature error of the ratio.
  double quad_error = 0.0;
  /// sqrt(w^T Sigma w) from the table covariance.
  double table_sigma = 0.0;
  /// |P(table) - P(every other node)|
  double interpolation_error = 0.0;
  /// sqrt(table_sigma^2 + quad_error^2)
  double sigma = 0.0;
  /// Same probability from the one-dimensional eps density.
  double value_1d = 0.0;
  std::vector<double> weights;
  std::size_t table_points = 0;
  std::uint64_t evaluations = 0;
};

/// Ratio of int chi~_2(eps(x, y)) (1-x^2)^2 (1-y^2)^2 (x-y)^2 over -1<y<x<1
/// to the same integral with chi~_2 = 1. Throws TableTooCoarse when the
/// interpolation error estimate exceeds opts.table_tol.
HybridResult psep_complex_hs(const ChiTable& chi2, const HybridOptions& opts = {});

/// Builds chi~_2 tables on 17, 33, 65, 129 points (common random numbers)
/// until consecutive results differ by less than one table sigma.
HybridResult psep_complex_hs_adaptive(std::uint64_t n, const ParallelPlan& plan,
                                      const HybridOptions& opts = {});

/// Density of eps under the Hilbert-Schmidt conditional measure, d = 1, 2;
/// integrates to 1 on (0, 1).
double eps_density(Field field, double t);

// ---------------------------------------------------------------------------
// Volumes

struct VolumeReport {
  std::string name;
  double computed = 0.0;
  double reference = 0.0;
  double rel_error = 0.0;
};

VolumeReport make_report(std::string name, double computed, double reference);

/// chi_d(1) = Vol(B_K) from the singular-value parametrization.
double chi_d_one(Field field, double tol = 1e-13);

/// Moment, interval integral and assembled 4x4 volumes for both fields,
/// plus chi_d(1).
std::vector<VolumeReport> section5_volumes(double tol = 1e-13);

/// int_{D(2,K)} det(D)^{4d - d^2/2} by quadrature.
double density_moment(Field field, double tol = 1e-13);
/// int_{E(2,K)} det(I - Y^2)^d by quadrature.
double interval_integral(Field field, double tol = 1e-13);

/// Volume of the sqrt(x)-metric state space: infinite for both fields.
double sqrtx_volume(Field field) noexcept;

/// Hilbert-Schmidt volume of the separable states with reduced state D.
/// The complex field needs a chi~_2 table.
double conditional_volume(const Density2& d, Field field, const ChiTable* chi2 = nullptr,
                          double tol = 1e-11);
/// Volume of all states with reduced state D.
double conditional_whole_volume(const Density2& d, Field field, double tol = 1e-11);

/// Vol of the boundary of the real unit ball from the triple integral
/// 4 int_R int_0^{2pi} int_0^inf exp(-2 acosh(rho + |rho sin(phi) - 1| cosh 2t)).
QuadResult surface_volume(double tol = 1e-9);
/// Same volume after the inner double integral is reduced to the defect
/// integrand: (32/3) int_0^inf defect_integrand.
double surface_volume_reduced(double tol = 1e-12);
/// Inner (rho, phi) integral of the boundary volume form at fixed t.
double surface_inner(double t, double tol = 1e-11);

}  // namespace sepvol
