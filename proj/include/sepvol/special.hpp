// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace sepvol {

/// (s + 1/s - (s - 1/s)^2 log((1+s)/(1-s)) / 2) / s on [0, 1]. The removable
/// point s = 0 gives 8/3 and s = 1 gives 2. Small s use the power series.
double chi1_integrand(double s);

/// Normalized real volume ratio chi~_1(eps) for eps in [0, 1], served from a
/// piecewise Chebyshev table (absolute error well below 1e-12).
double chi1_tilde(double eps);

/// The same quantity by direct adaptive quadrature at the given tolerance.
double chi1_tilde_quad(double eps, double tol = 1e-13);

/// d chi~_1 / d t on the open interval (0, 1).
double chi1_tilde_deriv(double t);

/// cosh t - sinh^2 t log((e^t + 1)/(e^t - 1)), the integrand of the defect.
double defect_integrand(double t);

/// Delta(delta) = (16/3) int_0^delta defect_integrand, by quadrature.
double defect(double delta, double tol = 1e-12);

/// Real dilogarithm Li_2(z) for z <= 1.
double dilog(double z);

/// Complete elliptic integrals in the parameter convention m = k^2:
/// K(m) = int_0^1 dt / sqrt((1 - t^2)(1 - m t^2)), E(m) likewise with
/// sqrt((1 - m t^2)/(1 - t^2)). Any m < 1 (K) or m <= 1 (E) is accepted.
double elliptic_K(double m);
double elliptic_E(double m);

/// Weight multiplying chi~_1(t) in the sqrt(x)-metric separability
/// probability; its integral over (0, 1) is 1.
double sqrtx_weight(double t);

/// Weight multiplying chi~_1'(t) in the Hilbert-Schmidt real separability
/// probability: t^4 [11(1-t^6) + 27t^2(1-t^2) + 6(1+t^2)(1+8t^2+t^4) log t] / (t^2-1)^7.
double hs_weight_reduced(double t);

namespace detail {
/// Closed-form and t = 1 series branches, exposed for seam tests.
double sqrtx_weight_closed(double t);
double sqrtx_weight_series(double t);
double hs_weight_closed(double t);
double hs_weight_series(double t);
/// Direct (non-series) evaluation of the chi~_1 integrand.
double chi1_integrand_direct(double s);
double chi1_integrand_series(double s);
}  // namespace detail

inline constexpr double kPi = 3.14159265358979323846;

}  // namespace sepvol
