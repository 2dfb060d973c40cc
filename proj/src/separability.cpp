// SPDX-License-Identifier: Apache-2.0
#include "sepvol/separability.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "sepvol/error.hpp"
#include "sepvol/sampling.hpp"
#include "sepvol/special.hpp"

namespace sepvol {
namespace {

constexpr double kSqrt2 = 1.41421356237309504880;

QuadOptions with_tol(double tol) {
  QuadOptions o;
  o.abs_tol = tol;
  return o;
}

double pow_int(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

// (1-x^2)^d (1-y^2)^d |x-y|^d, the eigenvalue weight of the operator interval.
double interval_weight(int d, double x, double y) {
  const double base = (1.0 - x * x) * (1.0 - y * y) * (x - y);
  return d == 1 ? base : base * base;
}

// y at which eps(x, y) equals e, for y < x.
double y_for_eps(double x, double e) {
  const double q = e * e * (1.0 + x) / (1.0 - x);
  return (q - 1.0) / (q + 1.0);
}

Region2D triangle_with_eps_cuts(std::vector<double> levels) {
  Region2D r = Region2D::lower_triangle_pm1();
  r.inner_breakpoints = [levels = std::move(levels)](double x) {
    std::vector<double> cuts;
    cuts.reserve(levels.size());
    for (double e : levels)
      if (e > 0.0 && e < 1.0) cuts.push_back(y_for_eps(x, e));
    return cuts;
  };
  return r;
}

// int over -1<y<x<1 of profile(eps(x, y)) times the interval weight.
QuadResult weighted_profile_integral(int d, const std::function<double(double)>& profile,
                                     std::vector<double> levels, double tol) {
  const Region2D region = triangle_with_eps_cuts(std::move(levels));
  return integrate_2d(
      [&](double x, double y) {
        const double w = interval_weight(d, x, y);
        if (w == 0.0) return 0.0;
        return w * profile(epsilon_of_eigs(x, y));
      },
      region, with_tol(tol));
}

double eps_density_kernel(int d, double s, double t) {
  if (d == 1) {
    return 256.0 * pow_int(s, 4) * t * t * t * (1.0 - t * t) / pow_int((s + t) * (1.0 + s * t), 5);
  }
  const double u = 1.0 - t * t;
  return 2048.0 * pow_int(s, 7) * pow_int(t, 5) * u * u / pow_int((1.0 + t * s) * (s + t), 8);
}

}  // namespace

QuadResult hs_inner_identity(double tol) {
  constexpr double kScale = 64.0 / 3.0;
  const std::array<double, 1> seam{0.6};
  QuadResult r = integrate_1d([](double t) { return hs_weight_reduced(t) * chi1_tilde_deriv(t); }, 0.0,
                              1.0, seam, with_tol(tol / kScale));
  r.value *= kScale;
  r.abs_error_estimate *= kScale;
  return r;
}

RealHsResult psep_real_hs(double tol) {
  constexpr double kNorm = 35.0 / 16.0;
  RealHsResult out;
  out.identity = hs_inner_identity(tol / kNorm);
  out.result = out.identity;
  out.result.value = 1.0 - kNorm * out.identity.value;
  out.result.abs_error_estimate = kNorm * out.identity.abs_error_estimate;

  out.direct_2d = weighted_profile_integral(1, chi1_tilde, {}, tol / kNorm);
  out.direct_2d.value *= kNorm;
  out.direct_2d.abs_error_estimate *= kNorm;
  out.paths_agree = std::abs(out.direct_2d.value - out.result.value) < 1e-7;
  return out;
}

SqrtxResult psep_sqrtx_real(double tol) {
  const std::array<double, 1> seam{0.6};
  SqrtxResult out;
  out.result = integrate_1d([](double t) { return sqrtx_weight(t) * chi1_tilde(t); }, 0.0, 1.0, seam,
                            with_tol(tol));
  out.denominator = 2.0 * kPi / 3.0;
  out.numerator = out.result.value * out.denominator;
  return out;
}

double eps_density(Field field, double t) {
  if (!(t > 0.0 && t < 1.0)) throw DomainError("eps_density: argument outside (0, 1)");
  const int d = real_dim(field);
  const double norm = d == 1 ? 16.0 / 35.0 : 64.0 / 1575.0;
  const std::array<double, 2> cuts{t, 1.0 / t};
  const QuadResult r = integrate_1d([d, t](double s) { return eps_density_kernel(d, s, t); }, 0.0,
                                    std::numeric_limits<double>::infinity(), cuts, with_tol(1e-14));
  return r.value / norm;
}

HybridResult psep_complex_hs(const ChiTable& chi2, const HybridOptions& opts) {
  if (chi2.size() < 4 || chi2.eps.front() != 0.0 || chi2.eps.back() != 1.0) {
    throw DomainError("psep_complex_hs: table must span [0, 1] with at least four nodes");
  }
  HybridResult out;
  out.table_points = chi2.size();

  const auto ratio = [&](const ChiTable& table, double* error, std::uint64_t* evals) {
    const QuadResult num =
        weighted_profile_integral(2, [&table](double e) { return table(e); }, table.eps, opts.tol);
    const QuadResult den = weighted_profile_integral(2, [](double) { return 1.0; }, table.eps, opts.tol);
    if (error != nullptr) {
      *error = (num.abs_error_estimate + std::abs(num.value / den.value) * den.abs_error_estimate) /
               den.value;
    }
    if (evals != nullptr) *evals += num.evaluations + den.evaluations;
    return num.value / den.value;
  };

  out.value = ratio(chi2, &out.quad_error, &out.evaluations);

  // Interpolation weights under the eps density: value_1d = sum_k w_k chi_k.
  const std::size_t k = chi2.size();
  out.weights.assign(k, 0.0);
  for (std::size_t c = 0; c + 1 < k; ++c) {
    const FixedRule rule = kronrod21(chi2.eps[c], chi2.eps[c + 1]);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double e = rule.nodes[i];
      const double dens = eps_density(Field::Complex, e) * rule.weights[i];
      const auto st = chi2.stencil(e);
      for (std::size_t j = 0; j < 4; ++j) out.weights[st.index[j]] += dens * st.weight[j];
    }
  }
  for (std::size_t j = 0; j < k; ++j) out.value_1d += out.weights[j] * chi2.value[j];
  out.table_sigma = std::sqrt(chi2.variance_of(out.weights));
  out.sigma = std::hypot(out.table_sigma, out.quad_error);

  if (opts.check_interpolation && k % 2 == 1 && k >= 7) {
    out.interpolation_error = std::abs(out.value - ratio(chi2.every_other(), nullptr, &out.evaluations));
    if (out.interpolation_error > opts.table_tol) {
      throw TableTooCoarse("psep_complex_hs: interpolation error estimate " +
                               std::to_string(out.interpolation_error) + " exceeds " +
                               std::to_string(opts.table_tol),
                           out.interpolation_error);
    }
  }
  return out;
}

HybridResult psep_complex_hs_adaptive(std::uint64_t n, const ParallelPlan& plan, const HybridOptions& opts) {
  HybridResult previous;
  bool have_previous = false;
  HybridResult current;
  for (std::size_t points : {17u, 33u, 65u, 129u}) {
    const ChiTable table = build_chi_table(Field::Complex, uniform_grid(points), n, plan);
    current = psep_complex_hs(table, opts);
    if (have_previous && std::abs(current.value - previous.value) < current.table_sigma) break;
    previous = current;
    have_previous = true;
  }
  return current;
}

VolumeReport make_report(std::string name, double computed, double reference) {
  return {std::move(name), computed, reference, std::abs(computed - reference) / std::abs(reference)};
}

double chi_d_one(Field field, double tol) {
  // Singular values x, y in (0, 1); angular factors 4 pi^2 (real), 4^3 pi^4 / 64 (complex).
  const Region2D r = Region2D::rectangle(0.0, 1.0, 0.0, 1.0);
  if (field == Field::Real) {
    Region2D half = r;
    half.upper = [](double x) { return x; };
    const QuadResult q = integrate_2d([](double x, double y) { return x * x - y * y; }, half,
                                      with_tol(tol / (4.0 * kPi * kPi)));
    return 4.0 * kPi * kPi * 0.5 * 2.0 * q.value;
  }
  const QuadResult q = integrate_2d(
      [](double x, double y) {
        const double d = x * x - y * y;
        return x * y * d * d;
      },
      r, with_tol(tol / (4.0 * pow_int(kPi, 4))));
  return 4.0 * pow_int(kPi, 4) * q.value;
}

double density_moment(Field field, double tol) {
  if (field == Field::Real) {
    // theta in (0, 2pi), volume form r/2, det = (1 - r^2)/4.
    const QuadResult q = integrate_1d(
        [](double r) { return std::pow(0.25 * (1.0 - r * r), 3.5) * 0.5 * r; }, 0.0, 1.0,
        with_tol(tol / (2.0 * kPi)));
    return 2.0 * kPi * q.value;
  }
  // theta in (0, 2pi), phi in (0, pi) with sin(phi): angular factor 4 pi;
  // volume form r^2 / (2 sqrt 2).
  const QuadResult q = integrate_1d(
      [](double r) { return pow_int(0.25 * (1.0 - r * r), 6) * r * r / (2.0 * kSqrt2); }, 0.0, 1.0,
      with_tol(tol / (4.0 * kPi)));
  return 4.0 * kPi * q.value;
}

double interval_integral(Field field, double tol) {
  const int d = real_dim(field);
  // Real: theta in (0, 2pi), form |x-y|/sqrt2. Complex: angular 4 pi, form (x-y)^2/2.
  const double angular = d == 1 ? 2.0 * kPi / kSqrt2 : 4.0 * kPi * 0.5;
  const QuadResult q = weighted_profile_integral(d, [](double) { return 1.0; }, {}, tol / (2.0 * angular));
  return angular * 2.0 * q.value;
}

std::vector<VolumeReport> section5_volumes(double tol) {
  const double pi = kPi;
  const double chi1 = chi_d_one(Field::Real, tol);
  const double chi2 = chi_d_one(Field::Complex, tol);
  const double m_r = density_moment(Field::Real, tol);
  const double e_r = interval_integral(Field::Real, tol);
  const double m_c = density_moment(Field::Complex, tol);
  const double e_c = interval_integral(Field::Complex, tol);

  std::vector<VolumeReport> out;
  out.push_back(make_report("chi1_one", chi1, 2.0 * pi * pi / 3.0));
  out.push_back(make_report("chi2_one", chi2, pow_int(pi, 4) / 6.0));
  out.push_back(make_report("moment_real", m_r, pi / (128.0 * 9.0)));
  out.push_back(make_report("interval_real", e_r, 32.0 * kSqrt2 * pi / 35.0));
  out.push_back(make_report("moment_complex", m_c, pi / (2.0 * 9.0 * 5.0 * 7.0 * 11.0 * 13.0 * kSqrt2)));
  out.push_back(make_report("interval_complex", e_c, 1024.0 * pi / (9.0 * 25.0 * 7.0)));
  out.push_back(make_report("volume_real", chi1 / 64.0 * m_r * e_r,
                            pow_int(pi, 4) / (kSqrt2 * 64.0 * 27.0 * 35.0)));
  out.push_back(make_report("volume_complex", chi2 / 4096.0 * m_c * e_c,
                            pow_int(pi, 6) / (kSqrt2 * 16384.0 * 81.0 * 125.0 * 49.0 * 11.0 * 13.0)));
  return out;
}

double sqrtx_volume(Field) noexcept { return std::numeric_limits<double>::infinity(); }

namespace {

double conditional_integral(const Density2& d, Field field, const std::function<double(double)>& profile,
                            std::vector<double> levels, double tol) {
  const int dim = real_dim(field);
  const double det = d.matrix.det();
  if (!(det > 0.0)) throw DomainError("conditional_volume: D must be faithful");
  const double angular = dim == 1 ? 2.0 * kPi / kSqrt2 : 2.0 * kPi;
  const double prefactor = std::pow(det, 4.0 * dim - 0.5 * dim * dim) / std::pow(2.0, 6.0 * dim) *
                           chi_d_one(field) * angular * 2.0;
  const QuadResult q = weighted_profile_integral(dim, profile, std::move(levels), tol);
  return prefactor * q.value;
}

}  // namespace

double conditional_volume(const Density2& d, Field field, const ChiTable* chi2, double tol) {
  if (field == Field::Real) return conditional_integral(d, field, chi1_tilde, {}, tol);
  if (chi2 == nullptr) throw DomainError("conditional_volume: complex field needs a chi~_2 table");
  return conditional_integral(d, field, [chi2](double e) { return (*chi2)(e); }, chi2->eps, tol);
}

double conditional_whole_volume(const Density2& d, Field field, double tol) {
  return conditional_integral(d, field, [](double) { return 1.0; }, {}, tol);
}

double surface_inner(double t, double tol) {
  const double c = std::cosh(t);
  if (!std::isfinite(c)) return 0.0;
  QuadOptions inner = with_tol(tol / (40.0 * kPi));
  // The rho integrand is a spike of width ~1/(c sin(phi)) around 1/sin(phi)
  // once c is large; resolve it with graded cuts. Near rounding level the
  // inner integral may not meet a tolerance below 1e-13, which is harmless.
  inner.throw_on_failure = false;
  inner.max_evaluations = 200'000;
  auto over_rho = [c, &inner](double phi) {
    const double s = std::sin(phi);
    auto f = [c, s](double rho) {
      const double z = rho + std::abs(rho * s - 1.0) * c;
      const double w = z + std::sqrt(std::max(0.0, (z - 1.0) * (z + 1.0)));
      return 1.0 / (w * w);
    };
    std::vector<double> cuts;
    if (s > 0.0) {
      const double centre = 1.0 / s;
      cuts.push_back(centre);
      for (double width = std::max(centre / c, centre * 1e-15); width < centre; width *= 10.0) {
        cuts.push_back(centre - width);
        cuts.push_back(centre + width);
      }
      std::sort(cuts.begin(), cuts.end());
    }
    return integrate_1d(f, 0.0, std::numeric_limits<double>::infinity(), cuts, inner).value;
  };
  const std::array<double, 3> cuts{0.5 * kPi, kPi, 1.5 * kPi};
  return integrate_1d(over_rho, 0.0, 2.0 * kPi, cuts, with_tol(tol)).value;
}

QuadResult surface_volume(double tol) {
  // cosh(2t) over t in R equals cosh(u) over u in (0, inf) after u = 2|t|.
  QuadResult r = integrate_1d([tol](double u) { return surface_inner(u, tol / 100.0); }, 0.0,
                              std::numeric_limits<double>::infinity(), with_tol(tol / 4.0));
  r.value *= 4.0;
  r.abs_error_estimate *= 4.0;
  return r;
}

double surface_volume_reduced(double tol) {
  const std::array<double, 3> cuts{1.0, 5.0, 20.0};
  const QuadResult q = integrate_1d(defect_integrand, 0.0, std::numeric_limits<double>::infinity(), cuts,
                                    with_tol(tol * 3.0 / 32.0));
  return 32.0 / 3.0 * q.value;
}

}  // namespace sepvol
