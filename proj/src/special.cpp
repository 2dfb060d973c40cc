// SPDX-License-Identifier: Apache-2.0
#include "sepvol/special.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "sepvol/error.hpp"
#include "sepvol/quadrature.hpp"

namespace sepvol {
namespace {

constexpr double kChiScale = 4.0 / (kPi * kPi);
constexpr double kChiSeriesBelow = 0.25;
constexpr double kWeightSeriesFrom = 0.6;

void require_open_unit(double t, const char* what) {
  if (!(t > 0.0 && t < 1.0)) {
    throw DomainError(std::string(what) + ": argument " + std::to_string(t) + " outside (0, 1)");
  }
}

// ---------------------------------------------------------------------------
// Chebyshev table for chi~_1

class Chi1Table {
 public:
  static const Chi1Table& instance() {
    static const Chi1Table table;
    return table;
  }

  double operator()(double x) const {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    std::size_t p = 0;
    if (x < edges_[kUniform]) {
      p = std::min(static_cast<std::size_t>(x * kUniform), kUniform - 1);
    } else {
      p = kUniform;
      while (p + 2 < edges_.size() && x >= edges_[p + 1]) ++p;
    }
    return eval_panel(p, x);
  }

 private:
  static constexpr std::size_t kUniform = 256;
  static constexpr std::size_t kGraded = 24;
  static constexpr std::size_t kNodes = 16;

  std::vector<double> edges_;
  std::vector<std::array<double, kNodes>> values_;
  std::array<double, kNodes> unit_nodes_{};

  Chi1Table() {
    for (std::size_t j = 0; j < kNodes; ++j) {
      unit_nodes_[j] = -std::cos(kPi * static_cast<double>(j) / static_cast<double>(kNodes - 1));
    }
    for (std::size_t i = 0; i <= kUniform; ++i) {
      edges_.push_back(static_cast<double>(i) / static_cast<double>(kUniform));
    }
    // The last uniform panel is split geometrically towards the (u^2 log u)
    // singularity of the integrand at s = 1.
    edges_.pop_back();
    double gap = 1.0 / static_cast<double>(kUniform);
    for (std::size_t i = 0; i < kGraded; ++i) {
      gap *= 0.5;
      edges_.push_back(1.0 - gap);
    }
    edges_.push_back(1.0);

    QuadOptions opts;
    opts.abs_tol = 1e-16;
    opts.max_evaluations = 21 * 31;
    opts.throw_on_failure = false;
    double running = 0.0;
    for (std::size_t p = 0; p + 1 < edges_.size(); ++p) {
      const double a = edges_[p];
      const double b = edges_[p + 1];
      std::array<double, kNodes> v{};
      double prev = a;
      v[0] = running;
      for (std::size_t j = 1; j < kNodes; ++j) {
        const double x = j + 1 == kNodes ? b : node(a, b, j);
        v[j] = v[j - 1] + integrate_1d(chi1_integrand, prev, x, opts).value;
        prev = x;
      }
      running = v[kNodes - 1];
      values_.push_back(v);
    }
    // Normalize by the computed total so the table ends exactly at 1.
    for (auto& v : values_)
      for (auto& x : v) x /= running;
  }

  [[nodiscard]] double node(double a, double b, std::size_t j) const {
    return 0.5 * (a + b) + 0.5 * (b - a) * unit_nodes_[j];
  }

  [[nodiscard]] double eval_panel(std::size_t p, double x) const {
    const double a = edges_[p];
    const double b = edges_[p + 1];
    const double z = (2.0 * x - a - b) / (b - a);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t j = 0; j < kNodes; ++j) {
      const double diff = z - unit_nodes_[j];
      if (diff == 0.0) return values_[p][j];
      double w = (j % 2 == 0) ? 1.0 : -1.0;
      if (j == 0 || j + 1 == kNodes) w *= 0.5;
      w /= diff;
      num += w * values_[p][j];
      den += w;
    }
    return num / den;
  }
};

// ---------------------------------------------------------------------------
// Series of the t = 1 expansions: sum_n a_n u^n with u = 1 - t, where
// a_n = sum_{i+j=n} c_i c_j B(alpha + j, alpha + i) and
// c_i = (alpha)_i / i!.

template <std::size_t N>
std::array<double, N> beta_series(double alpha) {
  std::array<double, N> c{};
  c[0] = 1.0;
  for (std::size_t i = 1; i < N; ++i) c[i] = c[i - 1] * (alpha + static_cast<double>(i - 1)) / static_cast<double>(i);

  // beta[i][j] = B(alpha + j, alpha + i) by the recurrences
  // B(a, b + 1) = B(a, b) b / (a + b) and B(a + 1, b) = B(a, b) a / (a + b).
  std::vector<double> beta(N * N);
  beta[0] = std::exp(2.0 * std::lgamma(alpha) - std::lgamma(2.0 * alpha));
  for (std::size_t i = 0; i < N; ++i) {
    if (i > 0) {
      const double a = alpha;
      const double b = alpha + static_cast<double>(i - 1);
      beta[i * N] = beta[(i - 1) * N] * b / (a + b);
    }
    for (std::size_t j = 1; j < N; ++j) {
      const double a = alpha + static_cast<double>(j - 1);
      const double b = alpha + static_cast<double>(i);
      beta[i * N + j] = beta[i * N + j - 1] * a / (a + b);
    }
  }

  std::array<double, N> coeff{};
  for (std::size_t n = 0; n < N; ++n) {
    double s = 0.0;
    for (std::size_t i = 0; i <= n; ++i) s += c[i] * c[n - i] * beta[i * N + (n - i)];
    coeff[n] = s;
  }
  return coeff;
}

template <std::size_t N>
double horner(const std::array<double, N>& a, double u) {
  double s = 0.0;
  for (std::size_t n = N; n-- > 0;) s = s * u + a[n];
  return s;
}

constexpr std::size_t kSeriesTerms = 160;

const std::array<double, kSeriesTerms>& hs_coefficients() {
  static const auto coeff = beta_series<kSeriesTerms>(4.0);
  return coeff;
}

const std::array<double, kSeriesTerms>& sqrtx_coefficients() {
  static const auto coeff = beta_series<kSeriesTerms>(2.5);
  return coeff;
}

// AGM with the c_n sums for E; valid for every m < 1, negative m included.
struct Agm {
  double k;
  double e;
};

Agm agm(double m) {
  double a = 1.0;
  double b = std::sqrt(1.0 - m);
  double c2_sum = 0.5 * m;  // 2^{-1} c_0^2 with c_0^2 = m
  double pow2 = 0.5;
  for (int it = 0; it < 64; ++it) {
    const double c = 0.5 * (a - b);
    const double an = 0.5 * (a + b);
    const double bn = std::sqrt(a * b);
    pow2 *= 2.0;
    c2_sum += pow2 * c * c;
    a = an;
    b = bn;
    if (std::abs(c) <= 1e-17 * a) break;
  }
  const double k = kPi / (2.0 * a);
  return {k, k * (1.0 - c2_sum)};
}

}  // namespace

namespace detail {

double chi1_integrand_direct(double s) {
  const double inv = 1.0 / s;
  const double diff = s - inv;
  const double lg = std::log1p(s) - std::log1p(-s);
  return (s + inv - 0.5 * diff * diff * lg) * inv;
}

double chi1_integrand_series(double s) {
  const double s2 = s * s;
  double term = 1.0;
  double sum = 0.0;
  for (int j = 1; j < 200; ++j) {
    term *= s2;
    const double k = static_cast<double>(2 * j);
    const double add = 8.0 * term / ((k - 1.0) * (k + 1.0) * (k + 3.0));
    sum += add;
    if (add < 1e-18 * sum) break;
  }
  return 8.0 / 3.0 - sum;
}

double hs_weight_closed(double t) {
  const double t2 = t * t;
  const double num = 11.0 * (1.0 - t2 * t2 * t2) + 27.0 * t2 * (1.0 - t2) +
                     6.0 * (1.0 + t2) * (1.0 + 8.0 * t2 + t2 * t2) * std::log(t);
  return t2 * t2 * num / std::pow(t2 - 1.0, 7);
}

double hs_weight_series(double t) {
  const double t2 = t * t;
  return 3.0 * t2 * t2 * horner(hs_coefficients(), 1.0 - t);
}

double sqrtx_weight_closed(double t) {
  const double t2 = t * t;
  const double m = 1.0 - 1.0 / t2;
  const double num = 8.0 * (t2 * t2 + t2) * elliptic_E(m) - (t2 + 3.0) * (3.0 * t2 + 1.0) * elliptic_K(m);
  return 8.0 * num / (kPi * std::sqrt(t) * std::pow(t2 - 1.0, 3));
}

double sqrtx_weight_series(double t) {
  return (12.0 / kPi) * std::sqrt(t) * (1.0 - t * t) * horner(sqrtx_coefficients(), 1.0 - t);
}

}  // namespace detail

double chi1_integrand(double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw DomainError("chi1_integrand: argument outside [0, 1]");
  if (s == 1.0) return 2.0;
  return s < kChiSeriesBelow ? detail::chi1_integrand_series(s) : detail::chi1_integrand_direct(s);
}

double chi1_tilde(double eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw DomainError("chi1_tilde: epsilon outside [0, 1]");
  return Chi1Table::instance()(eps);
}

double chi1_tilde_quad(double eps, double tol) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw DomainError("chi1_tilde: epsilon outside [0, 1]");
  if (eps == 0.0) return 0.0;
  QuadOptions opts;
  opts.abs_tol = tol / kChiScale;
  return kChiScale * integrate_1d(chi1_integrand, 0.0, eps, opts).value;
}

double chi1_tilde_deriv(double t) {
  require_open_unit(t, "chi1_tilde_deriv");
  return kChiScale * chi1_integrand(t);
}

double defect_integrand(double t) {
  if (!(t >= 0.0)) throw DomainError("defect_integrand: negative argument");
  // With q = e^{-t} the integrand equals q * chi1_integrand(q) / 2.
  const double q = std::exp(-t);
  if (q < 0.5) return 0.5 * q * detail::chi1_integrand_series(q);
  if (t == 0.0) return 1.0;
  const double sh = std::sinh(t);
  return std::cosh(t) - sh * sh * std::log1p(2.0 / std::expm1(t));
}

double defect(double delta, double tol) {
  if (!(delta >= 0.0)) throw DomainError("defect: negative argument");
  if (delta == 0.0) return 0.0;
  QuadOptions opts;
  opts.abs_tol = tol * 3.0 / 16.0;
  const std::array<double, 3> cuts{1.0, 5.0, 20.0};
  return 16.0 / 3.0 * integrate_1d(defect_integrand, 0.0, delta, cuts, opts).value;
}

double dilog(double z) {
  if (!(z <= 1.0)) throw DomainError("dilog: argument above 1");
  if (z == 1.0) return kPi * kPi / 6.0;
  if (z < -0.5) {
    // Landen: Li2(z) = -Li2(z/(z-1)) - log^2(1-z)/2, with z/(z-1) in (1/3, 1).
    const double l = std::log1p(-z);
    return -dilog(z / (z - 1.0)) - 0.5 * l * l;
  }
  if (z > 0.5) {
    return kPi * kPi / 6.0 - std::log(z) * std::log1p(-z) - dilog(1.0 - z);
  }
  double term = z;
  double sum = z;
  for (int k = 2; k < 200; ++k) {
    term *= z;
    const double add = term / (static_cast<double>(k) * k);
    sum += add;
    if (std::abs(add) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

double elliptic_K(double m) {
  if (!(m < 1.0)) throw DomainError("elliptic_K: parameter must be below 1");
  return agm(m).k;
}

double elliptic_E(double m) {
  if (!(m <= 1.0)) throw DomainError("elliptic_E: parameter above 1");
  if (m == 1.0) return 1.0;
  return agm(m).e;
}

double sqrtx_weight(double t) {
  require_open_unit(t, "sqrtx_weight");
  return t < kWeightSeriesFrom ? detail::sqrtx_weight_closed(t) : detail::sqrtx_weight_series(t);
}

double hs_weight_reduced(double t) {
  require_open_unit(t, "hs_weight_reduced");
  return t < kWeightSeriesFrom ? detail::hs_weight_closed(t) : detail::hs_weight_series(t);
}

}  // namespace sepvol
