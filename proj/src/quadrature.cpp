// SPDX-License-Identifier: Apache-2.0
#include "sepvol/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "sepvol/error.hpp"

namespace sepvol {
namespace {

// Gauss-Kronrod 10/21 abscissae and weights (QUADPACK qk21).
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208685009288, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
// Gauss weights for the odd-index Kronrod nodes 1, 3, 5, 7, 9.
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
  double a;
  double b;
  double value;
  double error;
  bool splittable;
};

Segment gk21(const Integrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kron = kWgk[10] * fc;
  double gauss = 0.0;
  for (std::size_t j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    const double s = f(center - dx) + f(center + dx);
    kron += kWgk[j] * s;
    if (j % 2 == 1) gauss += kWg[j / 2] * s;
  }
  kron *= half;
  gauss *= half;
  const bool splittable = center > a && center < b;
  return {a, b, kron, std::abs(kron - gauss), splittable};
}

bool heap_less(const Segment& x, const Segment& y) {
  // Unsplittable segments sink to the bottom.
  if (x.splittable != y.splittable) return !x.splittable;
  return x.error < y.error;
}

QuadResult adaptive(const Integrand& g, std::span<const double> cuts, const QuadOptions& opts) {
  std::vector<Segment> heap;
  std::uint64_t evals = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (!(cuts[i + 1] > cuts[i])) continue;
    heap.push_back(gk21(g, cuts[i], cuts[i + 1]));
    evals += 21;
  }
  std::make_heap(heap.begin(), heap.end(), heap_less);

  auto totals = [&heap] {
    double v = 0.0;
    double e = 0.0;
    for (const auto& s : heap) {
      v += s.value;
      e += s.error;
    }
    return std::pair{v, e};
  };

  auto [value, error] = totals();
  std::uint64_t since_resum = 0;
  while (error > opts.abs_tol && !heap.empty() && heap.front().splittable &&
         evals + 42 <= opts.max_evaluations) {
    std::pop_heap(heap.begin(), heap.end(), heap_less);
    const Segment worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    const Segment left = gk21(g, worst.a, mid);
    const Segment right = gk21(g, mid, worst.b);
    evals += 42;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), heap_less);
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), heap_less);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    if (++since_resum == 64) {
      std::tie(value, error) = totals();
      since_resum = 0;
    }
  }
  std::tie(value, error) = totals();

  QuadResult r{value, error, evals, error <= opts.abs_tol};
  if (!r.converged && !std::isfinite(value)) {
    throw NoConvergence("integrate_1d: non-finite integrand value", value, error, opts.max_evaluations);
  }
  if (!r.converged && opts.throw_on_failure) {
    throw NoConvergence("integrate_1d: error estimate " + std::to_string(error) + " above tolerance " +
                            std::to_string(opts.abs_tol),
                        value, error, opts.max_evaluations);
  }
  return r;
}

}  // namespace

QuadResult integrate_1d(const Integrand& f, double a, double b, std::span<const double> breakpoints,
                        const QuadOptions& opts) {
  if (a == b) return {0.0, 0.0, 0, true};
  if (b < a) {
    QuadResult r = integrate_1d(f, b, a, breakpoints, opts);
    r.value = -r.value;
    return r;
  }
  const bool infinite = std::isinf(b);

  // Work in the variable u; x(u) and dx/du depend on the mapping.
  Integrand g;
  std::vector<double> cuts;
  if (infinite) {
    auto to_x = [a](double u) { return a + u / (1.0 - u); };
    g = [&f, to_x](double u) {
      const double w = 1.0 - u;
      return f(to_x(u)) / (w * w);
    };
    cuts.push_back(0.0);
    for (double p : breakpoints)
      if (p > a && std::isfinite(p)) cuts.push_back((p - a) / (1.0 + p - a));
    cuts.push_back(1.0);
  } else {
    g = [&f](double x) { return f(x); };
    cuts.push_back(a);
    for (double p : breakpoints)
      if (p > a && p < b) cuts.push_back(p);
    cuts.push_back(b);
  }
  std::sort(cuts.begin(), cuts.end());

  if (opts.transform == EndpointTransform::Cubic) {
    const double lo = cuts.front();
    const double width = cuts.back() - lo;
    Integrand inner = std::move(g);
    g = [inner, lo, width](double v) {
      const double x = lo + width * v * v * (3.0 - 2.0 * v);
      return inner(x) * 6.0 * width * v * (1.0 - v);
    };
    // Interior cuts map back through the inverse of the cubic.
    std::vector<double> mapped{0.0};
    for (std::size_t i = 1; i + 1 < cuts.size(); ++i) {
      const double target = (cuts[i] - lo) / width;
      double lo_v = 0.0;
      double hi_v = 1.0;
      for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo_v + hi_v);
        (mid * mid * (3.0 - 2.0 * mid) < target ? lo_v : hi_v) = mid;
      }
      mapped.push_back(0.5 * (lo_v + hi_v));
    }
    mapped.push_back(1.0);
    cuts = std::move(mapped);
  }
  return adaptive(g, cuts, opts);
}

QuadResult integrate_1d(const Integrand& f, double a, double b, const QuadOptions& opts) {
  return integrate_1d(f, a, b, std::span<const double>{}, opts);
}

Region2D Region2D::rectangle(double x0, double x1, double y0, double y1) {
  return {x0, x1, [y0](double) { return y0; }, [y1](double) { return y1; }, {}};
}

Region2D Region2D::lower_triangle_pm1() {
  return {-1.0, 1.0, [](double) { return -1.0; }, [](double x) { return x; }, {}};
}

QuadResult integrate_2d(const std::function<double(double, double)>& f, const Region2D& region,
                        const QuadOptions& opts) {
  const double span_x = std::max(1.0, std::abs(region.x1 - region.x0));
  QuadOptions inner_opts = opts;
  inner_opts.abs_tol = opts.abs_tol / (10.0 * span_x);
  inner_opts.transform = EndpointTransform::None;
  QuadOptions outer_opts = opts;
  outer_opts.abs_tol = 0.9 * opts.abs_tol;

  std::uint64_t inner_evals = 0;
  double worst_inner = 0.0;
  bool inner_ok = true;
  auto outer = [&](double x) {
    const double lo = region.lower(x);
    const double hi = region.upper(x);
    if (!(hi > lo)) return 0.0;
    std::vector<double> bps;
    if (region.inner_breakpoints) bps = region.inner_breakpoints(x);
    const QuadResult r =
        integrate_1d([&f, x](double y) { return f(x, y); }, lo, hi, bps, inner_opts);
    inner_evals += r.evaluations;
    worst_inner = std::max(worst_inner, r.abs_error_estimate);
    inner_ok = inner_ok && r.converged;
    return r.value;
  };
  QuadResult r = integrate_1d(outer, region.x0, region.x1, outer_opts);
  r.abs_error_estimate += worst_inner * std::abs(region.x1 - region.x0);
  r.evaluations += inner_evals;
  r.converged = r.converged && inner_ok && r.abs_error_estimate <= opts.abs_tol;
  if (!r.converged && opts.throw_on_failure) {
    throw NoConvergence("integrate_2d: tolerance not reached", r.value, r.abs_error_estimate,
                        opts.max_evaluations);
  }
  return r;
}

FixedRule kronrod21(double a, double b) {
  FixedRule rule;
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (std::size_t j = 0; j < 10; ++j) {
    rule.nodes.push_back(center - half * kXgk[j]);
    rule.weights.push_back(half * kWgk[j]);
    rule.nodes.push_back(center + half * kXgk[j]);
    rule.weights.push_back(half * kWgk[j]);
  }
  rule.nodes.push_back(center);
  rule.weights.push_back(half * kWgk[10]);
  return rule;
}

}  // namespace sepvol
