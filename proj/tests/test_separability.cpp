// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <limits>

#include "sepvol/error.hpp"
#include "sepvol/sampling.hpp"
#include "sepvol/separability.hpp"
#include "sepvol/special.hpp"

using namespace sepvol;

namespace {

ParallelPlan plan(std::uint64_t seed) {
  ParallelPlan p;
  p.seed = seed;
  return p;
}

const VolumeReport& find(const std::vector<VolumeReport>& v, const std::string& name) {
  for (const auto& r : v)
    if (r.name == name) return r;
  throw std::runtime_error("missing report " + name);
}

}  // namespace

TEST_CASE("real Hilbert-Schmidt probability") {
  const RealHsResult r = psep_real_hs(1e-10);
  CHECK(std::abs(r.result.value - 29.0 / 64.0) < 1e-8);
  CHECK(std::abs(r.identity.value - 0.25) < 1e-8);
  CHECK(std::abs(r.direct_2d.value - r.result.value) < 1e-7);
  CHECK(r.paths_agree);
  CHECK(r.result.converged);
}

TEST_CASE("real sqrt(x) probability") {
  const SqrtxResult r = psep_sqrtx_real(1e-10);
  CHECK(std::abs(r.result.value - 0.26223) < 5e-5);
  CHECK(std::abs(r.numerator - 0.549213) < 5e-5);
  CHECK(r.denominator == doctest::Approx(2 * kPi / 3));
  CHECK(std::abs(r.numerator / r.denominator - r.result.value) < 1e-10);
}

TEST_CASE("eps densities integrate to one") {
  for (Field f : {Field::Real, Field::Complex}) {
    double total = 0.0;
    for (int c = 0; c < 64; ++c) {
      const FixedRule rule = kronrod21(c / 64.0, (c + 1) / 64.0);
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) total += rule.weights[i] * eps_density(f, rule.nodes[i]);
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
  }
  // Real: E[chi~_1(eps)] under the density is the Hilbert-Schmidt probability.
  const auto expect = [](Field f, const std::function<double(double)>& g) {
    double total = 0.0;
    for (int c = 0; c < 64; ++c) {
      const FixedRule rule = kronrod21(c / 64.0, (c + 1) / 64.0);
      for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        total += rule.weights[i] * eps_density(f, rule.nodes[i]) * g(rule.nodes[i]);
    }
    return total;
  };
  CHECK(expect(Field::Real, [](double e) { return chi1_tilde(e); }) == doctest::Approx(29.0 / 64.0).epsilon(1e-8));
  CHECK_THROWS_AS(eps_density(Field::Real, 0.0), DomainError);
}

TEST_CASE("hybrid complex formula with exact profiles") {
  const auto grid = uniform_grid(33);
  HybridOptions exact;
  exact.check_interpolation = false;

  const HybridResult one = psep_complex_hs(ChiTable::from_function(Field::Complex, grid, [](double) { return 1.0; }), exact);
  CHECK(one.value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(one.table_sigma == 0.0);

  const HybridResult ident = psep_complex_hs(ChiTable::from_function(Field::Complex, grid, [](double e) { return e; }), exact);
  CHECK(std::abs(ident.value - ident.value_1d) < 1e-9);
  CHECK(ident.value == doctest::Approx(0.413592037089).epsilon(1e-10));

  // The table stencil reproduces cubics exactly, so a cubic profile matches its 1D expectation.
  const HybridResult cubic =
      psep_complex_hs(ChiTable::from_function(Field::Complex, grid, [](double e) { return e * e * e; }), exact);
  CHECK(std::abs(cubic.value - cubic.value_1d) < 1e-9);
}

TEST_CASE("hybrid complex formula from a Monte Carlo table") {
  const ChiTable table = build_chi_table(Field::Complex, uniform_grid(17), 200000, plan(7));
  const HybridResult h = psep_complex_hs(table);
  CHECK(h.table_sigma > 0.0);
  CHECK(h.sigma >= h.table_sigma);
  CHECK(std::abs(h.value - 8.0 / 33.0) < 3 * h.sigma);
  CHECK(std::abs(h.value - h.value_1d) < 1e-8);
  CHECK(h.interpolation_error < 2e-3);
  MESSAGE("hybrid " << h.value << " +- " << h.sigma << " interpolation " << h.interpolation_error);

  // Ordering against the identity profile: chi~_2(eps) < eps, so the true
  // result sits below the identity-profile result.
  HybridOptions exact;
  exact.check_interpolation = false;
  const double ident =
      psep_complex_hs(ChiTable::from_function(Field::Complex, table.eps, [](double e) { return e; }), exact).value;
  CHECK(h.value < ident);
  CHECK(h.value > 0.0);
  CHECK(ident < 1.0);

  HybridOptions strict;
  strict.table_tol = 1e-9;
  CHECK_THROWS_AS(psep_complex_hs(table, strict), TableTooCoarse);
}

TEST_CASE("volumes of the state spaces") {
  const auto v = section5_volumes();
  REQUIRE(v.size() == 8);
  for (const auto& r : v) CHECK(r.rel_error == doctest::Approx(std::abs(r.computed - r.reference) / std::abs(r.reference)));
  for (const char* name : {"chi1_one", "chi2_one"}) CHECK(find(v, name).rel_error < 1e-10);
  for (const char* name : {"moment_real", "interval_real", "moment_complex", "interval_complex", "volume_real"})
    CHECK(find(v, name).rel_error < 1e-9);

  // Product structure holds to rounding for both fields.
  const double real = chi_d_one(Field::Real) / 64 * density_moment(Field::Real) * interval_integral(Field::Real);
  CHECK(real == doctest::Approx(find(v, "volume_real").computed).epsilon(1e-12));
  const double cplx =
      chi_d_one(Field::Complex) / 4096 * density_moment(Field::Complex) * interval_integral(Field::Complex);
  CHECK(cplx == doctest::Approx(find(v, "volume_complex").computed).epsilon(1e-12));
  // The printed complex constant differs from the product of the printed factors by 1024/3.
  const VolumeReport& vc = find(v, "volume_complex");
  CHECK(vc.computed / vc.reference == doctest::Approx(1024.0 / 3.0).epsilon(1e-12));

  CHECK(std::isinf(sqrtx_volume(Field::Real)));
  CHECK(std::isinf(sqrtx_volume(Field::Complex)));
}

TEST_CASE("conditional volumes") {
  const double r = 0.5;
  const double real = conditional_volume(Density2::on_axis(Field::Real, r), Field::Real) /
                      conditional_volume(Density2::on_axis(Field::Real, 0.0), Field::Real);
  CHECK(std::abs(real - std::pow(0.75, 3.5)) < 1e-6);

  const ChiTable table = build_chi_table(Field::Complex, uniform_grid(17), 20000, plan(3));
  const double cplx = conditional_volume(Density2::on_axis(Field::Complex, r), Field::Complex, &table) /
                      conditional_volume(Density2::on_axis(Field::Complex, 0.0), Field::Complex, &table);
  CHECK(std::abs(cplx - std::pow(0.75, 6)) < 1e-6);
  CHECK_THROWS_AS(conditional_volume(Density2::on_axis(Field::Complex, r), Field::Complex), DomainError);

  for (double radius : {0.0, 0.3, 0.6, 0.9}) {
    const Density2 d = Density2::on_axis(Field::Real, radius);
    const double p = conditional_volume(d, Field::Real) / conditional_whole_volume(d, Field::Real);
    CHECK(std::abs(p - 29.0 / 64.0) < 1e-8);
  }
}

TEST_CASE("boundary volume of the real unit ball") {
  const double target = 4 * kPi * kPi / 3;
  const QuadResult s = surface_volume();
  CHECK(std::abs(s.value - target) < 1e-6);
  CHECK(std::abs(surface_volume_reduced() - target) < 1e-6);
  for (double t : {0.0, 0.5, 2.0, 10.0, 25.0}) {
    const double inner = surface_inner(t);
    CHECK(inner > 0.0);
    CHECK(inner == doctest::Approx(8.0 / 3.0 * defect_integrand(t)).epsilon(1e-9));
  }
  const double vol_b = 2 * kPi * kPi / 3;
  for (double e : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const double eta = 1 - 2 * vol_b / s.value * (1 - chi1_tilde(e));
    CHECK(std::abs(eta - chi1_tilde(e)) < 1e-6);
  }
}
