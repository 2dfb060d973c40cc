// SPDX-License-Identifier: Apache-2.0
//
// End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
// exits nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "sepvol/chi_table.hpp"
#include "sepvol/error.hpp"
#include "sepvol/matrix.hpp"
#include "sepvol/sampling.hpp"
#include "sepvol/separability.hpp"
#include "sepvol/special.hpp"
#include "sepvol/state.hpp"
#include "support.hpp"

using namespace sepvol;

namespace {

constexpr std::uint64_t kMillion = 1'000'000;
constexpr std::uint64_t kSeed = 20240229;

unsigned worker_count() { return std::max(1u, std::thread::hardware_concurrency()); }

ParallelPlan plan(std::uint64_t seed, unsigned threads = worker_count()) {
  ParallelPlan p;
  p.seed = seed;
  p.threads = threads;
  return p;
}

/// Collects sub-checks of one criterion into a single verdict line.
class Criterion {
 public:
  explicit Criterion(std::string id) : id_(std::move(id)), start_(std::chrono::steady_clock::now()) {}

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass_ = false;
      failures_.push_back(what);
    }
    notes_.push_back(what);
  }

  void note(const std::string& what) { notes_.push_back("note: " + what); }

  [[nodiscard]] double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

  bool report() const {
    std::printf("%s %s (%.1f s)\n", id_.c_str(), pass_ ? "PASS" : "FAIL", seconds());
    for (const auto& n : notes_) std::printf("    %s\n", n.c_str());
    if (!pass_)
      for (const auto& f : failures_) std::printf("    failed: %s\n", f.c_str());
    std::fflush(stdout);
    return pass_;
  }

 private:
  std::string id_;
  std::chrono::steady_clock::time_point start_;
  bool pass_ = true;
  std::vector<std::string> notes_;
  std::vector<std::string> failures_;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

std::string describe(const MCEstimate& e) { return fmt("%.6f +- %.6f (n=%llu)", e.mean, e.std_error, (unsigned long long)e.n); }

bool within_3se(const MCEstimate& e, double target) { return std::abs(e.mean - target) <= 3.0 * e.std_error; }

bool same(const MCEstimate& a, const MCEstimate& b) {
  return a.mean == b.mean && a.std_error == b.std_error && a.n == b.n && a.acceptance_rate == b.acceptance_rate;
}

bool ac1() {
  Criterion c("AC1");
  const RealHsResult r = psep_real_hs(1e-10);
  const double err = std::abs(r.result.value - 29.0 / 64.0);
  c.check(err < 1e-8, fmt("P_sep(real) = %.15f, |error| = %.2e", r.result.value, err));
  c.check(c.seconds() < 60.0, fmt("runtime %.2f s < 60 s", c.seconds()));
  return c.report();
}

bool ac2() {
  Criterion c("AC2");
  const QuadResult r = hs_inner_identity(1e-10);
  c.check(std::abs(r.value - 0.25) < 1e-8, fmt("inner identity = %.15f", r.value));
  return c.report();
}

bool ac3() {
  Criterion c("AC3");
  const SqrtxResult r = psep_sqrtx_real(1e-10);
  c.check(std::abs(r.result.value - 0.26223) < 5e-5, fmt("P_sep,sqrtx(real) = %.10f vs 0.26223", r.result.value));
  c.check(std::abs(r.numerator - 0.549213) < 5e-5, fmt("numerator = %.10f vs 0.549213", r.numerator));
  return c.report();
}

bool ac4() {
  Criterion c("AC4");
  const MCEstimate e = separable_fraction(Field::Real, StateSampler::Ginibre, kMillion, plan(kSeed));
  c.check(within_3se(e, 29.0 / 64.0), "real separable fraction " + describe(e) + " vs 29/64");
  c.check(e.std_error < 1e-3, fmt("standard error %.2e", e.std_error));
  c.check(c.seconds() < 120.0, fmt("runtime %.2f s < 120 s", c.seconds()));
  return c.report();
}

bool ac5() {
  Criterion c("AC5");
  const MCEstimate e = separable_fraction(Field::Complex, StateSampler::Ginibre, kMillion, plan(kSeed + 1));
  c.check(within_3se(e, 8.0 / 33.0), "complex separable fraction " + describe(e) + " vs 8/33");
  return c.report();
}

bool ac6() {
  Criterion c("AC6");
  const ChiTable table = build_chi_table(Field::Complex, uniform_grid(17), kMillion, plan(kSeed + 2));
  const HybridResult h = psep_complex_hs(table);
  c.check(std::abs(h.value - 8.0 / 33.0) <= 3.0 * h.sigma,
          fmt("hybrid %.6f +- %.6f (table sigma %.2e, interpolation %.2e, %zu points) vs 8/33", h.value, h.sigma,
              h.table_sigma, h.interpolation_error, h.table_points));
  return c.report();
}

bool ac7() {
  Criterion c("AC7");
  const std::vector<double> radii{0.0, 0.3, 0.6, 0.9};
  for (Field f : {Field::Real, Field::Complex}) {
    const auto scan = milz_strunz_scan(f, radii, kMillion, plan(kSeed + 3));
    double worst = 0.0;
    for (std::size_t i = 0; i < scan.size(); ++i)
      for (std::size_t j = i + 1; j < scan.size(); ++j) {
        const auto& a = scan[i].estimate;
        const auto& b = scan[j].estimate;
        worst = std::max(worst, std::abs(a.mean - b.mean) / std::hypot(a.std_error, b.std_error));
      }
    std::ostringstream line;
    line << to_string(f) << ":";
    for (const auto& r : scan) line << fmt(" r=%.1f %.5f+-%.5f", r.r, r.estimate.mean, r.estimate.std_error);
    c.check(worst <= 3.0, line.str() + fmt(", largest pairwise z %.2f", worst));
  }
  double spread = 0.0;
  for (double r : radii) {
    const Density2 d = Density2::on_axis(Field::Real, r);
    const double p = conditional_volume(d, Field::Real) / conditional_whole_volume(d, Field::Real);
    spread = std::max(spread, std::abs(p - 29.0 / 64.0));
  }
  c.check(spread < 1e-8, fmt("deterministic real conditional probability within %.2e of 29/64", spread));
  return c.report();
}

bool ac8() {
  Criterion c("AC8");
  for (const VolumeReport& r : section5_volumes())
    c.check(r.rel_error < 1e-9,
            fmt("%-16s computed %.15e printed %.15e rel %.2e", r.name.c_str(), r.computed, r.reference, r.rel_error));
  const double factors = chi_d_one(Field::Complex) / 4096 * density_moment(Field::Complex) * interval_integral(Field::Complex);
  const double printed = std::pow(kPi, 6) / (std::sqrt(2.0) * 16384 * 81 * 125 * 49 * 11 * 13);
  c.note(fmt("product of the printed complex factors / printed complex volume = %.12f (1024/3 = %.12f)", factors / printed,
             1024.0 / 3.0));
  return c.report();
}

bool ac9() {
  Criterion c("AC9");
  const double chi1 = chi_d_one(Field::Real);
  const double chi2 = chi_d_one(Field::Complex);
  c.check(std::abs(chi1 / (2 * kPi * kPi / 3) - 1) < 1e-10, fmt("chi_1(1) = %.15f", chi1));
  c.check(std::abs(chi2 / (std::pow(kPi, 4) / 6) - 1) < 1e-10, fmt("chi_2(1) = %.15f", chi2));
  const MCEstimate real = unit_ball_acceptance(Field::Real, kMillion, plan(kSeed + 4));
  c.check(within_3se(real, 2 * kPi * kPi / 3 / 16), "real unit-ball acceptance " + describe(real) + " vs (2pi^2/3)/16");
  const MCEstimate cplx = unit_ball_acceptance(Field::Complex, kMillion, plan(kSeed + 5));
  c.check(within_3se(cplx, std::pow(kPi, 4) / 6 / 256),
          "complex unit-ball acceptance " + describe(cplx) + fmt(" vs (pi^4/6)/256 = %.6f", std::pow(kPi, 4) / 6 / 256));
  c.note(fmt("complex acceptance is consistent with (pi^4/12)/256 = %.6f: z = %.2f", std::pow(kPi, 4) / 12 / 256,
             (cplx.mean - std::pow(kPi, 4) / 12 / 256) / cplx.std_error));
  return c.report();
}

bool ac10() {
  Criterion c("AC10");
  const double vol_b = 2 * kPi * kPi / 3;
  double worst = 0.0;
  for (double d : {0.1, 0.5, 1.0, 2.0, 5.0}) worst = std::max(worst, std::abs(defect(d) - vol_b * (1 - chi1_tilde(std::exp(-d)))));
  c.check(worst < 1e-9, fmt("defect consistency on 5 points, worst %.2e", worst));

  const QuadResult s = surface_volume();
  c.check(std::abs(s.value - 4 * kPi * kPi / 3) < 1e-6, fmt("boundary volume %.12f vs 4pi^2/3", s.value));
  worst = 0.0;
  for (double e : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const double eta = 1 - 2 * vol_b / s.value * (1 - chi1_tilde(e));
    worst = std::max(worst, std::abs(eta - chi1_tilde(e)));
  }
  c.check(worst < 1e-6, fmt("eta~_1 = chi~_1 on 5 points, worst %.2e", worst));
  return c.report();
}

bool ac11() {
  Criterion c("AC11");

  SeededStream rng(2024, 11);
  int checked = 0;
  int mismatches = 0;
  for (Field f : {Field::Real, Field::Complex}) {
    for (int done = 0; done < 5000;) {
      Herm4 m = sepvol::testing::random_herm4(f, rng);
      const double shift = rng.uniform(0.0, 3.0);
      for (int i = 0; i < 4; ++i) m(i, i).re += shift;
      const double lmin = eig4_sym(m)[0];
      const BlockState4 b = BlockState4::from_matrix(f, m);
      if (std::abs(lmin) < 1e-10 || std::abs(b.d2.det()) < 1e-10) continue;
      ++done;
      ++checked;
      if (schur_positive(b.d1, b.d2, b.c) != (lmin > 0.0)) ++mismatches;
    }
  }
  c.check(mismatches == 0, fmt("Schur test vs eigenvalue oracle: %d mismatches in %d cases", mismatches, checked));

  // Each estimator twice on one thread and once on four.
  using Run = std::function<std::vector<MCEstimate>(const ParallelPlan&)>;
  const std::vector<std::pair<std::string, Run>> runs{
      {"separable_fraction real", [](const ParallelPlan& p) { return std::vector{separable_fraction(Field::Real, StateSampler::Ginibre, 20000, p)}; }},
      {"separable_fraction complex", [](const ParallelPlan& p) { return std::vector{separable_fraction(Field::Complex, StateSampler::Ginibre, 20000, p)}; }},
      {"separable_fraction rejection", [](const ParallelPlan& p) { return std::vector{separable_fraction(Field::Real, StateSampler::Rejection, 500, p)}; }},
      {"chi_mc", [](const ParallelPlan& p) { return std::vector{chi_mc(Field::Complex, 0.4, 20000, p)}; }},
      {"unit_ball_acceptance", [](const ParallelPlan& p) { return std::vector{unit_ball_acceptance(Field::Complex, 20000, p)}; }},
      {"psep_mc_given_d real hs", [](const ParallelPlan& p) { return std::vector{psep_mc_given_d(Field::Real, Measure::HS, 20000, p)}; }},
      {"psep_mc_given_d real sqrtx", [](const ParallelPlan& p) { return std::vector{psep_mc_given_d(Field::Real, Measure::SqrtX, 20000, p)}; }},
      {"psep_mc_given_d complex hs", [](const ParallelPlan& p) { return std::vector{psep_mc_given_d(Field::Complex, Measure::HS, 5000, p)}; }},
      {"milz_strunz_scan", [](const ParallelPlan& p) {
         const std::vector<double> radii{0.0, 0.6};
         std::vector<MCEstimate> out;
         for (const auto& r : milz_strunz_scan(Field::Complex, radii, 5000, p)) out.push_back(r.estimate);
         return out;
       }},
      {"build_chi_table", [](const ParallelPlan& p) {
         const ChiTable t = build_chi_table(Field::Complex, uniform_grid(5), 20000, p);
         std::vector<MCEstimate> out;
         for (std::size_t i = 0; i < t.size(); ++i) out.push_back(MCEstimate{t.value[i], t.covariance[i * t.size() + i], 0, 1.0, 0});
         return out;
       }},
      {"eta_boundary_check", [](const ParallelPlan& p) {
         const std::vector<double> grid{0.3, 0.7};
         std::vector<MCEstimate> out;
         for (const auto& e : eta_boundary_check(grid, 20000, p, 4 * kPi * kPi / 3)) out.push_back(e.monte_carlo);
         return out;
       }},
  };
  for (const auto& [name, run] : runs) {
    const auto a = run(plan(99, 1));
    const auto b = run(plan(99, 1));
    const auto t = run(plan(99, 4));
    const auto other = run(plan(100, 1));
    bool ok = a.size() == b.size() && a.size() == t.size();
    bool differs = false;
    for (std::size_t i = 0; ok && i < a.size(); ++i) {
      ok = same(a[i], b[i]) && same(a[i], t[i]);
      differs = differs || a[i].mean != other[i].mean;
    }
    c.check(ok && differs, name + (ok ? " deterministic and thread invariant" : " NOT reproducible") +
                               (differs ? "" : ", seed has no effect"));
  }

  double worst_real = 0.0;
  double worst_cplx = 0.0;
  const ChiTable table = build_chi_table(Field::Complex, uniform_grid(17), 20000, plan(3));
  const double base_real = conditional_volume(Density2::on_axis(Field::Real, 0.0), Field::Real);
  const double base_cplx = conditional_volume(Density2::on_axis(Field::Complex, 0.0), Field::Complex, &table);
  for (double r : {0.3, 0.5, 0.6, 0.9}) {
    const double s = 1 - r * r;
    worst_real = std::max(worst_real,
                          std::abs(conditional_volume(Density2::on_axis(Field::Real, r), Field::Real) / base_real - std::pow(s, 3.5)));
    worst_cplx = std::max(worst_cplx, std::abs(conditional_volume(Density2::on_axis(Field::Complex, r), Field::Complex, &table) /
                                                   base_cplx -
                                               std::pow(s, 6)));
  }
  c.check(worst_real < 1e-6, fmt("real conditional volume scales as (1-r^2)^(7/2), worst %.2e", worst_real));
  c.check(worst_cplx < 1e-6, fmt("complex conditional volume scales as (1-r^2)^6, worst %.2e", worst_cplx));
  return c.report();
}

}  // namespace

int main() {
  const std::vector<std::function<bool()>> criteria{ac1, ac2, ac3, ac4, ac5, ac6, ac7, ac8, ac9, ac10, ac11};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    bool ok = false;
    try {
      ok = criteria[i]();
    } catch (const std::exception& e) {
      std::printf("AC%zu FAIL\n    unexpected exception: %s\n", i + 1, e.what());
    }
    failed += ok ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
