// SPDX-License-Identifier: Apache-2.0
#include "sepvol/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sepvol/error.hpp"
#include "sepvol/special.hpp"

namespace sepvol {
namespace {

constexpr double kTwoPi = 2.0 * kPi;
constexpr double kBoundaryBand = 1e-12;
constexpr std::uint32_t kBatchesPerStream = 16;

std::uint64_t stream_id(std::uint32_t s, std::uint64_t group = 0) noexcept {
  return (group << 32) | s;
}

// Cholesky on the 4x4 self-adjoint matrix; true iff every pivot is positive.
bool cholesky_positive(const Herm4& m) {
  std::array<Cplx, 16> l{};
  for (int j = 0; j < 4; ++j) {
    double diag = m(j, j).re;
    for (int k = 0; k < j; ++k) diag -= norm2(l[4 * j + k]);
    if (!(diag > 0.0)) return false;
    const double ljj = std::sqrt(diag);
    l[4 * j + j] = ljj;
    for (int i = j + 1; i < 4; ++i) {
      Cplx s = m(i, j);
      for (int k = 0; k < j; ++k) s -= l[4 * i + k] * conj(l[4 * j + k]);
      l[4 * i + j] = s / ljj;
    }
  }
  return true;
}

Cplx draw_entry(Field field, SeededStream& stream, double lo, double hi) {
  const double re = stream.uniform(lo, hi);
  if (field == Field::Real) return re;
  return {re, stream.uniform(lo, hi)};
}

double interval_density(int d, double x, double y) {
  const double base = std::abs(x - y) * (1.0 - x * x) * (1.0 - y * y);
  return d == 1 ? base : base * base;
}

bool near_boundary(double x) { return 1.0 - std::abs(x) < kBoundaryBand; }

// Y = U diag(x, y) U* with Haar U, in the Bloch-angle parametrization.
Herm2 rotate_eigenvalues(Field field, double x, double y, SeededStream& stream) {
  const double m = 0.5 * (x + y);
  const double h = 0.5 * (x - y);
  const double theta = stream.uniform(0.0, kTwoPi);
  if (field == Field::Real) {
    return {m + h * std::sin(theta), m - h * std::sin(theta), Cplx{h * std::cos(theta)}};
  }
  const double cos_phi = 1.0 - 2.0 * stream.uniform();
  const double sin_phi = std::sqrt(std::max(0.0, 1.0 - cos_phi * cos_phi));
  return {m + h * cos_phi, m - h * cos_phi,
          Cplx{h * sin_phi * std::cos(theta), -h * sin_phi * std::sin(theta)}};
}

}  // namespace

std::string_view to_string(Measure m) noexcept { return m == Measure::HS ? "hs" : "sqrtx"; }

Measure parse_measure(std::string_view name) {
  if (name == "hs") return Measure::HS;
  if (name == "sqrtx") return Measure::SqrtX;
  throw DomainError("unknown measure '" + std::string(name) + "'");
}

Mat2 sample_unit_ball(Field field, SeededStream& stream, std::uint64_t* proposed) {
  for (;;) {
    const Mat2 x = Mat2::of(draw_entry(field, stream, -1.0, 1.0), draw_entry(field, stream, -1.0, 1.0),
                            draw_entry(field, stream, -1.0, 1.0), draw_entry(field, stream, -1.0, 1.0));
    if (proposed != nullptr) ++*proposed;
    if (op_norm(x) < 1.0) return x;
  }
}

MCEstimate unit_ball_acceptance(Field field, std::uint64_t n, const ParallelPlan& plan) {
  // Each proposal is a Bernoulli trial; the estimate is over proposals.
  const auto parts = for_each_stream(plan, [&](std::uint32_t s) {
    SeededStream stream(plan.seed, stream_id(s));
    StreamTally t;
    const std::uint64_t m = plan.share(n, s);
    for (std::uint64_t i = 0; i < m; ++i) {
      std::uint64_t proposed = 0;
      (void)sample_unit_ball(field, stream, &proposed);
      for (std::uint64_t k = 1; k < proposed; ++k) t.stats.add(0.0);
      t.stats.add(1.0);
      t.proposed += proposed;
      ++t.accepted;
    }
    return t;
  });
  return to_estimate(parts, plan.seed);
}

Mat2 similarity(const Mat2& x, double eps) noexcept {
  return Mat2::of(x(0, 0), eps * x(0, 1), x(1, 0) / eps, x(1, 1));
}

MCEstimate chi_mc(Field field, double eps, std::uint64_t n, const ParallelPlan& plan) {
  if (!(eps > 0.0 && eps <= 1.0)) throw DomainError("chi_mc: epsilon outside (0, 1]");
  if (n == 0) throw DomainError("chi_mc: n must be positive");
  const auto parts = for_each_stream(plan, [&](std::uint32_t s) {
    SeededStream stream(plan.seed, stream_id(s));
    StreamTally t;
    const std::uint64_t m = plan.share(n, s);
    for (std::uint64_t i = 0; i < m; ++i) {
      const Mat2 x = sample_unit_ball(field, stream, &t.proposed);
      ++t.accepted;
      t.stats.add(op_norm(similarity(x, eps)) < 1.0 ? 1.0 : 0.0);
    }
    return t;
  });
  return to_estimate(parts, plan.seed);
}

BlockState4 sample_hs_state4(Field field, SeededStream& stream) {
  // Real: 4x5 Gaussian gives density det(rho)^{(5-4-1)/2} = 1.
  // Complex: 4x4 with E|g|^2 = 1 gives det(rho)^{4-4} = 1.
  const int cols = field == Field::Real ? 5 : 4;
  std::array<Cplx, 20> g{};
  for (int i = 0; i < 4 * cols; ++i) {
    if (field == Field::Real) {
      g[i] = stream.normal();
    } else {
      const double re = stream.normal() * std::sqrt(0.5);
      const double im = stream.normal() * std::sqrt(0.5);
      g[i] = {re, im};
    }
  }
  Herm4 m;
  double tr = 0.0;
  for (int r = 0; r < 4; ++r) {
    for (int c = r; c < 4; ++c) {
      Cplx s;
      for (int k = 0; k < cols; ++k) s += g[r * cols + k] * conj(g[c * cols + k]);
      m(r, c) = s;
      m(c, r) = conj(s);
    }
    tr += m(r, r).re;
  }
  for (auto& z : m.e) z = z / tr;
  for (int r = 0; r < 4; ++r) m(r, r).im = 0.0;
  return BlockState4::from_matrix(field, m);
}

BlockState4 sample_hs_state4_rejection(Field field, SeededStream& stream, std::uint64_t* proposed) {
  for (;;) {
    if (proposed != nullptr) ++*proposed;
    std::array<double, 4> diag{};
    double sum = 0.0;
    for (double& v : diag) {
      v = -std::log(1.0 - stream.uniform());
      sum += v;
    }
    Herm4 m;
    for (int i = 0; i < 4; ++i) m(i, i) = diag[i] / sum;
    for (int r = 0; r < 4; ++r) {
      for (int c = r + 1; c < 4; ++c) {
        const Cplx z = draw_entry(field, stream, -0.5, 0.5);
        m(r, c) = z;
        m(c, r) = conj(z);
      }
    }
    if (cholesky_positive(m)) return BlockState4::from_matrix(field, m);
  }
}

MCEstimate separable_fraction(Field field, StateSampler sampler, std::uint64_t n,
                              const ParallelPlan& plan) {
  if (n == 0) throw DomainError("separable_fraction: n must be positive");
  const auto parts = for_each_stream(plan, [&](std::uint32_t s) {
    SeededStream stream(plan.seed, stream_id(s));
    StreamTally t;
    const std::uint64_t m = plan.share(n, s);
    for (std::uint64_t i = 0; i < m; ++i) {
      BlockState4 rho;
      if (sampler == StateSampler::Ginibre) {
        rho = sample_hs_state4(field, stream);
        ++t.proposed;
      } else {
        rho = sample_hs_state4_rejection(field, stream, &t.proposed);
      }
      ++t.accepted;
      t.stats.add(is_ppt(rho) ? 1.0 : 0.0);
    }
    return t;
  });
  return to_estimate(parts, plan.seed);
}

double interval_envelope(Field field) {
  const int d = real_dim(field);
  constexpr int kGrid = 801;
  double best = 0.0;
  double bx = 0.0;
  double by = 0.0;
  for (int i = 0; i < kGrid; ++i) {
    const double x = -1.0 + 2.0 * i / (kGrid - 1);
    for (int j = 0; j < kGrid; ++j) {
      const double y = -1.0 + 2.0 * j / (kGrid - 1);
      const double v = interval_density(d, x, y);
      if (v > best) {
        best = v;
        bx = x;
        by = y;
      }
    }
  }
  // Pattern search from the best grid point down to rounding level.
  for (double step = 2.0 / (kGrid - 1); step > 1e-15; step *= 0.5) {
    bool moved = true;
    while (moved) {
      moved = false;
      for (const auto& [dx, dy] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) {
        const double x = bx + dx * step;
        const double y = by + dy * step;
        if (std::abs(x) >= 1.0 || std::abs(y) >= 1.0) continue;
        const double v = interval_density(d, x, y);
        if (v > best) {
          best = v;
          bx = x;
          by = y;
          moved = true;
        }
      }
    }
  }
  return best;
}

OperatorIntervalPoint sample_interval_point(Field field, Measure measure, SeededStream& stream,
                                            std::uint64_t* proposed) {
  const int d = real_dim(field);
  static const double kEnvelope[2] = {interval_envelope(Field::Real), interval_envelope(Field::Complex)};
  double x = 0.0;
  double y = 0.0;
  for (;;) {
    if (proposed != nullptr) ++*proposed;
    bool accept = false;
    if (measure == Measure::HS) {
      x = stream.uniform(-1.0, 1.0);
      y = stream.uniform(-1.0, 1.0);
      accept = stream.uniform() * kEnvelope[d - 1] < interval_density(d, x, y);
    } else if (field == Field::Real) {
      // Arcsine proposal; target/proposal = |x-y| ((1-x^2)(1-y^2))^{1/4} <= 2.
      x = std::sin(stream.uniform(-0.5 * kPi, 0.5 * kPi));
      y = std::sin(stream.uniform(-0.5 * kPi, 0.5 * kPi));
      const double ratio = std::abs(x - y) * std::sqrt(std::sqrt((1.0 - x * x) * (1.0 - y * y)));
      accept = 2.0 * stream.uniform() < ratio;
    } else {
      x = stream.uniform(-1.0, 1.0);
      y = stream.uniform(-1.0, 1.0);
      accept = 4.0 * stream.uniform() < (x - y) * (x - y);
    }
    if (accept && !near_boundary(x) && !near_boundary(y)) break;
  }
  const Herm2 ym = rotate_eigenvalues(field, x, y, stream);
  return {ym, std::max(x, y), std::min(x, y)};
}

MCEstimate psep_mc_given_d(Field field, Measure measure, std::uint64_t n, const ParallelPlan& plan,
                           const PsepMcOptions& opts) {
  if (n == 0) throw DomainError("psep_mc_given_d: n must be positive");
  if (field == Field::Complex && measure == Measure::SqrtX && !opts.assume_eta2_equals_chi2) {
    throw Unsupported("complex sqrt(x) separability needs eta~_2 = chi~_2, which is only conjectured");
  }
  const ChiTable* table = field == Field::Complex ? opts.chi2 : nullptr;
  const std::size_t k = table != nullptr ? table->size() : 0;

  struct Part {
    StreamTally tally;
    std::vector<double> weight_sum;
  };
  const auto parts = for_each_stream(plan, [&](std::uint32_t s) {
    SeededStream stream(plan.seed, stream_id(s));
    Part p;
    p.weight_sum.assign(k, 0.0);
    const std::uint64_t m = plan.share(n, s);
    for (std::uint64_t i = 0; i < m; ++i) {
      const OperatorIntervalPoint y = sample_interval_point(field, measure, stream, &p.tally.proposed);
      ++p.tally.accepted;
      const double eps = epsilon_of(y);
      double value = 0.0;
      if (field == Field::Real) {
        value = chi1_tilde(eps);
      } else if (table != nullptr) {
        const auto st = table->stencil(eps);
        for (std::size_t j = 0; j < 4; ++j) {
          value += st.weight[j] * table->value[st.index[j]];
          p.weight_sum[st.index[j]] += st.weight[j];
        }
      } else {
        const Mat2 x = sample_unit_ball(field, stream);
        value = op_norm(similarity(x, eps)) < 1.0 ? 1.0 : 0.0;
      }
      p.tally.stats.add(value);
    }
    return p;
  });

  std::vector<StreamTally> tallies;
  std::vector<double> omega(k, 0.0);
  for (const auto& p : parts) {
    tallies.push_back(p.tally);
    for (std::size_t j = 0; j < k; ++j) omega[j] += p.weight_sum[j];
  }
  MCEstimate e = to_estimate(tallies, plan.seed);
  if (table != nullptr) {
    for (double& w : omega) w /= static_cast<double>(e.n);
    e.std_error = std::sqrt(e.std_error * e.std_error + table->variance_of(omega));
  }
  return e;
}

BlockState4 sample_conditional_state(Field field, const Herm2& d, SeededStream& stream) {
  const Herm2 root = herm_sqrt(d);
  const OperatorIntervalPoint y = sample_interval_point(field, Measure::HS, stream);
  const Herm2 a = congruence(root.mat(), y.y);
  BlockState4 rho;
  rho.field = field;
  rho.d1 = 0.5 * (d + a);
  rho.d2 = 0.5 * (d - a);
  const Mat2 x = sample_unit_ball(field, stream);
  rho.c = herm_sqrt(rho.d1).mat() * x * herm_sqrt(rho.d2).mat();
  return rho;
}

std::vector<RadiusEstimate> milz_strunz_scan(Field field, std::span<const double> radii,
                                             std::uint64_t n, const ParallelPlan& plan) {
  if (n == 0) throw DomainError("milz_strunz_scan: n must be positive");
  std::vector<RadiusEstimate> out;
  std::uint64_t group = 1;
  for (double r : radii) {
    const Density2 d = Density2::on_axis(field, r);
    const auto parts = for_each_stream(plan, [&](std::uint32_t s) {
      SeededStream stream(plan.seed, stream_id(s, group));
      StreamTally t;
      const std::uint64_t m = plan.share(n, s);
      for (std::uint64_t i = 0; i < m; ++i) {
        const BlockState4 rho = sample_conditional_state(field, d.matrix, stream);
        ++t.proposed;
        ++t.accepted;
        t.stats.add(is_ppt(rho) ? 1.0 : 0.0);
      }
      return t;
    });
    out.push_back({r, to_estimate(parts, plan.seed)});
    ++group;
  }
  return out;
}

Mat2 sample_ball_boundary(SeededStream& stream) {
  double s2 = 0.0;
  do {
    s2 = stream.uniform();
  } while (!(stream.uniform() < 1.0 - s2 * s2));
  const double sign = stream.uniform() < 0.5 ? 1.0 : -1.0;
  const double a = stream.uniform(0.0, kTwoPi);
  const double b = stream.uniform(0.0, kTwoPi);
  const Mat2 left = Mat2::of(std::cos(a), -std::sin(a), std::sin(a), std::cos(a));
  const Mat2 right = Mat2::of(std::cos(b), -std::sin(b), std::sin(b), std::cos(b));
  return left * Mat2::diag(1.0, sign * s2) * right;
}

std::vector<EtaPoint> eta_boundary_check(std::span<const double> eps_grid, std::uint64_t n,
                                         const ParallelPlan& plan, double boundary_volume) {
  if (!(boundary_volume > 0.0)) throw DomainError("eta_boundary_check: boundary volume must be positive");
  std::vector<EtaPoint> out;
  std::uint64_t group = 1;
  for (double eps : eps_grid) {
    if (!(eps > 0.0 && eps <= 1.0)) throw DomainError("eta_boundary_check: epsilon outside (0, 1]");
    EtaPoint p;
    p.eps = eps;
    p.chi = chi1_tilde(eps);
    if (eps == 1.0) {
      p.deterministic = 1.0;
      p.monte_carlo = {1.0, 0.0, n, 1.0, plan.seed};
    } else {
      p.deterministic = 1.0 - 2.0 * defect(-std::log(eps)) / boundary_volume;
      const auto parts = for_each_stream(plan, [&](std::uint32_t s) {
        SeededStream stream(plan.seed, stream_id(s, group));
        StreamTally t;
        const std::uint64_t m = plan.share(n, s);
        for (std::uint64_t i = 0; i < m; ++i) {
          const Mat2 x = sample_ball_boundary(stream);
          t.stats.add(op_norm(similarity(x, eps)) < 1.0 ? 2.0 : 0.0);
        }
        t.proposed = t.accepted = m;
        return t;
      });
      p.monte_carlo = to_estimate(parts, plan.seed);
    }
    out.push_back(p);
    ++group;
  }
  return out;
}

ChiTable build_chi_table(Field field, std::span<const double> grid, std::uint64_t n,
                         const ParallelPlan& plan) {
  const std::size_t k = grid.size();
  if (k < 4) throw DomainError("build_chi_table: at least four grid points");
  if (n == 0) throw DomainError("build_chi_table: n must be positive");
  for (std::size_t i = 0; i < k; ++i) {
    if (!(grid[i] >= 0.0 && grid[i] <= 1.0) || (i > 0 && !(grid[i] > grid[i - 1]))) {
      throw DomainError("build_chi_table: grid must be increasing inside [0, 1]");
    }
  }

  struct Batches {
    std::vector<std::vector<double>> hits;
    std::vector<std::uint64_t> count;
  };
  const auto parts = for_each_stream(plan, [&](std::uint32_t s) {
    SeededStream stream(plan.seed, stream_id(s));
    Batches b;
    const std::uint64_t m = plan.share(n, s);
    for (std::uint32_t batch = 0; batch < kBatchesPerStream; ++batch) {
      const std::uint64_t size = m / kBatchesPerStream + (batch < m % kBatchesPerStream ? 1 : 0);
      std::vector<double> hits(k, 0.0);
      for (std::uint64_t i = 0; i < size; ++i) {
        const Mat2 x = sample_unit_ball(field, stream);
        for (std::size_t j = 0; j < k; ++j) {
          const double e = grid[j];
          if (e == 0.0) continue;
          if (e == 1.0 || op_norm(similarity(x, e)) < 1.0) hits[j] += 1.0;
        }
      }
      if (size > 0) {
        b.hits.push_back(std::move(hits));
        b.count.push_back(size);
      }
    }
    return b;
  });

  ChiTable t;
  t.field = field;
  t.eps.assign(grid.begin(), grid.end());
  t.value.assign(k, 0.0);
  t.n = n;
  t.seed = plan.seed;
  std::vector<std::vector<double>> means;
  for (const auto& b : parts) {
    for (std::size_t i = 0; i < b.hits.size(); ++i) {
      std::vector<double> mean(k);
      for (std::size_t j = 0; j < k; ++j) {
        t.value[j] += b.hits[i][j];
        mean[j] = b.hits[i][j] / static_cast<double>(b.count[i]);
      }
      means.push_back(std::move(mean));
    }
  }
  for (double& v : t.value) v /= static_cast<double>(n);

  // Covariance of the overall mean from the spread of batch means.
  const std::size_t nb = means.size();
  t.covariance.assign(k * k, 0.0);
  if (nb > 1) {
    std::vector<double> centre(k, 0.0);
    for (const auto& m : means)
      for (std::size_t j = 0; j < k; ++j) centre[j] += m[j] / static_cast<double>(nb);
    const double scale = 1.0 / (static_cast<double>(nb) * static_cast<double>(nb - 1));
    for (const auto& m : means) {
      for (std::size_t i = 0; i < k; ++i) {
        const double di = m[i] - centre[i];
        if (di == 0.0) continue;
        for (std::size_t j = i; j < k; ++j) t.covariance[i * k + j] += scale * di * (m[j] - centre[j]);
      }
    }
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < i; ++j) t.covariance[i * k + j] = t.covariance[j * k + i];
  }
  return t;
}

}  // namespace sepvol
