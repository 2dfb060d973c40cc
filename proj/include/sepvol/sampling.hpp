// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "sepvol/chi_table.hpp"
#include "sepvol/estimate.hpp"
#include "sepvol/field.hpp"
#include "sepvol/matrix.hpp"
#include "sepvol/random.hpp"
#include "sepvol/state.hpp"

namespace sepvol {

enum class Measure { HS, SqrtX };

std::string_view to_string(Measure m) noexcept;
Measure parse_measure(std::string_view name);

/// Uniform draw from the operator-norm unit ball {||X|| < 1} by rejection
/// from the entrywise cube [-1, 1]^{4d}. Adds the number of proposals to
/// *proposed when given.
Mat2 sample_unit_ball(Field field, SeededStream& stream, std::uint64_t* proposed = nullptr);

/// Acceptance rate of the unit-ball sampler as an estimate of
/// Vol(B_K) / 2^{4d}, from n accepted draws.
MCEstimate unit_ball_acceptance(Field field, std::uint64_t n, const ParallelPlan& plan);

/// V_eps^{-1} X V_eps with V_eps = diag(1, eps).
Mat2 similarity(const Mat2& x, double eps) noexcept;

/// Fraction of n unit-ball draws with ||V_eps^{-1} X V_eps|| < 1.
MCEstimate chi_mc(Field field, double eps, std::uint64_t n, const ParallelPlan& plan);

/// Hilbert-Schmidt distributed state via the Ginibre construction
/// rho = G G* / Tr(G G*); G is 4x5 real or 4x4 complex.
BlockState4 sample_hs_state4(Field field, SeededStream& stream);

/// The same distribution by literal rejection: diagonal uniform on the
/// simplex, off-diagonal coordinates uniform in [-1/2, 1/2], accept if
/// positive definite. Slow; kept as a cross-check.
BlockState4 sample_hs_state4_rejection(Field field, SeededStream& stream,
                                       std::uint64_t* proposed = nullptr);

enum class StateSampler { Ginibre, Rejection };

/// Fraction of n sampled states that are PPT.
MCEstimate separable_fraction(Field field, StateSampler sampler, std::uint64_t n,
                              const ParallelPlan& plan);

/// Largest value of |x-y|^d (1-x^2)^d (1-y^2)^d on the square, from a grid
/// search polished by local refinement.
double interval_envelope(Field field);

/// Y in the operator interval with eigenvalue density
///   HS:    |x-y|^d (1-x^2)^d (1-y^2)^d
///   SqrtX: |x-y|^d ((1-x^2)(1-y^2))^{(d-2)/4}
/// and Haar-distributed eigenvectors.
OperatorIntervalPoint sample_interval_point(Field field, Measure measure, SeededStream& stream,
                                            std::uint64_t* proposed = nullptr);

struct PsepMcOptions {
  /// chi~_2 source for the complex field. Without a table each Y is paired
  /// with one fresh unit-ball draw (unbiased, no interpolation).
  const ChiTable* chi2 = nullptr;
  /// Allows (Complex, SqrtX) by substituting chi~_2 for the conjectured eta~_2.
  bool assume_eta2_equals_chi2 = false;
};

/// Conditional separability probability E[chi~_d(eps(Y))] with Y from
/// sample_interval_point. When a chi~_2 table is used its covariance is
/// folded into std_error.
MCEstimate psep_mc_given_d(Field field, Measure measure, std::uint64_t n, const ParallelPlan& plan,
                           const PsepMcOptions& opts = {});

/// One state of the conditional construction at fixed reduced state D.
BlockState4 sample_conditional_state(Field field, const Herm2& d, SeededStream& stream);

struct RadiusEstimate {
  double r = 0.0;
  MCEstimate estimate;
};

/// Separable fraction of states with reduced state D(0, r) (or D(0, 0, r)).
std::vector<RadiusEstimate> milz_strunz_scan(Field field, std::span<const double> radii,
                                             std::uint64_t n, const ParallelPlan& plan);

struct EtaPoint {
  double eps = 0.0;
  /// 1 - (2 / Vol(dB)) Delta(-log eps)
  double deterministic = 0.0;
  /// Twice the fraction of boundary draws moved inside by V_eps.
  MCEstimate monte_carlo;
  double chi = 0.0;
};

/// Draw from the surface measure of the real unit-ball boundary
/// (sigma_1 = 1, sigma_2 with density proportional to 1 - sigma_2^2).
Mat2 sample_ball_boundary(SeededStream& stream);

std::vector<EtaPoint> eta_boundary_check(std::span<const double> eps_grid, std::uint64_t n,
                                         const ParallelPlan& plan, double boundary_volume);

/// chi~_d on the given grid with common random numbers: each unit-ball draw
/// is tested at every grid point. Covariance from batch means.
ChiTable build_chi_table(Field field, std::span<const double> grid, std::uint64_t n,
                         const ParallelPlan& plan);

}  // namespace sepvol
