// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "sepvol/error.hpp"
#include "sepvol/matrix.hpp"
#include "sepvol/state.hpp"
#include "support.hpp"

using namespace sepvol;
using sepvol::testing::random_mat2;
using sepvol::testing::random_unitary;

namespace {

BlockState4 werner(double p) {
  const double q = (1.0 - p) / 4.0;
  BlockState4 rho;
  rho.d1 = Herm2{p / 2 + q, q};
  rho.d2 = Herm2{q, p / 2 + q};
  rho.c = Mat2::of(0.0, p / 2, 0.0, 0.0);
  return rho;
}

double min_pt_eigenvalue(const BlockState4& rho) { return eig4_sym(partial_transpose(rho.matrix()))[0]; }

Herm4 bell_projector() {
  BlockState4 rho;
  rho.d1 = Herm2{0.5, 0.0};
  rho.d2 = Herm2{0.0, 0.5};
  rho.c = Mat2::of(0.0, 0.5, 0.0, 0.0);
  return rho.matrix();
}

}  // namespace

TEST_CASE("schur_positive examples") {
  const Herm2 q = 0.25 * Herm2::identity();
  CHECK(schur_positive(q, q, Mat2{}));
  CHECK_FALSE(schur_positive(q, q, 0.25 * Mat2::identity()));
  CHECK(eig4_sym(assemble(q, q, 0.25 * Mat2::identity()))[0] == doctest::Approx(0.0).epsilon(1e-15));

  const double e = 1e-3;
  const Herm2 d1{0.5 + e, e};
  const Herm2 d2{e, 0.5 + e};
  const Mat2 c = Mat2::of(0.0, 0.5, 0.0, 0.0);
  CHECK(eig4_sym(assemble(d1, d2, c))[0] > 0.0);
  CHECK(schur_positive(d1, d2, c));

  CHECK_THROWS_AS(schur_positive(q, Herm2{1.0, 0.0}, Mat2{}), SingularBlock);
}

TEST_CASE("is_ppt examples") {
  const Herm2 a{0.7, 0.3};
  BlockState4 product;
  product.d1 = 0.7 * a;
  product.d2 = 0.3 * a;
  CHECK(is_ppt(product));

  CHECK(min_pt_eigenvalue(werner(0.5)) < 0.0);
  CHECK_FALSE(is_ppt(werner(0.5)));
  CHECK(min_pt_eigenvalue(werner(0.25)) > 0.0);
  CHECK(is_ppt(werner(0.25)));
}

TEST_CASE("singular values, norm and ratio") {
  auto sv = singular_values(Mat2::diag(2.0, 1.0));
  CHECK(sv.hi == doctest::Approx(2.0));
  CHECK(sv.lo == doctest::Approx(1.0));

  const double a = 0.73;
  sv = singular_values(Mat2::of(std::cos(a), -std::sin(a), std::sin(a), std::cos(a)));
  CHECK(sv.hi == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sv.lo == doctest::Approx(1.0).epsilon(1e-12));

  sv = singular_values(Mat2::of(1.0, 1.0, 0.0, 1.0));
  CHECK(sv.hi == doctest::Approx(std::sqrt((3 + std::sqrt(5.0)) / 2)).epsilon(1e-14));
  CHECK(sv.lo == doctest::Approx(std::sqrt((3 - std::sqrt(5.0)) / 2)).epsilon(1e-14));
  CHECK(sv.hi == doctest::Approx((1 + std::sqrt(5.0)) / 2).epsilon(1e-14));

  sv = singular_values(Mat2::of(1.0, 2.0, 2.0, 4.0));
  CHECK(sv.hi == doctest::Approx(5.0));
  CHECK(sv.lo == 0.0);

  for (double e : {1.0, 0.5, 1e-3}) CHECK(op_norm(Mat2::diag(1.0, e)) == doctest::Approx(1.0));
  CHECK(sv_ratio(Mat2::diag(2.0, 1.0)) == doctest::Approx(0.5));
  CHECK(sv_ratio(Mat2::diag(1.0, 3.0)) == doctest::Approx(1.0 / 3.0));
  CHECK(sv_ratio(Mat2::identity()) == 1.0);
  CHECK_THROWS_AS(sv_ratio(Mat2::of(1.0, 2.0, 2.0, 4.0)), SingularInput);
}

TEST_CASE("epsilon_of") {
  CHECK(epsilon_of(OperatorIntervalPoint::from_matrix(Herm2{})) == 1.0);
  CHECK(epsilon_of(OperatorIntervalPoint::from_matrix(Herm2{0.4, 0.4})) == doctest::Approx(1.0));
  const auto p = OperatorIntervalPoint::from_matrix(Herm2{0.5, -0.5});
  CHECK(epsilon_of(p) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  // sqrt((I - Y)/(I + Y)) = diag(sqrt(1/3), sqrt(3)) has singular value ratio 1/3.
  CHECK(sv_ratio(Mat2::diag(std::sqrt(1.0 / 3.0), std::sqrt(3.0))) == doctest::Approx(1.0 / 3.0));
  CHECK_THROWS_AS(OperatorIntervalPoint::from_matrix(Herm2{1.0, 0.0}), DomainError);
}

TEST_CASE("herm_sqrt and herm_inv_sqrt") {
  const Herm2 i = herm_sqrt(Herm2::identity());
  CHECK(i.a() == doctest::Approx(1.0));
  CHECK(i.d() == doctest::Approx(1.0));
  CHECK(abs(i.b()) < 1e-15);
  const Herm2 r = herm_sqrt(Herm2{4.0, 9.0});
  CHECK(r.a() == doctest::Approx(2.0));
  CHECK(r.d() == doctest::Approx(3.0));

  SeededStream rng(11, 0);
  for (Field f : {Field::Real, Field::Complex}) {
    for (int k = 0; k < 200; ++k) {
      const Mat2 g = random_mat2(f, rng);
      const Herm2 h = Herm2::from_upper(g * adjoint(g) + 0.01 * Mat2::identity());
      const Herm2 s = herm_sqrt(h);
      const Herm2 is = herm_inv_sqrt(h);
      CHECK(std::sqrt(hs_norm2(s.mat() * s.mat() - h.mat())) < 1e-12);
      CHECK(std::sqrt(hs_norm2(is.mat() * is.mat() * h.mat() - Mat2::identity())) < 1e-10);
    }
  }
  CHECK_THROWS_AS(herm_sqrt(Herm2{1.0, -1.0}), NotPositive);
  CHECK_THROWS_AS(herm_inv_sqrt(Herm2{1.0, 0.0}), NotPositive);
}

TEST_CASE("eig4_sym examples") {
  auto ev = eig4_sym(Herm4::identity());
  for (double v : ev) CHECK(v == doctest::Approx(1.0));

  SeededStream rng(5, 0);
  Herm4 d;
  for (int i = 0; i < 4; ++i) d(i, i) = 4.0 - i;
  for (Field f : {Field::Real, Field::Complex}) {
    const Herm4 m = sepvol::testing::local_conjugate(d, random_unitary(f, rng), random_unitary(f, rng));
    ev = eig4_sym(m);
    for (int i = 0; i < 4; ++i) CHECK(ev[static_cast<std::size_t>(i)] == doctest::Approx(i + 1.0).epsilon(1e-13));
  }

  ev = eig4_sym(partial_transpose(bell_projector()));
  CHECK(ev[0] == doctest::Approx(-0.5).epsilon(1e-14));
  for (int i = 1; i < 4; ++i) CHECK(ev[static_cast<std::size_t>(i)] == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("property: Schur test agrees with the 4x4 eigenvalue oracle") {
  SeededStream rng(2024, 1);
  int checked = 0;
  int mismatches = 0;
  int positive = 0;
  for (Field f : {Field::Real, Field::Complex}) {
    int done = 0;
    while (done < 5000) {
      Herm4 m = sepvol::testing::random_herm4(f, rng);
      const double shift = rng.uniform(0.0, 3.0);
      for (int i = 0; i < 4; ++i) m(i, i).re += shift;
      const double lmin = eig4_sym(m)[0];
      const BlockState4 b = BlockState4::from_matrix(f, m);
      if (std::abs(lmin) < 1e-10 || std::abs(b.d2.det()) < 1e-10) continue;
      ++done;
      ++checked;
      positive += lmin > 0.0 ? 1 : 0;
      if (schur_positive(b.d1, b.d2, b.c) != (lmin > 0.0)) ++mismatches;
    }
  }
  CHECK(checked == 10000);
  CHECK(mismatches == 0);
  CHECK(positive > 1000);
  CHECK(positive < 9000);
}

TEST_CASE("property: is_ppt is invariant under local unitaries") {
  SeededStream rng(77, 3);
  int ppt_count = 0;
  for (Field f : {Field::Real, Field::Complex}) {
    for (int k = 0; k < 500; ++k) {
      // Mixture of a random pure-ish state and white noise, trace one.
      const double p = rng.uniform(0.0, 1.0);
      Herm4 m = sepvol::testing::random_herm4(f, rng);
      Herm4 g;
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
          Cplx s;
          for (int j = 0; j < 4; ++j) s += m(r, j) * conj(m(c, j));
          g(r, c) = s;
        }
      double tr = 0.0;
      for (int i = 0; i < 4; ++i) tr += g(i, i).re;
      for (auto& z : g.e) z = z * (p / tr);
      for (int i = 0; i < 4; ++i) g(i, i).re += (1.0 - p) / 4.0;
      const BlockState4 rho = BlockState4::from_matrix(f, g);
      if (std::abs(min_pt_eigenvalue(rho)) < 1e-10) continue;
      const Herm4 moved = sepvol::testing::local_conjugate(g, random_unitary(f, rng), random_unitary(f, rng));
      const BlockState4 rho2 = BlockState4::from_matrix(f, moved);
      const bool a = is_ppt(rho);
      CHECK(a == is_ppt(rho2));
      ppt_count += a ? 1 : 0;
    }
  }
  CHECK(ppt_count > 50);
  CHECK(ppt_count < 950);
}

TEST_CASE("property: sv_ratio invariances") {
  SeededStream rng(99, 0);
  for (Field f : {Field::Real, Field::Complex}) {
    for (int k = 0; k < 1000; ++k) {
      const Mat2 a = random_mat2(f, rng);
      if (abs(det(a)) < 1e-3) continue;
      const double r = sv_ratio(a);
      CHECK(std::abs(sv_ratio(inverse(a)) - r) < 1e-10);
      CHECK(std::abs(sv_ratio(adjoint(a)) - r) < 1e-10);
      CHECK(std::abs(sv_ratio(random_unitary(f, rng) * a * random_unitary(f, rng)) - r) < 1e-10);
    }
  }
}

TEST_CASE("property: epsilon_of is even in Y") {
  SeededStream rng(4, 4);
  for (Field f : {Field::Real, Field::Complex}) {
    for (int k = 0; k < 1000; ++k) {
      const Mat2 m = random_mat2(f, rng, 0.5);
      const Herm2 y = Herm2::from_upper(0.5 * (m + adjoint(m)));
      const auto [hi, lo] = y.eigenvalues();
      if (!(hi < 1.0 && lo > -1.0)) continue;
      const double e1 = epsilon_of(OperatorIntervalPoint::from_matrix(y));
      const double e2 = epsilon_of(OperatorIntervalPoint::from_matrix(-1.0 * y));
      CHECK(std::abs(e1 - e2) < 1e-12);
      CHECK(e1 > 0.0);
      CHECK(e1 <= 1.0);
    }
  }
}

TEST_CASE("property: contraction test through I - A*A") {
  SeededStream rng(31, 0);
  int inside = 0;
  for (Field f : {Field::Real, Field::Complex}) {
    for (int k = 0; k < 5000; ++k) {
      const Mat2 a = random_mat2(f, rng, 0.8);
      const double n = op_norm(a);
      if (std::abs(n - 1.0) < 1e-10) continue;
      const auto [hi, lo] = Herm2::from_upper(Mat2::identity() - adjoint(a) * a).eigenvalues();
      (void)hi;
      if (n < 1.0) {
        ++inside;
        CHECK(lo > 0.0);
      } else {
        CHECK(lo < 0.0);
      }
    }
  }
  CHECK(inside > 500);
}

TEST_CASE("state JSON round trip") {
  BlockState4 rho = werner(0.3);
  rho.field = Field::Complex;
  rho.c = Mat2::of(Cplx{0.01, 0.02}, 0.15, Cplx{0.0, -0.03}, 0.0);
  const BlockState4 back = block_state_from_json(to_json(rho));
  CHECK(back.field == Field::Complex);
  CHECK(back.d1 == rho.d1);
  CHECK(back.d2 == rho.d2);
  CHECK(back.c == rho.c);

  CHECK_THROWS_AS(block_state_from_json("{\"field\":\"real\"}"), DomainError);
  CHECK_THROWS_AS(block_state_from_json("not json"), DomainError);
  CHECK_THROWS_AS(validate(BlockState4{}), DomainError);
}

TEST_CASE("Density2 invariants") {
  for (double r : {0.0, 0.3, 0.9}) {
    for (const Density2& d : {Density2::real(0.4, r), Density2::complex(0.4, 1.1, r)}) {
      CHECK(d.matrix.trace() == doctest::Approx(1.0).epsilon(1e-15));
      CHECK(d.matrix.det() == doctest::Approx((1 - r * r) / 4).epsilon(1e-13));
      CHECK(d.matrix.positive_definite());
    }
  }
  CHECK_THROWS_AS(Density2::real(0.0, 1.0), DomainError);
}
