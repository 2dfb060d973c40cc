// SPDX-License-Identifier: Apache-2.0
#include "sepvol/state.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "sepvol/error.hpp"

namespace sepvol {

using nlohmann::json;

Density2 Density2::real(double theta, double r) {
  if (!(r >= 0.0 && r < 1.0)) throw DomainError("Bloch radius must lie in [0, 1)");
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  return {Herm2{0.5 * (1.0 + r * s), 0.5 * (1.0 - r * s), Cplx{0.5 * r * c}}, theta, 0.0, r};
}

Density2 Density2::complex(double theta, double phi, double r) {
  if (!(r >= 0.0 && r < 1.0)) throw DomainError("Bloch radius must lie in [0, 1)");
  const double sp = std::sin(phi);
  const Cplx off{0.5 * r * std::cos(theta) * sp, -0.5 * r * std::sin(theta) * sp};
  const double z = r * std::cos(phi);
  return {Herm2{0.5 * (1.0 + z), 0.5 * (1.0 - z), off}, theta, phi, r};
}

Density2 Density2::on_axis(Field field, double r) {
  return field == Field::Real ? real(0.0, r) : complex(0.0, 0.0, r);
}

BlockState4 BlockState4::from_matrix(Field field, const Herm4& m) noexcept {
  BlockState4 s;
  s.field = field;
  s.d1 = Herm2{m(0, 0).re, m(1, 1).re, m(0, 1)};
  s.d2 = Herm2{m(2, 2).re, m(3, 3).re, m(2, 3)};
  s.c = Mat2::of(m(0, 2), m(0, 3), m(1, 2), m(1, 3));
  return s;
}

void validate(const BlockState4& rho) {
  if (std::abs(rho.trace() - 1.0) > 1e-12) throw DomainError("state trace differs from 1");
  if (!rho.d1.positive_definite() || !rho.d2.positive_definite()) {
    throw DomainError("diagonal blocks of the state are not positive definite");
  }
}

bool is_ppt(const BlockState4& rho) {
  return schur_positive(rho.d1, rho.d2, rho.c) && schur_positive(rho.d1, rho.d2, adjoint(rho.c));
}

OperatorIntervalPoint OperatorIntervalPoint::from_matrix(const Herm2& y) {
  const auto [hi, lo] = y.eigenvalues();
  if (!(lo > -1.0 && hi < 1.0)) throw DomainError("point lies outside the operator interval");
  return {y, hi, lo};
}

double epsilon_of_eigs(double hi, double lo) noexcept {
  const double e = std::sqrt(((1.0 - hi) * (1.0 + lo)) / ((1.0 + hi) * (1.0 - lo)));
  return std::min(e, 1.0 / e);
}

double epsilon_of(const OperatorIntervalPoint& p) noexcept { return epsilon_of_eigs(p.hi, p.lo); }

namespace {

json entry_to_json(Field f, Cplx z) {
  if (f == Field::Real) return z.re;
  return json::array({z.re, z.im});
}

json mat_to_json(Field f, const Mat2& m) {
  return json::array({json::array({entry_to_json(f, m(0, 0)), entry_to_json(f, m(0, 1))}),
                      json::array({entry_to_json(f, m(1, 0)), entry_to_json(f, m(1, 1))})});
}

Cplx entry_from_json(const json& j) {
  if (j.is_number()) return Cplx{j.get<double>()};
  if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
  throw DomainError("matrix entry must be a number or an [re, im] pair");
}

Mat2 mat_from_json(const json& j, const char* name) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_array() || !j[1].is_array() || j[0].size() != 2 ||
      j[1].size() != 2) {
    throw DomainError(std::string("'") + name + "' must be a 2x2 array");
  }
  return Mat2::of(entry_from_json(j[0][0]), entry_from_json(j[0][1]), entry_from_json(j[1][0]),
                  entry_from_json(j[1][1]));
}

Herm2 herm_from_json(const json& j, const char* name) {
  const Mat2 m = mat_from_json(j, name);
  const double tol = 1e-12 * std::max(1.0, std::sqrt(hs_norm2(m)));
  if (std::abs(m(0, 0).im) > tol || std::abs(m(1, 1).im) > tol || abs(m(0, 1) - conj(m(1, 0))) > tol) {
    throw DomainError(std::string("'") + name + "' is not self-adjoint");
  }
  return Herm2::from_upper(m);
}

}  // namespace

std::string to_json(const BlockState4& rho, int indent) {
  json j;
  j["field"] = std::string(to_string(rho.field));
  j["d1"] = mat_to_json(rho.field, rho.d1.mat());
  j["d2"] = mat_to_json(rho.field, rho.d2.mat());
  j["c"] = mat_to_json(rho.field, rho.c);
  return j.dump(indent);
}

BlockState4 block_state_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw DomainError(std::string("invalid state JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("field") || !j.contains("d1") || !j.contains("d2") ||
      !j.contains("c")) {
    throw DomainError("state JSON needs keys field, d1, d2, c");
  }
  BlockState4 rho;
  rho.field = parse_field(j["field"].get<std::string>());
  rho.d1 = herm_from_json(j["d1"], "d1");
  rho.d2 = herm_from_json(j["d2"], "d2");
  rho.c = mat_from_json(j["c"], "c");
  if (rho.field == Field::Real) {
    for (const auto& z : rho.c.e)
      if (z.im != 0.0) throw DomainError("complex entry in a real state");
    if (rho.d1.b().im != 0.0 || rho.d2.b().im != 0.0) throw DomainError("complex entry in a real state");
  }
  return rho;
}

}  // namespace sepvol
