// SPDX-License-Identifier: Apache-2.0
#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "sepvol/cli.hpp"
#include "sepvol/error.hpp"
#include "sepvol/sampling.hpp"
#include "sepvol/separability.hpp"
#include "sepvol/special.hpp"
#include "sepvol/state.hpp"

namespace py = pybind11;
using namespace sepvol;

namespace {

using Matrix = std::vector<std::vector<std::complex<double>>>;

BlockState4 state_from(const Matrix& rows, Field field) {
  if (rows.size() != 4) throw DomainError("expected a 4x4 matrix");
  Herm4 m;
  for (int r = 0; r < 4; ++r) {
    if (rows[r].size() != 4) throw DomainError("expected a 4x4 matrix");
    for (int c = 0; c < 4; ++c) m(r, c) = Cplx{rows[r][c].real(), rows[r][c].imag()};
  }
  for (int r = 0; r < 4; ++r)
    for (int c = r; c < 4; ++c) {
      const Cplx a = m(r, c);
      const Cplx b = m(c, r);
      if (std::abs(a.re - b.re) > 1e-12 || std::abs(a.im + b.im) > 1e-12) throw DomainError("matrix is not Hermitian");
    }
  BlockState4 rho = BlockState4::from_matrix(field, m);
  validate(rho);
  return rho;
}

ParallelPlan make_plan(std::uint64_t seed, unsigned threads) {
  ParallelPlan p;
  p.seed = seed;
  p.threads = threads;
  return p;
}

}  // namespace

PYBIND11_MODULE(_sepvol, m) {
  m.doc() = "Separability probabilities of two-qubit and two-rebit states";

  // Translators run newest first, so the base class is registered before its subclasses.
  auto& error = py::register_exception<Error>(m, "Error");
  py::register_exception<NoConvergence>(m, "NoConvergence", error.ptr());
  py::register_exception<Unsupported>(m, "Unsupported", error.ptr());
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

  py::enum_<Field>(m, "Field").value("REAL", Field::Real).value("COMPLEX", Field::Complex);
  py::enum_<Measure>(m, "Measure").value("HS", Measure::HS).value("SQRTX", Measure::SqrtX);

  py::class_<MCEstimate>(m, "MCEstimate")
      .def_readonly("mean", &MCEstimate::mean)
      .def_readonly("std_error", &MCEstimate::std_error)
      .def_readonly("n", &MCEstimate::n)
      .def_readonly("acceptance_rate", &MCEstimate::acceptance_rate)
      .def_readonly("seed", &MCEstimate::seed)
      .def("__repr__", [](const MCEstimate& e) {
        std::ostringstream s;
        s.precision(8);
        s << "MCEstimate(mean=" << e.mean << ", std_error=" << e.std_error << ", n=" << e.n << ")";
        return s.str();
      });

  py::class_<QuadResult>(m, "QuadResult")
      .def_readonly("value", &QuadResult::value)
      .def_readonly("abs_error_estimate", &QuadResult::abs_error_estimate)
      .def_readonly("evaluations", &QuadResult::evaluations)
      .def_readonly("converged", &QuadResult::converged);

  m.def("chi1_tilde", &chi1_tilde, py::arg("eps"), "Normalised real similarity volume chi~_1(eps).");
  m.def("chi1_tilde_quad", &chi1_tilde_quad, py::arg("eps"), py::arg("tol") = 1e-13);
  m.def("defect", &defect, py::arg("delta"), py::arg("tol") = 1e-12);
  m.def("dilog", &dilog, py::arg("z"));
  m.def("elliptic_K", &elliptic_K, py::arg("m"));
  m.def("elliptic_E", &elliptic_E, py::arg("m"));
  m.def("sqrtx_weight", &sqrtx_weight, py::arg("t"));

  m.def(
      "is_ppt",
      [](const Matrix& rho, Field field) { return is_ppt(state_from(rho, field)); }, py::arg("rho"),
      py::arg("field") = Field::Complex, "Whether a 4x4 density matrix has a positive partial transpose.");

  m.def(
      "psep_real_hs", [](double tol) { return psep_real_hs(tol).result; }, py::arg("tol") = 1e-10);
  m.def(
      "psep_sqrtx_real",
      [](double tol) {
        const SqrtxResult r = psep_sqrtx_real(tol);
        return std::make_tuple(r.result, r.numerator, r.denominator);
      },
      py::arg("tol") = 1e-10, "Returns (result, numerator, denominator).");
  m.def("section5_volumes", [] {
    std::vector<std::tuple<std::string, double, double, double>> out;
    for (const auto& r : section5_volumes()) out.emplace_back(r.name, r.computed, r.reference, r.rel_error);
    return out;
  });

  m.def(
      "separable_fraction",
      [](Field field, std::uint64_t n, std::uint64_t seed, unsigned threads) {
        py::gil_scoped_release release;
        return separable_fraction(field, StateSampler::Ginibre, n, make_plan(seed, threads));
      },
      py::arg("field"), py::arg("n"), py::arg("seed") = cli::kDefaultSeed, py::arg("threads") = 1);
  m.def(
      "chi_mc",
      [](Field field, double eps, std::uint64_t n, std::uint64_t seed, unsigned threads) {
        py::gil_scoped_release release;
        return chi_mc(field, eps, n, make_plan(seed, threads));
      },
      py::arg("field"), py::arg("eps"), py::arg("n"), py::arg("seed") = cli::kDefaultSeed, py::arg("threads") = 1);
  m.def(
      "psep_mc",
      [](Field field, Measure measure, std::uint64_t n, std::uint64_t seed, unsigned threads,
         bool assume_eta2_equals_chi2) {
        py::gil_scoped_release release;
        PsepMcOptions opts;
        opts.assume_eta2_equals_chi2 = assume_eta2_equals_chi2;
        return psep_mc_given_d(field, measure, n, make_plan(seed, threads), opts);
      },
      py::arg("field"), py::arg("measure"), py::arg("n"), py::arg("seed") = cli::kDefaultSeed, py::arg("threads") = 1,
      py::arg("assume_eta2_equals_chi2") = false);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::vector<std::string> full{"sepvol"};
        full.insert(full.end(), args.begin(), args.end());
        std::vector<const char*> argv;
        for (const auto& a : full) argv.push_back(a.c_str());
        std::ostringstream out;
        std::ostringstream err;
        const int code = cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
        return std::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command-line tool in process; returns (exit_code, stdout, stderr).");
}
