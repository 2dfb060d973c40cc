// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sepvol {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

/// The lower-right block of a block matrix is singular to machine precision.
class SingularBlock : public Error {
 public:
  using Error::Error;
};

class SingularInput : public Error {
 public:
  using Error::Error;
};

class NotPositive : public Error {
 public:
  using Error::Error;
};

class Unsupported : public Error {
 public:
  using Error::Error;
};

/// A file could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

class TableTooCoarse : public Error {
 public:
  TableTooCoarse(const std::string& what, double estimate)
      : Error(what), estimate_(estimate) {}
  [[nodiscard]] double estimate() const noexcept { return estimate_; }

 private:
  double estimate_;
};

/// Iteration or evaluation budget exhausted. Carries the best partial value.
class NoConvergence : public Error {
 public:
  NoConvergence(const std::string& what, double partial, double error_estimate,
                std::uint64_t budget)
      : Error(what),
        partial_(partial),
        error_estimate_(error_estimate),
        budget_(budget) {}

  [[nodiscard]] double partial() const noexcept { return partial_; }
  [[nodiscard]] double error_estimate() const noexcept { return error_estimate_; }
  [[nodiscard]] std::uint64_t budget() const noexcept { return budget_; }

 private:
  double partial_;
  double error_estimate_;
  std::uint64_t budget_;
};

}  // namespace sepvol
