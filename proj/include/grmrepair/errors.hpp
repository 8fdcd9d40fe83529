// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace grmrepair {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

/// A set of field elements expected to be F_p-independent is not.
class RankDeficient : public Error {
 public:
  RankDeficient(std::size_t rank, std::size_t expected)
      : Error("rank deficiency: rank " + std::to_string(rank) + " < " + std::to_string(expected)),
        rank_(rank) {}
  std::size_t rank() const { return rank_; }

 private:
  std::size_t rank_;
};

class SingularMatrix : public Error {
 public:
  explicit SingularMatrix(std::size_t rank)
      : Error("singular matrix over F_p (rank " + std::to_string(rank) + ")"), rank_(rank) {}
  std::size_t rank() const { return rank_; }

 private:
  std::size_t rank_;
};

/// A polynomial exceeds the degree bound of the code it is meant to live in.
class DegreeViolation : public Error {
 public:
  using Error::Error;
};

/// The repair construction's parameter conditions do not hold.
class InfeasibleScheme : public Error {
 public:
  using Error::Error;
};

/// A brute-force oracle was asked to run on an instance beyond its guard.
class GuardExceeded : public Error {
 public:
  using Error::Error;
};

class IncompleteDownload : public Error {
 public:
  using Error::Error;
};

/// A constructed object failed one of its defining properties.
class VerificationError : public Error {
 public:
  using Error::Error;
};

}  // namespace grmrepair
