#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace pjac {

/// Malformed user input: unknown family, bad file, out-of-range parameter.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Base for failures of a numerical procedure on otherwise valid input.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidDivisor : public std::invalid_argument {
 public:
  InvalidDivisor() : std::invalid_argument("division by the zero polynomial") {}
};

/// A division that must be exact left a remainder above tolerance.
class InexactDivision : public NumericalError {
 public:
  InexactDivision(const std::string& what, double relative_remainder)
      : NumericalError(what), relative_remainder_(relative_remainder) {}
  double relative_remainder() const { return relative_remainder_; }

 private:
  double relative_remainder_;
};

class RootFinderError : public NumericalError {
 public:
  RootFinderError(const std::string& what, std::vector<std::complex<double>> best,
                  double residual)
      : NumericalError(what), best_(std::move(best)), residual_(residual) {}
  const std::vector<std::complex<double>>& best_iterate() const { return best_; }
  double residual() const { return residual_; }

 private:
  std::vector<std::complex<double>> best_;
  double residual_;
};

/// |φn(μ)| exceeded the overflow guard while streaming the recurrence.
class OverflowGuardError : public NumericalError {
 public:
  OverflowGuardError(std::size_t index, double magnitude)
      : NumericalError("recurrence value exceeded overflow guard at index " +
                       std::to_string(index)),
        index_(index),
        magnitude_(magnitude) {}
  std::size_t index() const { return index_; }
  double magnitude() const { return magnitude_; }

 private:
  std::size_t index_;
  double magnitude_;
};

}  // namespace pjac
