#pragma once

#include <stdexcept>
#include <string>

namespace specreg {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A documented precondition of an operation does not hold.
class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

// The decreasing rearrangement needs every superlevel set to have finite
// measure, which fails for the multiplier at hand.
class RearrangementUndefined : public Error {
 public:
  using Error::Error;
};

class RequiresFiniteMeasure : public Error {
 public:
  using Error::Error;
};

class DominationNotDetected : public Error {
 public:
  using Error::Error;
};

class NotInSourceSet : public Error {
 public:
  NotInSourceSet(double achieved_norm, double bound)
      : Error("source element norm " + std::to_string(achieved_norm) +
              " exceeds bound " + std::to_string(bound)),
        achieved_norm_(achieved_norm) {}

  double achieved_norm() const noexcept { return achieved_norm_; }

 private:
  double achieved_norm_;
};

class UnboundedRatio : public Error {
 public:
  using Error::Error;
};

class ZeroDirection : public Error {
 public:
  using Error::Error;
};

class BracketingFailed : public Error {
 public:
  using Error::Error;
};

class DivergentProfile : public Error {
 public:
  using Error::Error;
};

class DegenerateFilter : public Error {
 public:
  using Error::Error;
};

class EigenvaluesNotDivergent : public Error {
 public:
  using Error::Error;
};

}  // namespace specreg
