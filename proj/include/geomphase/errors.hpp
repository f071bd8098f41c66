#pragma once

#include <stdexcept>
#include <string>

namespace geomphase {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GridMismatchError : public Error {
 public:
  using Error::Error;
};

class NormalizationError : public Error {
 public:
  using Error::Error;
};

/// Probability mass reached the guard band of the periodic box, so a
/// translation or evolution step may have wrapped around the boundary.
class DomainOverflowError : public Error {
 public:
  DomainOverflowError(const std::string& what, double mass, double time)
      : Error(what), mass_(mass), time_(time) {}

  double mass() const { return mass_; }
  double time() const { return time_; }

 private:
  double mass_;
  double time_;
};

class NumericalBlowupError : public Error {
 public:
  using Error::Error;
};

class OracleSizeError : public Error {
 public:
  using Error::Error;
};

/// Overlap fell below the floor; the relative phase is undefined.
class OrthogonalStatesError : public Error {
 public:
  OrthogonalStatesError(const std::string& what, double overlap)
      : Error(what), overlap_(overlap) {}

  double overlap() const { return overlap_; }

 private:
  double overlap_;
};

/// Sampling too coarse for the requested quantity (phase unwrapping,
/// finite differences, or the two dynamic-phase forms disagreeing).
class ResolutionError : public Error {
 public:
  using Error::Error;
};

class NotCyclicError : public Error {
 public:
  NotCyclicError(const std::string& what, double defect)
      : Error(what), defect_(defect) {}

  double defect() const { return defect_; }

 private:
  double defect_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace geomphase
