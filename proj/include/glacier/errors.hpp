#pragma once

#include <stdexcept>
#include <string>

namespace glacier {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain where a formula is defined (e.g. lambda <= 0).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A derivative was requested at a kink of a piecewise-linear response.
class NonDifferentiablePoint : public DomainError {
 public:
  using DomainError::DomainError;
};

/// |x| > l in the ice-sheet profile.
class OutOfProfile : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Negative radicand in the snow-line position.
class ComplexSnowline : public DomainError {
 public:
  using DomainError::DomainError;
};

class ScaleError : public Error {
 public:
  ScaleError(std::string symbol, const std::string& what)
      : Error(what), symbol_(std::move(symbol)) {}
  const std::string& symbol() const noexcept { return symbol_; }

 private:
  std::string symbol_;
};

/// The two-branch hypothesis for the lambda-nullcline fails; carries the
/// critical epsilon that was crossed.
class NoBranches : public DomainError {
 public:
  NoBranches(double threshold, const std::string& what)
      : DomainError(what), threshold_(threshold) {}
  double threshold() const noexcept { return threshold_; }

 private:
  double threshold_;
};

class DegenerateSlope : public DomainError {
 public:
  using DomainError::DomainError;
};

class NotHopfCandidate : public DomainError {
 public:
  using DomainError::DomainError;
};

class NotTangent : public DomainError {
 public:
  using DomainError::DomainError;
};

class ConditioningError : public Error {
 public:
  using Error::Error;
};

class OracleMismatch : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Step size collapsed during integration; keeps the last accepted state.
class StiffnessError : public Error {
 public:
  StiffnessError(double t, double theta, double lambda, const std::string& what)
      : Error(what), t_(t), theta_(theta), lambda_(lambda) {}
  double time() const noexcept { return t_; }
  double theta() const noexcept { return theta_; }
  double lambda() const noexcept { return lambda_; }

 private:
  double t_, theta_, lambda_;
};

}  // namespace glacier
