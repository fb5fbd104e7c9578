#pragma once

#include <stdexcept>
#include <string>

namespace atomlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad atom, bad spec file, out-of-range vertex, size cap.
class SpecError : public Error {
public:
  using Error::Error;
};

/// The atom exceeds the brute-force symmetry cap.
class AtomTooLarge : public SpecError {
public:
  using SpecError::SpecError;
};

/// Constraints that no configuration (or no probability vector) can satisfy.
class InfeasibleError : public Error {
public:
  using Error::Error;
};

/// The l-series of the sparse entropy expansion is not decreasing.
class SeriesDivergence : public Error {
public:
  SeriesDivergence(const std::string& what, double last_term)
      : Error(what), last_term_(last_term) {}
  double last_term() const noexcept { return last_term_; }

private:
  double last_term_;
};

/// Fixed-point solver ran out of iterations.
class ConvergenceError : public Error {
public:
  ConvergenceError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

private:
  double residual_;
};

/// Stub matching hit the restart cap.
class SamplerExhausted : public Error {
public:
  SamplerExhausted(const std::string& what, double observed_acceptance)
      : Error(what), observed_acceptance_(observed_acceptance) {}
  double observed_acceptance() const noexcept { return observed_acceptance_; }

private:
  double observed_acceptance_;
};

/// Exhaustive oracle refused an input above its size cap.
class OracleRefused : public Error {
public:
  using Error::Error;
};

}  // namespace atomlab
