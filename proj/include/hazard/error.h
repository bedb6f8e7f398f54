#ifndef HAZARD_ERROR_H_
#define HAZARD_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hazard {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A probability outside [0, 1), or a non-finite one.
class InvalidProbabilityError : public Error {
 public:
  using Error::Error;
};

// Arguments outside the domain of a bound or model (n0 > n, b >= a, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

// Exact oracles refuse instances whose enumeration would not finish.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Input violates a structural contract (e.g. asymmetric graph given to
// an undirected algorithm).
class ContractError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Power iteration or quadrature did not reach the requested tolerance.
// Carries the last estimate so callers can still report it.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double best_estimate)
      : Error(what), best_estimate_(best_estimate) {}

  double best_estimate() const { return best_estimate_; }

 private:
  double best_estimate_;
};

// Experiment configuration problems; `what()` starts with the JSON path.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& path, const std::string& what)
      : Error(path + ": " + what), path_(path) {}

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace hazard

#endif  // HAZARD_ERROR_H_
