#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hiplab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptyHypergraph : public Error {
 public:
  EmptyHypergraph() : Error("hypergraph has no hyperedges") {}
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Structural invariant violated on programmatic construction.
class InvalidHypergraph : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// exact_influence refused an instance whose outcome tree is too large.
class OracleLimit : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(what + " (residual " + std::to_string(residual) + ")"), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class MetricError : public Error {
 public:
  using Error::Error;
};

class DataError : public Error {
 public:
  using Error::Error;
};

}  // namespace hiplab
