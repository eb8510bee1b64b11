#pragma once

#include <stdexcept>
#include <string>

namespace shockwave {

/// Base of every error raised by the library. `stage()` names the module
/// that raised it so orchestration code can label failures.
class Error : public std::runtime_error {
public:
  Error(std::string stage, const std::string& what)
      : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}

  const std::string& stage() const noexcept { return stage_; }

private:
  std::string stage_;
};

class DomainError : public Error {
public:
  using Error::Error;
};

class NoTwoShockSolution : public Error {
public:
  explicit NoTwoShockSolution(const std::string& what) : Error("riemann", what) {}
};

class BracketError : public Error {
public:
  BracketError(const std::string& stage, const std::string& what, double lo, double hi)
      : Error(stage, what), lo_(lo), hi_(hi) {}
  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }

private:
  double lo_, hi_;
};

class DegenerateWave : public Error {
public:
  using Error::Error;
};

class IntegrationError : public Error {
public:
  using Error::Error;
};

class TruncationError : public Error {
public:
  TruncationError(const std::string& stage, const std::string& what, double residual)
      : Error(stage, what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

private:
  double residual_;
};

class ConfigError : public Error {
public:
  explicit ConfigError(const std::string& what) : Error("config", what) {}
};

} // namespace shockwave
