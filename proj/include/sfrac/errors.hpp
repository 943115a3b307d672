#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace sfrac {

// Every failure mode surfaced by the library derives from std::exception so the
// CLI can map it to an exit code without knowing the module it came from.

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DeformationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Iterative method stopped before reaching its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual, std::size_t iterations)
      : std::runtime_error(what + " (residual " + std::to_string(residual) + " after " +
                           std::to_string(iterations) + " iterations)"),
        base_(what),
        residual_(residual),
        iterations_(iterations) {}

  // Same error with `prefix` prepended to the message.
  ConvergenceError with_context(const std::string& prefix) const {
    return ConvergenceError(prefix + base_, residual_, iterations_);
  }

  double residual() const noexcept { return residual_; }
  std::size_t iterations() const noexcept { return iterations_; }

 private:
  std::string base_;
  double residual_;
  std::size_t iterations_;
};

// Bayes conditioning at a point where the evidence density vanishes.
class UndefinedObservation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Too many realizations of an ensemble failed; `diagnostics` lists them.
class EnsembleError : public std::runtime_error {
 public:
  EnsembleError(const std::string& what, std::vector<std::string> diagnostics)
      : std::runtime_error(what), diagnostics_(std::move(diagnostics)) {}

  const std::vector<std::string>& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::vector<std::string> diagnostics_;
};

}  // namespace sfrac
