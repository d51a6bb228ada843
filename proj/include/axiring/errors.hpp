#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace axiring {

// Kernel evaluated on its diagonal without regularization.
class SingularityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Adaptive quadrature exceeded its bisection-depth (node doubling) budget.
class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-finite velocity during time stepping; carries the offending particle.
class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(std::size_t particle_index, const std::string& what)
      : std::runtime_error(what), particle_index(particle_index) {}
  std::size_t particle_index;
};

// Initial profile produced no particles above the support threshold.
class EmptySupportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or ill-typed run configuration; carries the offending field.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace axiring
