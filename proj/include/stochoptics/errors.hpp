#ifndef STOCHOPTICS_ERRORS_HPP
#define STOCHOPTICS_ERRORS_HPP

#include <cmath>
#include <stdexcept>
#include <string>

namespace stochoptics {

/// Input outside the mathematical domain of an operation (non-positive
/// temperature, empty ensemble, off-grid frequency, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A well-formed request whose parameters cannot be honoured by the
/// simulation (time step too coarse, filter not resolvable, ...).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError(std::string(name) + " must be positive and finite, got " +
                      std::to_string(value));
  }
}

inline void require_non_negative(double value, const char* name) {
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw DomainError(std::string(name) + " must be non-negative and finite, got " +
                      std::to_string(value));
  }
}

}  // namespace detail
}  // namespace stochoptics

#endif  // STOCHOPTICS_ERRORS_HPP
