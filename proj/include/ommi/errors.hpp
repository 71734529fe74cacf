// SPDX-License-Identifier: Apache-2.0

#ifndef OMMI_ERRORS_HPP
#define OMMI_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ommi
{

// Malformed or inconsistent configuration. key() names the offending entry.
class ConfigError : public std::invalid_argument
{
public:
  ConfigError(std::string key, const std::string &what)
    : std::invalid_argument(key + ": " + what), key_(std::move(key))
  {
  }
  const std::string &key() const { return key_; }

private:
  std::string key_;
};

// Numerical breakdown: singular local systems, NaN operator output, rank deficiency.
class NumericalError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// A full-order solve failed to reach its tolerance.
class ConvergenceError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

}  // namespace ommi

#endif  // OMMI_ERRORS_HPP
