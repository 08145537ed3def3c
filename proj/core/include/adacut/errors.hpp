#pragma once

#include <stdexcept>
#include <string>

namespace adacut {

//! Invalid model parameters, scenario definitions or problem setups.
class ConfigError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

//! A call argument outside the operation's domain (negative cutoff,
//! off-grid endpoint, empty sample, ...).
class ArgumentError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

//! An input violated a structural precondition of the operation, e.g. a
//! non-Hermitian spectrum passed to Fourier inversion.
class ContractViolation : public std::logic_error
{
public:
  using std::logic_error::logic_error;
};

} // namespace adacut
