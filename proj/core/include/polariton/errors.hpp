#ifndef POLARITON_ERRORS_HPP
#define POLARITON_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace polariton {

class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Invalid input: bad parameters, malformed config, empty grids.
class ValidationError : public Error
{
public:
  using Error::Error;
};

/// The two polariton branches coincide (zero coupling at the photon/exciton crossing).
class DegenerateMode : public Error
{
public:
  using Error::Error;
};

class IntegrationFailure : public Error
{
public:
  using Error::Error;
};

/// The integration window does not reach the constant tails of the schedules.
class WindowTooSmall : public Error
{
public:
  using Error::Error;
};

class InvalidBogoliubov : public Error
{
public:
  using Error::Error;
};

class IndefiniteHamiltonian : public Error
{
public:
  using Error::Error;
};

class RecurrenceHorizonExceeded : public Error
{
public:
  using Error::Error;
};

/// Reading or writing a file failed; the message names the path.
class IoError : public Error
{
public:
  using Error::Error;
};

} // namespace polariton

#endif // POLARITON_ERRORS_HPP
