#include "polariton/oracles.hpp"

#include "polariton/errors.hpp"

#include <cmath>
#include <numbers>

namespace polariton {

double log_sinh(double x)
{
  if (x < 1.0)
    return std::log(std::sinh(x));
  // sinh x = e^x (1 - e^-2x) / 2
  return x - std::numbers::ln2 + std::log1p(-std::exp(-2.0 * x));
}

double exact_sigmoid_number(const ExactSigmoidCase& c)
{
  if (!(c.omega1 > 0.0) || !(c.omega2 > 0.0) || !(c.tau > 0.0))
    throw ValidationError("exact_sigmoid_number: omega1, omega2 and tau must be > 0");
  if (c.omega1 == c.omega2)
    return 0.0;
  const double pi = std::numbers::pi;
  const double log_n = 2.0 * log_sinh(pi * std::abs(c.omega1 - c.omega2) * c.tau) -
                       log_sinh(2.0 * pi * c.omega1 * c.tau) - log_sinh(2.0 * pi * c.omega2 * c.tau);
  return std::exp(log_n);
}

double sudden_quench_number(double omega1, double omega2)
{
  if (!(omega1 > 0.0) || !(omega2 > 0.0))
    throw ValidationError("sudden_quench_number: frequencies must be > 0");
  const double d = omega1 - omega2;
  return d * d / (4.0 * omega1 * omega2);
}

} // namespace polariton
