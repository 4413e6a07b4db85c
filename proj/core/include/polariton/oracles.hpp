#ifndef POLARITON_ORACLES_HPP
#define POLARITON_ORACLES_HPP

namespace polariton {

/// Sigmoid quench of a bare oscillator, w^2(t) = w1^2 + (w2^2 - w1^2)/(1 + exp(-t/tau)).
struct ExactSigmoidCase
{
  double omega1;
  double omega2;
  double tau;
};

/// Created quanta per mode for the sigmoid quench:
///   sinh^2(pi (w1 - w2) tau) / (sinh(2 pi w1 tau) sinh(2 pi w2 tau)),
/// assembled in log space so that it stays finite far below 1e-300.
double exact_sigmoid_number(const ExactSigmoidCase& c);

/// Instantaneous frequency jump w1 -> w2: (w1 - w2)^2 / (4 w1 w2).
double sudden_quench_number(double omega1, double omega2);

/// log(sinh(x)) for x > 0, accurate for both small and huge x.
double log_sinh(double x);

} // namespace polariton

#endif // POLARITON_ORACLES_HPP
