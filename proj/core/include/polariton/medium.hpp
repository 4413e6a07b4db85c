#ifndef POLARITON_MEDIUM_HPP
#define POLARITON_MEDIUM_HPP

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace polariton {

//
// Natural units: frequencies in units of the initial exciton frequency w1,
// times in 1/w1, wavenumbers in w1/c and couplings in w1*sqrt(eps0*rho).
//

struct MediumParams
{
  double eps0 = 1.0;
  double rho = 1.0;
  double c = 1.0;

  void validate() const;

  /// sqrt(eps0*rho): converts a dimensionless coupling into a physical one.
  double coupling_unit() const;
};

struct ConstantForm
{
  double value;
};

/// v1 for t <= 0, v2 for t >= T, and
/// v1 - (v1 - v2)/(2 pi) * (2 pi t/T - sin(2 pi t/T)) in between.
/// C2 at both ends, third derivative jumps.
struct SmoothRampForm
{
  double v1;
  double v2;
  double duration;
};

enum class SigmoidMode
{
  squared, // v(t)^2 = v1^2 + (v2^2 - v1^2) / (1 + exp(-t/tau))
  linear,  // v(t)   = v1   + (v2   - v1)   / (1 + exp(-t/tau))
};

struct SigmoidForm
{
  double v1;
  double v2;
  double tau;
  SigmoidMode mode;
};

/// One-sided values of a derivative. Equal except at the corners of a ramp.
struct OneSided
{
  double left;
  double right;

  bool discontinuous() const { return left != right; }
};

class Schedule
{
public:
  using Form = std::variant<ConstantForm, SmoothRampForm, SigmoidForm>;

  static Schedule constant(double value);
  static Schedule smooth_ramp(double v1, double v2, double duration);
  static Schedule sigmoid(double v1, double v2, double tau, SigmoidMode mode = SigmoidMode::squared);

  double eval(double t) const;
  double operator()(double t) const { return eval(t); }

  /// Closed-form derivative of order 1, 2 or 3.
  OneSided derivative(double t, int order) const;

  double initial_value() const;
  double final_value() const;

  /// Smallest interval outside of which the schedule deviates from its
  /// asymptotes by at most tail_eps (relative). Empty ([0, 0]) for constants.
  std::pair<double, double> settled_window(double tail_eps) const;

  /// Relative deviation from the asymptote on the side of t (left of 0 uses
  /// the initial value, right uses the final one).
  double tail_deviation(double t) const;

  /// Points where the schedule is not smooth; the integrator splits there.
  std::vector<double> breakpoints() const;

  /// Same shape with its time scale replaced: ramp duration = T, sigmoid tau = T/10.
  Schedule with_duration(double duration) const;

  bool is_constant() const;

  const Form& form() const { return form_; }
  std::string describe() const;

private:
  explicit Schedule(Form form);

  Form form_;
};

/// A homogeneous quench: exciton frequency and photon-exciton coupling as
/// functions of time. alpha is dimensionless (units of w1*sqrt(eps0*rho)).
struct QuenchSpec
{
  Schedule omega_x;
  Schedule alpha;
  MediumParams params;

  void validate() const;

  double omega_x_at(double t) const { return omega_x.eval(t); }
  /// Physical coupling alpha(t) * sqrt(eps0*rho).
  double coupling_at(double t) const;
};

} // namespace polariton

#endif // POLARITON_MEDIUM_HPP
