#include "polariton/medium.hpp"

#include "polariton/errors.hpp"
#include "polariton/format.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace polariton {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

template <class... Ts>
struct overloaded : Ts...
{
  using Ts::operator()...;
};

// Logistic function and its first three derivatives with respect to s.
struct Logistic
{
  double s0, s1, s2, s3;

  explicit Logistic(double s)
  {
    // 1/(1+e^-s) without overflow for large |s|.
    s0 = s >= 0.0 ? 1.0 / (1.0 + std::exp(-s)) : std::exp(s) / (1.0 + std::exp(s));
    const double q = s0 * (1.0 - s0);
    s1 = q;
    s2 = q * (1.0 - 2.0 * s0);
    s3 = q * (1.0 - 6.0 * s0 + 6.0 * s0 * s0);
  }
};

double sigmoid_value(const SigmoidForm& f, double t)
{
  const Logistic l(t / f.tau);
  if (f.mode == SigmoidMode::linear)
    return f.v1 + (f.v2 - f.v1) * l.s0;
  const double sq = f.v1 * f.v1 + (f.v2 * f.v2 - f.v1 * f.v1) * l.s0;
  return std::sqrt(std::max(sq, 0.0));
}

double sigmoid_derivative(const SigmoidForm& f, double t, int order)
{
  const Logistic l(t / f.tau);
  const double inv = 1.0 / f.tau;
  if (f.mode == SigmoidMode::linear) {
    const double d = f.v2 - f.v1;
    switch (order) {
    case 1: return d * l.s1 * inv;
    case 2: return d * l.s2 * inv * inv;
    default: return d * l.s3 * inv * inv * inv;
    }
  }
  // v^2 = g(t): 2 v v' = g', 2 v'^2 + 2 v v'' = g'', 6 v' v'' + 2 v v''' = g'''.
  const double d = f.v2 * f.v2 - f.v1 * f.v1;
  const double g1 = d * l.s1 * inv;
  const double g2 = d * l.s2 * inv * inv;
  const double g3 = d * l.s3 * inv * inv * inv;
  const double v = sigmoid_value(f, t);
  const double v1 = g1 / (2.0 * v);
  if (order == 1)
    return v1;
  const double v2 = (g2 - 2.0 * v1 * v1) / (2.0 * v);
  if (order == 2)
    return v2;
  return (g3 - 6.0 * v1 * v2) / (2.0 * v);
}

double ramp_value(const SmoothRampForm& f, double t)
{
  if (t <= 0.0)
    return f.v1;
  if (t >= f.duration)
    return f.v2;
  const double theta = two_pi * t / f.duration;
  return f.v1 - (f.v1 - f.v2) / two_pi * (theta - std::sin(theta));
}

// Interior derivative, valid on the closed interval [0, T] as a one-sided limit.
double ramp_interior_derivative(const SmoothRampForm& f, double t, int order)
{
  const double theta = two_pi * t / f.duration;
  const double rate = (f.v1 - f.v2) / f.duration;
  const double w = two_pi / f.duration;
  switch (order) {
  case 1: return -rate * (1.0 - std::cos(theta));
  case 2: return -rate * w * std::sin(theta);
  default: return -rate * w * w * std::cos(theta);
  }
}

void require_nonnegative(double v, const char* what)
{
  if (!(v >= 0.0) || !std::isfinite(v))
    throw ValidationError(std::string("schedule ") + what + " must be finite and >= 0");
}

} // namespace

void MediumParams::validate() const
{
  if (!(eps0 > 0.0) || !(rho > 0.0) || !(c > 0.0))
    throw ValidationError("medium parameters eps0, rho, c must be strictly positive");
}

double MediumParams::coupling_unit() const { return std::sqrt(eps0 * rho); }

Schedule::Schedule(Form form)
  : form_(std::move(form))
{
}

Schedule Schedule::constant(double value)
{
  require_nonnegative(value, "value");
  return Schedule(ConstantForm{value});
}

Schedule Schedule::smooth_ramp(double v1, double v2, double duration)
{
  require_nonnegative(v1, "v1");
  require_nonnegative(v2, "v2");
  if (!(duration > 0.0) || !std::isfinite(duration))
    throw ValidationError("ramp duration T must be > 0");
  return Schedule(SmoothRampForm{v1, v2, duration});
}

Schedule Schedule::sigmoid(double v1, double v2, double tau, SigmoidMode mode)
{
  require_nonnegative(v1, "v1");
  require_nonnegative(v2, "v2");
  if (!(tau > 0.0) || !std::isfinite(tau))
    throw ValidationError("sigmoid tau must be > 0");
  return Schedule(SigmoidForm{v1, v2, tau, mode});
}

double Schedule::eval(double t) const
{
  return std::visit(overloaded{
                      [](const ConstantForm& f) { return f.value; },
                      [t](const SmoothRampForm& f) { return ramp_value(f, t); },
                      [t](const SigmoidForm& f) { return sigmoid_value(f, t); },
                    },
                    form_);
}

OneSided Schedule::derivative(double t, int order) const
{
  if (order < 1 || order > 3)
    throw ValidationError("derivative order must be 1, 2 or 3");
  return std::visit(overloaded{
                      [](const ConstantForm&) { return OneSided{0.0, 0.0}; },
                      [&](const SmoothRampForm& f) {
                        const double left =
                          (t <= 0.0 || t > f.duration) ? 0.0 : ramp_interior_derivative(f, t, order);
                        const double right =
                          (t < 0.0 || t >= f.duration) ? 0.0 : ramp_interior_derivative(f, t, order);
                        return OneSided{left, right};
                      },
                      [&](const SigmoidForm& f) {
                        const double d = sigmoid_derivative(f, t, order);
                        return OneSided{d, d};
                      },
                    },
                    form_);
}

double Schedule::initial_value() const
{
  return std::visit(overloaded{
                      [](const ConstantForm& f) { return f.value; },
                      [](const SmoothRampForm& f) { return f.v1; },
                      [](const SigmoidForm& f) { return f.v1; },
                    },
                    form_);
}

double Schedule::final_value() const
{
  return std::visit(overloaded{
                      [](const ConstantForm& f) { return f.value; },
                      [](const SmoothRampForm& f) { return f.v2; },
                      [](const SigmoidForm& f) { return f.v2; },
                    },
                    form_);
}

double Schedule::tail_deviation(double t) const
{
  const double asym = t < 0.0 ? initial_value() : final_value();
  const double scale = std::max({std::abs(initial_value()), std::abs(final_value()), 1e-300});
  return std::abs(eval(t) - asym) / scale;
}

std::pair<double, double> Schedule::settled_window(double tail_eps) const
{
  return std::visit(overloaded{
                      [](const ConstantForm&) { return std::pair{0.0, 0.0}; },
                      [](const SmoothRampForm& f) { return std::pair{0.0, f.duration}; },
                      [&](const SigmoidForm& f) {
                        if (f.v1 == f.v2)
                          return std::pair{0.0, 0.0};
                        // Deviation is monotone in |t| on each side; bisect in units of tau.
                        auto cut = [&](double sign) {
                          double lo = 0.0, hi = 1.0;
                          while (tail_deviation(sign * hi * f.tau) > tail_eps && hi < 1e4)
                            hi *= 2.0;
                          for (int i = 0; i < 200 && hi - lo > 1e-12 * hi; ++i) {
                            const double mid = 0.5 * (lo + hi);
                            (tail_deviation(sign * mid * f.tau) > tail_eps ? lo : hi) = mid;
                          }
                          return sign * hi * f.tau;
                        };
                        return std::pair{cut(-1.0), cut(+1.0)};
                      },
                    },
                    form_);
}

std::vector<double> Schedule::breakpoints() const
{
  if (const auto* r = std::get_if<SmoothRampForm>(&form_))
    return {0.0, r->duration};
  return {};
}

Schedule Schedule::with_duration(double duration) const
{
  return std::visit(overloaded{
                      [&](const ConstantForm&) { return *this; },
                      [&](const SmoothRampForm& f) { return smooth_ramp(f.v1, f.v2, duration); },
                      [&](const SigmoidForm& f) { return sigmoid(f.v1, f.v2, duration / 10.0, f.mode); },
                    },
                    form_);
}

bool Schedule::is_constant() const
{
  return std::holds_alternative<ConstantForm>(form_) || initial_value() == final_value();
}

std::string Schedule::describe() const
{
  return std::visit(overloaded{
                      [](const ConstantForm& f) { return "constant(" + format_double(f.value) + ")"; },
                      [](const SmoothRampForm& f) {
                        return "ramp(v1=" + format_double(f.v1) + ", v2=" + format_double(f.v2) +
                               ", T=" + format_double(f.duration) + ")";
                      },
                      [](const SigmoidForm& f) {
                        return std::string(f.mode == SigmoidMode::squared ? "sigmoid2" : "sigmoid") +
                               "(v1=" + format_double(f.v1) + ", v2=" + format_double(f.v2) +
                               ", tau=" + format_double(f.tau) + ")";
                      },
                    },
                    form_);
}

void QuenchSpec::validate() const
{
  params.validate();
  if (!(omega_x.initial_value() > 0.0) || !(omega_x.final_value() > 0.0))
    throw ValidationError("exciton frequency must be > 0 at both ends of the quench");
}

double QuenchSpec::coupling_at(double t) const { return alpha.eval(t) * params.coupling_unit(); }

} // namespace polariton
