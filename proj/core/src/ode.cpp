#include "polariton/ode.hpp"

#include "polariton/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace polariton {

namespace {

// Dormand & Prince (1980), RK5(4)7M.
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                 a65 = -5103.0 / 18656.0;
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0, b5 = -2187.0 / 6784.0,
                 b6 = 11.0 / 84.0;
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0, e5 = -17253.0 / 339200.0,
                 e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

} // namespace

Eigen::Matrix4d integrate_linear_flow(const Generator& generator, const Eigen::Matrix4d& initial, double t0,
                                      double t1, const IntegratorOptions& options,
                                      const StepObserver& observer, IntegrationStats* stats)
{
  using M4 = Eigen::Matrix4d;
  if (t1 == t0)
    return initial;
  if (!(options.rel_tol > 0.0))
    throw ValidationError("integrator: rel_tol must be > 0");

  const double rtol = options.rel_tol;
  const double atol = options.abs_tol > 0.0 ? options.abs_tol : rtol;
  const double dir = t1 > t0 ? 1.0 : -1.0;
  const double span = std::abs(t1 - t0);

  M4 y = initial;
  double t = t0;
  M4 k1 = generator(t) * y;

  // Initial step from the local rate of the generator.
  const double rate = std::max(generator(t).cwiseAbs().rowwise().sum().maxCoeff(), 1e-12);
  double h = std::min(span, 0.1 * std::pow(rtol, 0.2) / rate);

  IntegrationStats local;
  IntegrationStats& st = stats ? *stats : local;

  for (std::size_t n = 0; n < options.max_steps; ++n) {
    const double remaining = std::abs(t1 - t);
    if (remaining <= 0.0)
      return y;
    bool last = false;
    if (h >= remaining) {
      h = remaining;
      last = true;
    }
    const double hs = dir * h;

    const M4 k2 = generator(t + c2 * hs) * (y + hs * (a21 * k1));
    const M4 k3 = generator(t + c3 * hs) * (y + hs * (a31 * k1 + a32 * k2));
    const M4 k4 = generator(t + c4 * hs) * (y + hs * (a41 * k1 + a42 * k2 + a43 * k3));
    const M4 k5 = generator(t + c5 * hs) * (y + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const double t_new = last ? t1 : t + hs;
    const M4 k6 = generator(t + hs) * (y + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const M4 y_new = y + hs * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const M4 k7 = generator(t_new) * y_new;
    const M4 err = hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    const M4 scale = (atol + rtol * y.cwiseAbs().cwiseMax(y_new.cwiseAbs()).array()).matrix();
    const double err_norm = err.cwiseQuotient(scale).cwiseAbs().maxCoeff();

    if (!std::isfinite(err_norm))
      throw IntegrationFailure("integrator: non-finite state at t = " + std::to_string(t));

    if (err_norm <= 1.0) {
      t = t_new;
      y = y_new;
      k1 = k7;
      ++st.accepted;
      if (observer)
        observer(t, y);
      if (last)
        return y;
      const double fac = err_norm == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err_norm, -0.2), 0.2, 5.0);
      h *= fac;
    } else {
      ++st.rejected;
      h *= std::max(0.2, 0.9 * std::pow(err_norm, -0.2));
    }
    if (h < 16.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(t), span))
      throw IntegrationFailure("integrator: step size underflow at t = " + std::to_string(t));
  }
  throw IntegrationFailure("integrator: exceeded max_steps");
}

} // namespace polariton
