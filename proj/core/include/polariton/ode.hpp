#ifndef POLARITON_ODE_HPP
#define POLARITON_ODE_HPP

#include <Eigen/Dense>

#include <cstddef>
#include <functional>

namespace polariton {

struct IntegratorOptions
{
  double rel_tol = 1e-12;
  /// Absolute tolerance; defaults to rel_tol when <= 0.
  double abs_tol = 0.0;
  std::size_t max_steps = 5'000'000;
};

struct IntegrationStats
{
  std::size_t accepted = 0;
  std::size_t rejected = 0;
};

/// Generator G(t) of the linear flow dM/dt = G(t) M.
using Generator = std::function<Eigen::Matrix4d(double)>;

/// Called after every accepted step with the current time and state.
using StepObserver = std::function<void(double, const Eigen::Matrix4d&)>;

/// Integrates dM/dt = G(t) M from t0 to t1 with the Dormand-Prince 5(4)
/// embedded pair and standard step-size control. The error of each step is
/// measured entry-wise against abs_tol + rel_tol * |M_ij| (max norm).
/// Throws IntegrationFailure when the step size underflows or max_steps is hit.
Eigen::Matrix4d integrate_linear_flow(const Generator& generator, const Eigen::Matrix4d& initial, double t0,
                                      double t1, const IntegratorOptions& options,
                                      const StepObserver& observer = {}, IntegrationStats* stats = nullptr);

} // namespace polariton

#endif // POLARITON_ODE_HPP
