#ifndef POLARITON_QUENCH_HPP
#define POLARITON_QUENCH_HPP

#include "polariton/hopfield.hpp"
#include "polariton/medium.hpp"
#include "polariton/ode.hpp"

#include <Eigen/Dense>

#include <utility>

namespace polariton {

/// Propagator of the quadratures (A, Pi, X, P) of one k-mode over [t_start, t_end].
struct TransferMatrix
{
  Mat4 matrix;
  double t_start = 0.0;
  double t_end = 0.0;
  /// Largest |M^T J M - J| seen at any accepted step. Diagnostic only; never corrected.
  double max_symplectic_residual = 0.0;
  IntegrationStats stats;
};

/// Out-branch annihilators in terms of in-branch ones:
///   (a2, b2)^T = alpha (a1, b1)^T + beta (a1^dagger, b1^dagger)^T.
/// Rows are out branches (lower, upper), columns in branches.
struct BogoliubovMatrix
{
  Eigen::Matrix2cd alpha;
  Eigen::Matrix2cd beta;

  /// max |alpha alpha^H - beta beta^H - I|.
  double pseudo_unitarity_residual() const;
};

/// Expected out-polaritons per mode and polarization, in the in-vacuum.
struct CreatedNumbers
{
  double lower = 0.0;
  double upper = 0.0;
};

struct QuenchOptions
{
  IntegratorOptions integrator;
  /// Relative deviation from the asymptotes at which a schedule counts as settled.
  double tail_eps = 1e-10;
  /// Extra constant-parameter time added on both sides of the settled window.
  double tail_padding = 0.0;
};

double symplectic_residual(const Mat4& m);

/// Union of the settled windows of both schedules.
std::pair<double, double> quench_window(const QuenchSpec& spec, double tail_eps);

/// Solves dz/dt = J h(t) z over [t0, t1]. Throws WindowTooSmall if either
/// schedule has not settled at the endpoints, IntegrationFailure if the
/// integrator gives up.
TransferMatrix transfer_matrix(const QuenchSpec& spec, ModePoint k, double t0, double t1,
                               const IntegratorOptions& options = {}, double tail_eps = 1e-10);

/// In-to-out Bogoliubov blocks. Both bases are referred to t = 0 by exact
/// free rotation on the constant tails, so the result does not depend on
/// the integration window once it covers the quench.
BogoliubovMatrix bogoliubov(const QuenchSpec& spec, ModePoint k, const QuenchOptions& options = {});

/// Row sums of |beta|^2. Throws InvalidBogoliubov if the pseudo-unitarity
/// residual exceeds 1e-6.
CreatedNumbers created_numbers(const BogoliubovMatrix& b);

} // namespace polariton

#endif // POLARITON_QUENCH_HPP
