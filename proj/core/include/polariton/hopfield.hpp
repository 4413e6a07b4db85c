#ifndef POLARITON_HOPFIELD_HPP
#define POLARITON_HOPFIELD_HPP

#include "polariton/medium.hpp"

#include <Eigen/Dense>

namespace polariton {

// Single-k photon-exciton system in the quadratures z = (A, Pi, X, P):
//
//   H = Pi^2/(2 eps0) + eps0 c^2 k^2 A^2/2 + (P + alpha A)^2/(2 rho) + rho wx^2 X^2/2
//
// with Pi = eps0 dA/dt and P = rho dX/dt - alpha A. Both transverse
// polarizations obey the same equations, so one copy is modelled and every
// reported number is per mode per polarization.

using Mat4 = Eigen::Matrix4d;
using CMat4 = Eigen::Matrix4cd;

struct ModePoint
{
  double k;
};

struct BranchFrequencies
{
  double lower;
  double upper;
};

/// Rows of `rows` are the amplitudes (a, a*, b, b*) as linear functionals of
/// (A, Pi, X, P); a is the lower branch, b the upper one. Normalized so that
/// rows * J * rows^H = -i diag(1, -1, 1, -1), i.e. [a, a^dagger] = 1.
/// The A coefficient of each annihilation row is real and positive (the X
/// coefficient when the A coefficient vanishes).
struct NormalModeBasis
{
  CMat4 rows;
  BranchFrequencies frequencies;

  /// rows^-1 = J rows^H (i D), from the normalization.
  CMat4 inverse() const;
};

/// Canonical symplectic form on (A, Pi, X, P); dz/dt = J h z.
const Mat4& canonical_form();

/// diag(+1, -1, +1, -1): signature of the (a, a*, b, b*) rows.
const Eigen::Vector4d& branch_signature();

/// Quadratic-form matrix h with H = z^T h z / 2. `alpha` is the physical coupling.
Mat4 hamiltonian_matrix(const MediumParams& params, ModePoint k, double omega_x, double alpha);

/// J h.
Mat4 flow_matrix(const MediumParams& params, ModePoint k, double omega_x, double alpha);

/// Positive roots of (w^2 - c^2 k^2)(w^2 - wx^2) = w^2 alpha^2 / (eps0 rho).
/// Throws DegenerateMode when the two branches cannot be separated.
BranchFrequencies branch_frequencies(const MediumParams& params, ModePoint k, double omega_x, double alpha);

NormalModeBasis normal_mode_basis(const MediumParams& params, ModePoint k, double omega_x, double alpha);

/// max |C J C^H + i D|.
double normalization_residual(const NormalModeBasis& basis);

} // namespace polariton

#endif // POLARITON_HOPFIELD_HPP
