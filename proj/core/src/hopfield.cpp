#include "polariton/hopfield.hpp"

#include "polariton/errors.hpp"

#include <cmath>
#include <complex>

namespace polariton {

namespace {

using cd = std::complex<double>;
constexpr cd I{0.0, 1.0};

// Squared branch frequency together with the detunings c^2k^2 - w^2 and
// wx^2 - w^2, each computed without cancellation.
struct BranchRoot
{
  double omega;
  double photon_detuning;
  double exciton_detuning;
};

struct Roots
{
  BranchRoot lower;
  BranchRoot upper;
};

Roots solve_roots(const MediumParams& params, ModePoint k, double omega_x, double alpha)
{
  params.validate();
  if (!(k.k >= 0.0) || !(omega_x > 0.0) || !(alpha >= 0.0))
    throw ValidationError("hopfield: need k >= 0, omega_x > 0, alpha >= 0");

  const double k2 = params.c * params.c * k.k * k.k;
  const double w2 = omega_x * omega_x;
  const double g = alpha * alpha / (params.eps0 * params.rho);
  const double m = std::min(k2, w2);
  const double big = std::max(k2, w2);
  const double gap = big - m;

  // Discriminant of s^2 - (k2 + w2 + g) s + k2 w2 = 0, as a sum of non-negative terms.
  const double sqrt_disc = std::sqrt(gap * gap + 2.0 * (big + m) * g + g * g);
  if (sqrt_disc <= 1e-12 * (k2 + w2 + g))
    throw DegenerateMode("hopfield: lower and upper branch coincide (alpha -> 0 at c k = omega_x)");

  // u = m - s_lower > 0 and v = s_upper - big > 0 from their own quadratics.
  const double u = (m > 0.0 && g > 0.0) ? 2.0 * m * g / ((gap + g) + sqrt_disc) : 0.0;
  double v = 0.0;
  if (g > 0.0)
    v = g >= gap ? 0.5 * ((g - gap) + sqrt_disc) : 2.0 * big * g / ((gap - g) + sqrt_disc);

  const double s_upper = big + v;
  const double s_lower = m * big / s_upper;

  Roots r{};
  r.lower.omega = std::sqrt(s_lower);
  r.upper.omega = std::sqrt(s_upper);
  if (k2 <= w2) {
    r.lower.photon_detuning = u;
    r.lower.exciton_detuning = gap + u;
    r.upper.photon_detuning = -(gap + v);
    r.upper.exciton_detuning = -v;
  } else {
    r.lower.photon_detuning = gap + u;
    r.lower.exciton_detuning = u;
    r.upper.photon_detuning = -v;
    r.upper.exciton_detuning = -(gap + v);
  }
  return r;
}

// Annihilation row for one branch, from the right eigenvector v of J h with
// eigenvalue -i w: row = v^H J, then normalized and phase-fixed.
Eigen::RowVector4cd annihilation_row(const MediumParams& params, const BranchRoot& b, double alpha)
{
  const double w = b.omega;
  cd amp_a, amp_x;
  if (alpha == 0.0) {
    const bool photon = b.photon_detuning == 0.0;
    amp_a = photon ? 1.0 : 0.0;
    amp_x = photon ? 0.0 : 1.0;
  } else if (params.coupling_unit() * std::abs(b.photon_detuning) <= w * alpha) {
    amp_a = 1.0;
    amp_x = -I * params.eps0 * b.photon_detuning / (w * alpha);
  } else {
    amp_x = 1.0;
    amp_a = I * params.rho * b.exciton_detuning / (w * alpha);
  }
  const cd amp_pi = -I * w * params.eps0 * amp_a;
  const cd amp_p = -I * w * params.rho * amp_x - alpha * amp_a;

  Eigen::RowVector4cd row;
  row << -std::conj(amp_pi), std::conj(amp_a), -std::conj(amp_p), std::conj(amp_x);

  const cd norm = row * canonical_form().cast<cd>() * row.adjoint();
  const double weight = (I * norm).real();
  if (!(weight > 0.0))
    throw DegenerateMode("hopfield: branch row has non-positive symplectic norm");
  row /= std::sqrt(weight);

  const double scale = row.cwiseAbs().maxCoeff();
  const cd ref = std::abs(row(0)) > 1e-14 * scale ? row(0) : row(2);
  row *= std::conj(ref) / std::abs(ref);
  return row;
}

} // namespace

const Mat4& canonical_form()
{
  static const Mat4 j = [] {
    Mat4 m = Mat4::Zero();
    m(0, 1) = 1.0;
    m(1, 0) = -1.0;
    m(2, 3) = 1.0;
    m(3, 2) = -1.0;
    return m;
  }();
  return j;
}

const Eigen::Vector4d& branch_signature()
{
  static const Eigen::Vector4d d(1.0, -1.0, 1.0, -1.0);
  return d;
}

Mat4 hamiltonian_matrix(const MediumParams& params, ModePoint k, double omega_x, double alpha)
{
  Mat4 h = Mat4::Zero();
  h(0, 0) = params.eps0 * params.c * params.c * k.k * k.k + alpha * alpha / params.rho;
  h(1, 1) = 1.0 / params.eps0;
  h(2, 2) = params.rho * omega_x * omega_x;
  h(3, 3) = 1.0 / params.rho;
  h(0, 3) = h(3, 0) = alpha / params.rho;
  return h;
}

Mat4 flow_matrix(const MediumParams& params, ModePoint k, double omega_x, double alpha)
{
  return canonical_form() * hamiltonian_matrix(params, k, omega_x, alpha);
}

BranchFrequencies branch_frequencies(const MediumParams& params, ModePoint k, double omega_x, double alpha)
{
  const Roots r = solve_roots(params, k, omega_x, alpha);
  return {r.lower.omega, r.upper.omega};
}

NormalModeBasis normal_mode_basis(const MediumParams& params, ModePoint k, double omega_x, double alpha)
{
  if (!(k.k > 0.0))
    throw ValidationError("normal_mode_basis: k must be > 0");
  const Roots r = solve_roots(params, k, omega_x, alpha);
  const Eigen::RowVector4cd a = annihilation_row(params, r.lower, alpha);
  const Eigen::RowVector4cd b = annihilation_row(params, r.upper, alpha);

  NormalModeBasis basis;
  basis.rows.row(0) = a;
  basis.rows.row(1) = a.conjugate();
  basis.rows.row(2) = b;
  basis.rows.row(3) = b.conjugate();
  basis.frequencies = {r.lower.omega, r.upper.omega};
  return basis;
}

CMat4 NormalModeBasis::inverse() const
{
  const CMat4 d = (I * branch_signature().cast<cd>()).asDiagonal();
  return canonical_form().cast<cd>() * rows.adjoint() * d;
}

double normalization_residual(const NormalModeBasis& basis)
{
  const CMat4 expected = (-I * branch_signature().cast<cd>()).asDiagonal();
  const CMat4 got = basis.rows * canonical_form().cast<cd>() * basis.rows.adjoint();
  return (got - expected).cwiseAbs().maxCoeff();
}

} // namespace polariton
