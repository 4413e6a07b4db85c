#include "polariton/quench.hpp"

#include "polariton/errors.hpp"
#include "polariton/format.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

namespace polariton {

namespace {

using cd = std::complex<double>;

bool settled_at(const Schedule& s, double t0, double t1, double tail_eps)
{
  if (s.is_constant())
    return true;
  const auto [lo, hi] = s.settled_window(tail_eps);
  const double slack = 1e-9 * (std::abs(lo) + std::abs(hi) + 1.0);
  return t0 <= lo + slack && t1 >= hi - slack;
}

// Referral of an amplitude vector (a, a*, b, b*) at time t to t = 0 under free
// evolution a(t) = a(0) exp(-i w t).
Eigen::Vector4cd free_phases(const BranchFrequencies& f, double t)
{
  const cd pa = std::polar(1.0, f.lower * t);
  const cd pb = std::polar(1.0, f.upper * t);
  return {pa, std::conj(pa), pb, std::conj(pb)};
}

} // namespace

double symplectic_residual(const Mat4& m)
{
  return (m.transpose() * canonical_form() * m - canonical_form()).cwiseAbs().maxCoeff();
}

std::pair<double, double> quench_window(const QuenchSpec& spec, double tail_eps)
{
  double lo = 0.0, hi = 0.0;
  for (const Schedule* s : {&spec.omega_x, &spec.alpha}) {
    if (s->is_constant())
      continue;
    const auto [a, b] = s->settled_window(tail_eps);
    lo = std::min(lo, a);
    hi = std::max(hi, b);
  }
  return {lo, hi};
}

TransferMatrix transfer_matrix(const QuenchSpec& spec, ModePoint k, double t0, double t1,
                               const IntegratorOptions& options, double tail_eps)
{
  spec.validate();
  if (!(k.k > 0.0))
    throw ValidationError("transfer_matrix: k must be > 0");
  if (!(t1 >= t0))
    throw ValidationError("transfer_matrix: window must satisfy t0 <= t1");
  if (!settled_at(spec.omega_x, t0, t1, tail_eps) || !settled_at(spec.alpha, t0, t1, tail_eps))
    throw WindowTooSmall("transfer_matrix: schedules not settled on [" + format_double(t0) + ", " +
                         format_double(t1) + "]");

  const Generator generator = [&](double t) {
    return flow_matrix(spec.params, k, spec.omega_x_at(t), spec.coupling_at(t));
  };

  // Integrate piecewise so that ramp corners fall on step boundaries.
  std::vector<double> cuts{t0};
  for (const Schedule* s : {&spec.omega_x, &spec.alpha})
    for (double b : s->breakpoints())
      if (b > t0 && b < t1)
        cuts.push_back(b);
  cuts.push_back(t1);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  TransferMatrix out;
  out.t_start = t0;
  out.t_end = t1;
  out.matrix = Mat4::Identity();
  const StepObserver monitor = [&out](double, const Mat4& m) {
    out.max_symplectic_residual = std::max(out.max_symplectic_residual, symplectic_residual(m));
  };
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    out.matrix =
      integrate_linear_flow(generator, out.matrix, cuts[i], cuts[i + 1], options, monitor, &out.stats);
  return out;
}

BogoliubovMatrix bogoliubov(const QuenchSpec& spec, ModePoint k, const QuenchOptions& options)
{
  spec.validate();
  auto [t0, t1] = quench_window(spec, options.tail_eps);
  if (t1 > t0 || options.tail_padding > 0.0) {
    t0 -= options.tail_padding;
    t1 += options.tail_padding;
  }

  const NormalModeBasis in = normal_mode_basis(spec.params, k, spec.omega_x.initial_value(),
                                               spec.alpha.initial_value() * spec.params.coupling_unit());
  const NormalModeBasis out = normal_mode_basis(spec.params, k, spec.omega_x.final_value(),
                                                spec.alpha.final_value() * spec.params.coupling_unit());

  const Mat4 m = transfer_matrix(spec, k, t0, t1, options.integrator, options.tail_eps).matrix;

  // z(t0) = C_in^-1 Phi_in a_in(0),  a_out(0) = Phi_out C_out z(t1).
  const Eigen::Vector4cd phase_in = free_phases(in.frequencies, t0).conjugate();
  const Eigen::Vector4cd phase_out = free_phases(out.frequencies, t1);
  const CMat4 full =
    phase_out.asDiagonal() * (out.rows * m.cast<cd>() * in.inverse()) * phase_in.asDiagonal();

  BogoliubovMatrix b;
  b.alpha << full(0, 0), full(0, 2), full(2, 0), full(2, 2);
  b.beta << full(0, 1), full(0, 3), full(2, 1), full(2, 3);
  return b;
}

double BogoliubovMatrix::pseudo_unitarity_residual() const
{
  return (alpha * alpha.adjoint() - beta * beta.adjoint() - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
}

CreatedNumbers created_numbers(const BogoliubovMatrix& b)
{
  const double residual = b.pseudo_unitarity_residual();
  if (!(residual <= 1e-6))
    throw InvalidBogoliubov("created_numbers: pseudo-unitarity residual " + format_double(residual) +
                            " exceeds 1e-6");
  return {b.beta.row(0).squaredNorm(), b.beta.row(1).squaredNorm()};
}

} // namespace polariton
