#include "polariton/cavity.hpp"

#include "polariton/errors.hpp"
#include "polariton/format.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

namespace polariton {

namespace {

using cd = std::complex<double>;
constexpr double pi = std::numbers::pi;

double interpolate(const Eigen::VectorXd& xs, const Eigen::VectorXd& ys, double x)
{
  const auto n = xs.size();
  if (x <= xs(0))
    return ys(0);
  if (x >= xs(n - 1))
    return ys(n - 1);
  const auto* it = std::upper_bound(xs.data(), xs.data() + n, x);
  const auto hi = static_cast<Eigen::Index>(it - xs.data());
  const auto lo = hi - 1;
  const double f = (x - xs(lo)) / (xs(hi) - xs(lo));
  return ys(lo) + f * (ys(hi) - ys(lo));
}

// Coefficients of the bare photon annihilator a_f on A_i and (after dividing
// by i) on Pi_i.
struct PhotonFunctional
{
  Eigen::VectorXd on_position;
  Eigen::VectorXd on_momentum;
};

PhotonFunctional photon_functional(const CavityGeometry& geom, const MediumParams& params,
                                   const InitialPhoton& initial)
{
  const auto n = static_cast<Eigen::Index>(geom.n_x);
  if (initial.box_amplitudes.size() != n)
    throw ValidationError("photon_survival: initial state has wrong number of box amplitudes");
  const double dx = geom.spacing();
  PhotonFunctional f{Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n)};
  for (Eigen::Index j = 0; j < n; ++j) {
    const double amp = initial.box_amplitudes(j);
    if (amp == 0.0)
      continue;
    const double w = geom.box_mode_frequency(static_cast<std::size_t>(j + 1), params);
    const Eigen::VectorXd u = geom.box_mode_profile(static_cast<std::size_t>(j + 1));
    // a_j = (sqrt(eps0 w) q_j + i p_j / sqrt(eps0 w)) / sqrt 2,
    // q_j = sum_i dx u_j(x_i) A_i, p_j = sum_i u_j(x_i) Pi_i.
    f.on_position += amp * std::sqrt(params.eps0 * w / 2.0) * dx * u;
    f.on_momentum += amp / std::sqrt(2.0 * params.eps0 * w) * u;
  }
  return f;
}

} // namespace

// ---------------------------------------------------------------------------
// Geometry and continuum

void CavityGeometry::validate() const
{
  if (!(box_length > 0.0) || !(gap_length > 0.0) || !(gap_length < box_length))
    throw ValidationError("cavity: need 0 < gap_length < box_length");
  if (n_x < 64)
    throw ValidationError("cavity: n_x must be >= 64");
}

double CavityGeometry::spacing() const { return box_length / static_cast<double>(n_x + 1); }

double CavityGeometry::position(std::size_t i) const
{
  return -0.5 * box_length + static_cast<double>(i + 1) * spacing();
}

bool CavityGeometry::is_material(std::size_t i) const
{
  return std::abs(position(i)) >= 0.5 * gap_length - 1e-12 * box_length;
}

std::vector<std::size_t> CavityGeometry::material_sites() const
{
  std::vector<std::size_t> sites;
  for (std::size_t i = 0; i < n_x; ++i)
    if (is_material(i))
      sites.push_back(i);
  return sites;
}

double CavityGeometry::box_mode_frequency(std::size_t j, const MediumParams& params) const
{
  const double theta = static_cast<double>(j) * pi / static_cast<double>(n_x + 1);
  return 2.0 * params.c / spacing() * std::sin(0.5 * theta);
}

Eigen::VectorXd CavityGeometry::box_mode_profile(std::size_t j) const
{
  if (j < 1 || j > n_x)
    throw ValidationError("cavity: box mode index must be in 1..n_x");
  Eigen::VectorXd u(static_cast<Eigen::Index>(n_x));
  const double norm = std::sqrt(2.0 / box_length);
  for (std::size_t i = 0; i < n_x; ++i)
    u(static_cast<Eigen::Index>(i)) =
      norm * std::sin(static_cast<double>(j * (i + 1)) * pi / static_cast<double>(n_x + 1));
  return u;
}

double CavityGeometry::material_fraction(std::size_t j) const
{
  const Eigen::VectorXd u = box_mode_profile(j);
  double f = 0.0;
  for (std::size_t i : material_sites())
    f += spacing() * u(static_cast<Eigen::Index>(i)) * u(static_cast<Eigen::Index>(i));
  return f;
}

void ContinuumSpec::validate() const
{
  const auto n = omega.size();
  if (n < 2 || rho.size() != n || alpha.size() != n)
    throw ValidationError("continuum: need >= 2 points with matching rho and alpha");
  for (Eigen::Index m = 0; m < n; ++m) {
    if (!(omega(m) > 0.0) || (m > 0 && !(omega(m) > omega(m - 1))))
      throw ValidationError("continuum: omega grid must be positive and strictly increasing");
    if (!(rho(m) > 0.0) || !(alpha(m) >= 0.0))
      throw ValidationError("continuum: rho must be > 0 and alpha >= 0");
  }
}

ContinuumSpec ContinuumSpec::flat(double center, double half_width, std::size_t n, double rho, double alpha)
{
  if (n < 2 || !(half_width > 0.0) || !(center - half_width > 0.0))
    throw ValidationError("continuum: band must lie at positive frequency with n >= 2");
  ContinuumSpec c;
  const double dw = 2.0 * half_width / static_cast<double>(n);
  c.omega = Eigen::VectorXd::NullaryExpr(static_cast<Eigen::Index>(n), [&](Eigen::Index m) {
    return center - half_width + (static_cast<double>(m) + 0.5) * dw;
  });
  c.rho = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n), rho);
  c.alpha = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n), alpha);
  c.validate();
  return c;
}

ContinuumSpec ContinuumSpec::lorentzian(double center, double half_width, std::size_t n, double rho,
                                        double alpha_peak, double width)
{
  if (!(width > 0.0))
    throw ValidationError("continuum: Lorentzian width must be > 0");
  ContinuumSpec c = flat(center, half_width, n, rho, alpha_peak);
  for (Eigen::Index m = 0; m < c.omega.size(); ++m) {
    const double d = (c.omega(m) - center) / width;
    c.alpha(m) = alpha_peak / std::sqrt(1.0 + d * d);
  }
  return c;
}

double ContinuumSpec::spacing() const
{
  double s = omega(1) - omega(0);
  for (Eigen::Index m = 2; m < omega.size(); ++m)
    s = std::min(s, omega(m) - omega(m - 1));
  return s;
}

double ContinuumSpec::recurrence_time() const { return 2.0 * pi / spacing(); }

double ContinuumSpec::weight(std::size_t m) const
{
  const auto i = static_cast<Eigen::Index>(m);
  const auto n = omega.size();
  if (i == 0)
    return omega(1) - omega(0);
  if (i == n - 1)
    return omega(n - 1) - omega(n - 2);
  return 0.5 * (omega(i + 1) - omega(i - 1));
}

// ---------------------------------------------------------------------------
// Hamiltonian

CavityHamiltonian build_hamiltonian(const CavityGeometry& geom, const ContinuumSpec& cont,
                                    const MediumParams& params)
{
  geom.validate();
  cont.validate();
  params.validate();

  CavityHamiltonian h;
  h.n_field = geom.n_x;
  h.recurrence_time = cont.recurrence_time();
  const std::size_t n_omega = static_cast<std::size_t>(cont.omega.size());
  for (std::size_t site : geom.material_sites())
    for (std::size_t m = 0; m < n_omega; ++m)
      h.bath.emplace_back(site, m);

  const auto nf = static_cast<Eigen::Index>(h.n_field);
  const auto n = static_cast<Eigen::Index>(h.size());
  const double dx = geom.spacing();

  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(static_cast<std::size_t>(3 * nf + 3 * (n - nf)));

  // Field: sum_i Pi_i^2 / (2 eps0 dx) + (eps0 c^2 / 2 dx) sum_links (A_i+1 - A_i)^2, A = 0 at the walls.
  const double link = params.eps0 * params.c * params.c / dx;
  Eigen::VectorXd field_diag = Eigen::VectorXd::Constant(nf, 2.0 * link);
  for (Eigen::Index i = 0; i + 1 < nf; ++i) {
    entries.emplace_back(i, i + 1, -link);
    entries.emplace_back(i + 1, i, -link);
  }

  // Bath: (P_b + kappa A_i)^2 / (2 m_b) + m_b w^2 X_b^2 / 2 with m_b = rho_w dx dw, kappa = alpha_w dx dw.
  h.kinetic.resize(n);
  h.kinetic.head(nf).setConstant(1.0 / (params.eps0 * dx));
  for (std::size_t b = 0; b < h.bath.size(); ++b) {
    const auto [site, m] = h.bath[b];
    const auto mi = static_cast<Eigen::Index>(m);
    const double dw = cont.weight(m);
    const double mass = cont.rho(mi) * dx * dw;
    const double kappa = cont.alpha(mi) * dx * dw;
    const auto row = nf + static_cast<Eigen::Index>(b);
    const auto s = static_cast<Eigen::Index>(site);
    entries.emplace_back(row, row, 1.0 / mass);
    if (kappa != 0.0) {
      entries.emplace_back(row, s, kappa / mass);
      entries.emplace_back(s, row, kappa / mass);
      field_diag(s) += kappa * kappa / mass;
    }
    h.kinetic(row) = mass * cont.omega(mi) * cont.omega(mi);
  }
  for (Eigen::Index i = 0; i < nf; ++i)
    entries.emplace_back(i, i, field_diag(i));

  h.potential.resize(n, n);
  h.potential.setFromTriplets(entries.begin(), entries.end());
  return h;
}

Eigen::MatrixXd CavityHamiltonian::quadrature_matrix() const
{
  // q = (A, P_b), p = (Pi, -X_b)  ->  z = (A, Pi, X_b, P_b).
  const auto nf = static_cast<Eigen::Index>(n_field);
  const auto nb = static_cast<Eigen::Index>(bath.size());
  const auto n = nf + nb;
  auto z_of_q = [&](Eigen::Index a) { return a < nf ? a : 2 * nf + nb + (a - nf); };
  auto z_of_p = [&](Eigen::Index a) { return a < nf ? nf + a : 2 * nf + (a - nf); };

  Eigen::MatrixXd full = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  const Eigen::MatrixXd v(potential);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b)
      full(z_of_q(a), z_of_q(b)) = v(a, b);
    full(z_of_p(a), z_of_p(a)) = kinetic(a); // (-X)^2 = X^2
  }
  return full;
}

std::vector<std::size_t> CavityHamiltonian::parity_permutation(const CavityGeometry& geom) const
{
  std::vector<std::size_t> perm(size());
  for (std::size_t i = 0; i < n_field; ++i)
    perm[i] = geom.mirror(i);
  for (std::size_t b = 0; b < bath.size(); ++b) {
    const auto target = std::pair{geom.mirror(bath[b].first), bath[b].second};
    const auto it = std::find(bath.begin(), bath.end(), target);
    if (it == bath.end())
      throw ValidationError("cavity: material layout is not mirror symmetric");
    perm[n_field + b] = n_field + static_cast<std::size_t>(it - bath.begin());
  }
  return perm;
}

// ---------------------------------------------------------------------------
// Normal modes

CavityModes::CavityModes(Eigen::VectorXd frequencies, Eigen::MatrixXd vectors, Eigen::VectorXd kinetic,
                         std::size_t n_field, double recurrence_time)
  : frequencies_(std::move(frequencies))
  , vectors_(std::move(vectors))
  , kinetic_(std::move(kinetic))
  , n_field_(n_field)
  , recurrence_time_(recurrence_time)
{
}

FanoNormalMode CavityModes::mode(std::size_t n) const
{
  const auto col = static_cast<Eigen::Index>(n);
  const auto nf = static_cast<Eigen::Index>(n_field_);
  const auto nb = vectors_.rows() - nf;
  const double w = frequencies_(col);
  const Eigen::VectorXd o = vectors_.col(col);
  // A_n = (sqrt(w) Qn + i Pn / sqrt(w)) / sqrt 2 with Q = O^T T^-1/2 q and P = O^T T^1/2 p.
  const Eigen::VectorXd on_q = std::sqrt(w / 2.0) * o.cwiseQuotient(kinetic_.cwiseSqrt());
  const Eigen::VectorXd on_p = o.cwiseProduct(kinetic_.cwiseSqrt()) / std::sqrt(2.0 * w);
  const cd i{0.0, 1.0};

  FanoNormalMode m;
  m.frequency = w;
  m.field_position = on_q.head(nf).cast<cd>();
  m.field_momentum = i * on_p.head(nf).cast<cd>();
  m.bath_momentum = on_q.tail(nb).cast<cd>();     // q_b = P_b
  m.bath_position = -i * on_p.tail(nb).cast<cd>(); // p_b = -X_b
  return m;
}

double CavityModes::normalization_residual() const
{
  return (vectors_.colwise().squaredNorm().array() - 1.0).abs().maxCoeff();
}

double CavityModes::completeness_residual() const
{
  const Eigen::MatrixXd id = vectors_ * vectors_.transpose();
  return (id - Eigen::MatrixXd::Identity(id.rows(), id.cols())).cwiseAbs().maxCoeff();
}

CavityModes diagonalize(const CavityHamiltonian& h)
{
  const auto n = static_cast<Eigen::Index>(h.size());
  if (h.potential.rows() != n || h.kinetic.size() != n)
    throw ValidationError("diagonalize: inconsistent Hamiltonian blocks");
  if ((h.kinetic.array() <= 0.0).any())
    throw IndefiniteHamiltonian("diagonalize: kinetic block must be positive definite");

  // Normal-mode frequencies squared are the eigenvalues of T^1/2 V T^1/2.
  const Eigen::VectorXd root = h.kinetic.cwiseSqrt();
  Eigen::MatrixXd s = root.asDiagonal() * Eigen::MatrixXd(h.potential) * root.asDiagonal();
  Eigen::VectorXd eig(n);
  const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', static_cast<lapack_int>(n), s.data(),
                                         static_cast<lapack_int>(n), eig.data());
  if (info != 0)
    throw IndefiniteHamiltonian("diagonalize: eigensolver failed with info = " + std::to_string(info));

  Eigen::VectorXd freq(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double lambda = eig(k);
    if (lambda < 0.0 && std::sqrt(-lambda) > 1e-10)
      throw IndefiniteHamiltonian("diagonalize: unstable mode with growth rate " + format_double(std::sqrt(-lambda)));
    freq(k) = std::sqrt(std::max(lambda, 0.0));
    if (freq(k) <= 1e-10)
      throw IndefiniteHamiltonian("diagonalize: zero-frequency mode cannot be quantized as an oscillator");
  }
  return CavityModes(std::move(freq), std::move(s), h.kinetic, h.n_field, h.recurrence_time);
}

// ---------------------------------------------------------------------------
// Photon dynamics

InitialPhoton InitialPhoton::box_mode(const CavityGeometry& geom, std::size_t j)
{
  if (j < 1 || j > geom.n_x)
    throw ValidationError("initial photon: box mode index must be in 1..n_x");
  InitialPhoton p{Eigen::VectorXd::Zero(static_cast<Eigen::Index>(geom.n_x))};
  p.box_amplitudes(static_cast<Eigen::Index>(j - 1)) = 1.0;
  return p;
}

InitialPhoton InitialPhoton::localized(const CavityGeometry& geom, std::size_t site)
{
  if (site >= geom.n_x)
    throw ValidationError("initial photon: site index out of range");
  InitialPhoton p{Eigen::VectorXd(static_cast<Eigen::Index>(geom.n_x))};
  const double root_dx = std::sqrt(geom.spacing());
  for (std::size_t j = 1; j <= geom.n_x; ++j)
    p.box_amplitudes(static_cast<Eigen::Index>(j - 1)) = root_dx * geom.box_mode_profile(j)(static_cast<Eigen::Index>(site));
  return p;
}

SpectralWeights photon_spectral_weights(const CavityModes& modes, const CavityGeometry& geom,
                                       const MediumParams& params, const InitialPhoton& initial)
{
  if (geom.n_x != modes.n_field())
    throw ValidationError("photon_spectral_weights: geometry does not match the modes");
  const PhotonFunctional f = photon_functional(geom, params, initial);
  const auto nf = static_cast<Eigen::Index>(modes.n_field());
  const auto& o = modes.vectors();
  const Eigen::VectorXd root = modes.kinetic().head(nf).cwiseSqrt();

  // a_f = sum_n (u_n A_n + v_n A_n^dagger); the functional is real on A and imaginary on Pi.
  const Eigen::VectorXd x = o.topRows(nf).transpose() * f.on_position.cwiseProduct(root);
  const Eigen::VectorXd y = o.topRows(nf).transpose() * f.on_momentum.cwiseQuotient(root);
  const Eigen::ArrayXd w = modes.frequencies().array();
  const Eigen::ArrayXd u = x.array() / (2.0 * w).sqrt() + y.array() * (0.5 * w).sqrt();
  const Eigen::ArrayXd v = x.array() / (2.0 * w).sqrt() - y.array() * (0.5 * w).sqrt();

  SpectralWeights sw;
  sw.frequency = modes.frequencies();
  sw.amplitude = u.matrix();
  sw.weight = u.square().matrix();
  sw.commutator_residual = std::abs(u.square().sum() - v.square().sum() - 1.0);
  return sw;
}

SurvivalSeries photon_survival(const CavityModes& modes, const CavityGeometry& geom, const MediumParams& params,
                               const InitialPhoton& initial, const std::vector<double>& t_grid)
{
  for (double t : t_grid)
    if (!(std::abs(t) < 0.5 * modes.recurrence_time()))
      throw RecurrenceHorizonExceeded("photon_survival: t = " + format_double(t) +
                                      " is beyond half the recurrence time " +
                                      format_double(modes.recurrence_time()));

  const SpectralWeights sw = photon_spectral_weights(modes, geom, params, initial);
  const Eigen::ArrayXd w = sw.frequency.array();
  const Eigen::ArrayXd weight = sw.weight.array();
  const double total = weight.sum();

  SurvivalSeries s;
  s.commutator_residual = sw.commutator_residual;
  s.t = t_grid;
  s.probability.reserve(t_grid.size());
  for (double t : t_grid) {
    // <psi(0)|psi(t)> = sum_n |u_n|^2 exp(-i w_n t) / sum_n |u_n|^2
    const double re = (weight * (w * t).cos()).sum() / total;
    const double im = -(weight * (w * t).sin()).sum() / total;
    s.probability.push_back(re * re + im * im);
  }

  // Norm of the evolved state carried back to the original coordinates
  // through the mode matrix; stays 1 only if the modes are orthonormal.
  const auto nt = static_cast<Eigen::Index>(t_grid.size());
  Eigen::MatrixXd re(w.size(), nt), im(w.size(), nt);
  const Eigen::ArrayXd c = sw.amplitude.array() / std::sqrt(total);
  for (Eigen::Index j = 0; j < nt; ++j) {
    re.col(j) = (c * (w * t_grid[static_cast<std::size_t>(j)]).cos()).matrix();
    im.col(j) = (-c * (w * t_grid[static_cast<std::size_t>(j)]).sin()).matrix();
  }
  const Eigen::MatrixXd zr = modes.vectors() * re;
  const Eigen::MatrixXd zi = modes.vectors() * im;
  s.norm.resize(t_grid.size());
  for (Eigen::Index j = 0; j < nt; ++j)
    s.norm[static_cast<std::size_t>(j)] = zr.col(j).squaredNorm() + zi.col(j).squaredNorm();
  return s;
}

double golden_rule_rate(const CavityGeometry& geom, const ContinuumSpec& cont, const MediumParams& params,
                        std::size_t j)
{
  geom.validate();
  cont.validate();
  const double w = geom.box_mode_frequency(j, params);
  const double a = interpolate(cont.omega, cont.alpha, w);
  const double r = interpolate(cont.omega, cont.rho, w);
  return 0.5 * pi * a * a / (params.eps0 * r) * geom.material_fraction(j);
}

double fit_decay_rate(const SurvivalSeries& series, double t_lo, double t_hi)
{
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < series.t.size(); ++i) {
    const double t = series.t[i];
    if (t < t_lo || t > t_hi || !(series.probability[i] > 0.0))
      continue;
    const double y = std::log(series.probability[i]);
    sx += t;
    sy += y;
    sxx += t * t;
    sxy += t * y;
    ++n;
  }
  if (n < 2)
    throw ValidationError("fit_decay_rate: need at least two samples in the fit window");
  const double dn = static_cast<double>(n);
  return -(dn * sxy - sx * sy) / (dn * sxx - sx * sx);
}

} // namespace polariton
