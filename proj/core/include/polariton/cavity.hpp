#ifndef POLARITON_CAVITY_HPP
#define POLARITON_CAVITY_HPP

#include "polariton/medium.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <cstddef>
#include <vector>

namespace polariton {

//
// One-dimensional photon field in a Dirichlet box [-L/2, L/2], coupled to a
// discretized continuum of polarization oscillators that exists only outside
// a vacuum gap |x| < l/2. Lagrangian density per site:
//
//   eps0/2 (dA/dt^2 - c^2 dA/dx^2) + sum_w rho_w/2 (dX_w/dt^2 - w^2 X_w^2) - sum_w alpha_w A dX_w/dt
//
// with the w-integral replaced by a sum weighted by the grid spacing.
//

struct CavityGeometry
{
  double box_length = 16.0;
  double gap_length = 2.0;
  std::size_t n_x = 64;

  void validate() const;

  /// Grid spacing; the n_x interior points sit at -L/2 + (i + 1) dx.
  double spacing() const;
  double position(std::size_t i) const;
  bool is_material(std::size_t i) const;
  std::size_t mirror(std::size_t i) const { return n_x - 1 - i; }
  std::vector<std::size_t> material_sites() const;

  /// Free (uncoupled) photon box mode j = 1..n_x: frequency and profile u_j(x_i),
  /// normalized so that sum_i dx u_j(x_i)^2 = 1.
  double box_mode_frequency(std::size_t j, const MediumParams& params) const;
  Eigen::VectorXd box_mode_profile(std::size_t j) const;

  /// sum over material sites of dx u_j^2.
  double material_fraction(std::size_t j) const;
};

struct ContinuumSpec
{
  Eigen::VectorXd omega;
  Eigen::VectorXd rho;
  Eigen::VectorXd alpha;

  void validate() const;

  /// Uniform grid of n points with spacing 2 w / n centred on `center`.
  static ContinuumSpec flat(double center, double half_width, std::size_t n, double rho, double alpha);
  /// Same grid; alpha_w^2 follows a Lorentzian of half-width `width` around `center`.
  static ContinuumSpec lorentzian(double center, double half_width, std::size_t n, double rho, double alpha_peak,
                                  double width);

  /// Smallest spacing of the frequency grid.
  double spacing() const;
  /// 2 pi / spacing: artificial revivals of the discretized continuum start here.
  double recurrence_time() const;
  /// Integration weight of grid point m.
  double weight(std::size_t m) const;
};

/// H = q^T V q / 2 + p^T T p / 2 over q = (A_i, P_b), p = (Pi_i, -X_b).
/// Each bath pair is rotated (X, P) -> (P, -X), a canonical map that turns the
/// (P + kappa A)^2 kinetic term into a potential one; T is then diagonal.
struct CavityHamiltonian
{
  std::size_t n_field = 0;
  /// (site, frequency index) of every bath oscillator b.
  std::vector<std::pair<std::size_t, std::size_t>> bath;
  Eigen::SparseMatrix<double> potential;
  Eigen::VectorXd kinetic;
  double recurrence_time = 0.0;

  std::size_t size() const { return n_field + bath.size(); }

  /// Dense 2N x 2N quadratic form over (A_1.., Pi_1.., X_1.., P_1..). For tests and small systems.
  Eigen::MatrixXd quadrature_matrix() const;

  /// Site permutation x -> -x applied to q (and identically to p).
  std::vector<std::size_t> parity_permutation(const CavityGeometry& geom) const;
};

CavityHamiltonian build_hamiltonian(const CavityGeometry& geom, const ContinuumSpec& cont,
                                    const MediumParams& params);

/// One dressed mode: frequency and the coefficients of its annihilation
/// operator on the original quadratures (A, Pi) of the field and (X, P) of the bath.
struct FanoNormalMode
{
  double frequency;
  Eigen::VectorXcd field_position;
  Eigen::VectorXcd field_momentum;
  Eigen::VectorXcd bath_position;
  Eigen::VectorXcd bath_momentum;
};

class CavityModes
{
public:
  CavityModes(Eigen::VectorXd frequencies, Eigen::MatrixXd vectors, Eigen::VectorXd kinetic, std::size_t n_field,
              double recurrence_time);

  std::size_t size() const { return static_cast<std::size_t>(frequencies_.size()); }
  const Eigen::VectorXd& frequencies() const { return frequencies_; }
  /// Columns are orthonormal eigenvectors of T^1/2 V T^1/2.
  const Eigen::MatrixXd& vectors() const { return vectors_; }
  const Eigen::VectorXd& kinetic() const { return kinetic_; }
  std::size_t n_field() const { return n_field_; }
  double recurrence_time() const { return recurrence_time_; }

  FanoNormalMode mode(std::size_t n) const;

  /// max_n |[A_n, A_n^dagger] - 1|.
  double normalization_residual() const;
  /// max |sum_n (modes outer modes) - I|, the resolution of the identity. O(N^3).
  double completeness_residual() const;

private:
  Eigen::VectorXd frequencies_;
  Eigen::MatrixXd vectors_;
  Eigen::VectorXd kinetic_;
  std::size_t n_field_;
  double recurrence_time_;
};

/// Throws IndefiniteHamiltonian if a normal-mode frequency has an imaginary
/// part above 1e-10 (or vanishes, which leaves no oscillator to quantize).
CavityModes diagonalize(const CavityHamiltonian& h);

/// Bare-photon single excitation as amplitudes over the free box modes.
struct InitialPhoton
{
  Eigen::VectorXd box_amplitudes;

  static InitialPhoton box_mode(const CavityGeometry& geom, std::size_t j);
  /// Photon localized on grid site `site` (0-based).
  static InitialPhoton localized(const CavityGeometry& geom, std::size_t site);
};

/// Expansion of the photon state over the dressed modes: the bare photon
/// annihilator is sum_n (u_n A_n + v_n A_n^dagger), and the state
/// a_f^dagger |0> has weight u_n^2 on mode n.
struct SpectralWeights
{
  Eigen::VectorXd frequency;
  Eigen::VectorXd amplitude;
  Eigen::VectorXd weight;
  /// |sum u_n^2 - sum v_n^2 - 1|: the bare commutator rebuilt from the modes.
  double commutator_residual = 0.0;
};

SpectralWeights photon_spectral_weights(const CavityModes& modes, const CavityGeometry& geom,
                                       const MediumParams& params, const InitialPhoton& initial);

struct SurvivalSeries
{
  std::vector<double> t;
  std::vector<double> probability;
  /// Norm of the evolved state mapped back through the mode matrix.
  std::vector<double> norm;
  double commutator_residual = 0.0;
};

/// Survival probability |<psi(0)|psi(t)>|^2 of the photon state. Throws
/// RecurrenceHorizonExceeded if max(t) >= recurrence_time / 2.
SurvivalSeries photon_survival(const CavityModes& modes, const CavityGeometry& geom, const MediumParams& params,
                               const InitialPhoton& initial, const std::vector<double>& t_grid);

/// Weak-coupling decay rate of box mode j into the continuum:
///   (pi/2) alpha_w^2 / (eps0 rho_w) * material_fraction(j) at w = w_j.
double golden_rule_rate(const CavityGeometry& geom, const ContinuumSpec& cont, const MediumParams& params,
                        std::size_t j);

/// -slope of a least-squares fit of log P(t) over t in [t_lo, t_hi].
double fit_decay_rate(const SurvivalSeries& series, double t_lo, double t_hi);

} // namespace polariton

#endif // POLARITON_CAVITY_HPP
