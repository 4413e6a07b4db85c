#ifndef POLARITON_CONFIG_HPP
#define POLARITON_CONFIG_HPP

#include "polariton/cavity.hpp"
#include "polariton/medium.hpp"
#include "polariton/results.hpp"

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace polariton {

enum class ExperimentKind
{
  dispersion,
  spectrum,
  sweep_T,
  exact_oracle,
  cavity_decay,
};

ExperimentKind parse_experiment_kind(const std::string& name);
std::string to_string(ExperimentKind kind);

/// Flat key/value pairs, in file order of last assignment.
using KeyValues = std::map<std::string, std::string>;

/// Parses `key = value` lines. '#' starts a comment; blank lines are ignored.
KeyValues parse_key_values(std::string_view text);

/// "linspace(a, b, n)", "logspace(a, b, n)" (n log-spaced points from a to b)
/// or a comma-separated list.
std::vector<double> parse_grid(const std::string& text);

enum class PhotonStart
{
  box_mode,
  site,
};

struct CavityConfig
{
  CavityGeometry geometry;
  PhotonStart start = PhotonStart::box_mode;
  std::size_t start_index = 1;

  enum class Profile
  {
    flat,
    lorentzian,
  } profile = Profile::flat;
  /// Band centre; defaults to the frequency of the initial box mode (or mode 1).
  std::optional<double> center;
  double half_width = 0.15;
  std::size_t n_omega = 48;
  double rho = 1.0;
  double alpha = 0.13;
  double lorentz_width = 0.05;

  std::size_t n_t = 400;
  /// Last time point as a fraction of the recurrence horizon T_rec/2.
  double t_max_fraction = 0.98;

  ContinuumSpec continuum(const MediumParams& params) const;
  InitialPhoton initial_photon() const;
  /// Box mode whose golden-rule rate is reported.
  std::size_t reference_mode() const { return start == PhotonStart::box_mode ? start_index : 1; }
};

struct ExperimentConfig
{
  ExperimentKind kind = ExperimentKind::spectrum;
  MediumParams params;
  std::optional<Schedule> omega_x;
  std::optional<Schedule> alpha;
  std::vector<double> k_grid;
  std::vector<double> T_grid;
  double k = 1.0;
  double tol = 1e-12;
  double tail_eps = 1e-10;
  std::size_t max_steps = 5'000'000;
  std::size_t jobs = 1;
  /// Dispersion tables use the initial ("in") or final ("out") parameters.
  bool dispersion_final = false;
  CavityConfig cavity;
  std::filesystem::path out;
  OutputFormat format = OutputFormat::csv;

  /// Throws ValidationError describing the first problem found.
  void validate() const;

  /// Both schedules, validated; throws ValidationError if either is missing.
  QuenchSpec quench() const;
};

/// Builds a config from keys. Unknown keys are rejected.
ExperimentConfig config_from_keys(const KeyValues& keys);

/// Reads `path` (if non-empty) and applies `overrides` on top. Does not
/// validate: the caller may still change the kind.
ExperimentConfig load_config(const std::filesystem::path& path, const KeyValues& overrides = {});

} // namespace polariton

#endif // POLARITON_CONFIG_HPP
