#ifndef POLARITON_EXPERIMENTS_HPP
#define POLARITON_EXPERIMENTS_HPP

#include "polariton/config.hpp"
#include "polariton/results.hpp"

namespace polariton {

// Every runner validates the config first and throws ValidationError before
// computing anything. Rows are independent and may be spread over
// config.jobs worker threads; the output is ordered by grid position and does
// not depend on the number of workers.
//
// If a row fails, the table stops at the last good row, metadata `partial`
// is set to true and `error` carries the message of the first failure.

/// Columns k, omega_lower, omega_upper at the initial (or final) parameters.
ResultTable run_dispersion(const ExperimentConfig& config);

/// Columns k, n_lower, n_upper.
ResultTable run_spectrum(const ExperimentConfig& config);

/// Columns T, n_lower at the single wavenumber config.k. Each schedule is
/// rescaled with Schedule::with_duration(T).
ResultTable run_duration_sweep(const ExperimentConfig& config);

/// Columns T, n_lower from the closed-form sigmoid result with tau = T/10,
/// using the initial and final values of the omega_x schedule.
ResultTable run_exact_oracle(const ExperimentConfig& config);

/// Columns t, P for the photon survival probability in the absorptive cavity.
ResultTable run_cavity_decay(const ExperimentConfig& config);

/// Dispatches on config.kind.
ResultTable run_experiment(const ExperimentConfig& config);

/// Library version string, recorded in every table.
const char* version();

} // namespace polariton

#endif // POLARITON_EXPERIMENTS_HPP
