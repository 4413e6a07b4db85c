#include "polariton/experiments.hpp"

#include "polariton/errors.hpp"
#include "polariton/format.hpp"
#include "polariton/hopfield.hpp"
#include "polariton/oracles.hpp"
#include "polariton/quench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <thread>

#ifndef POLARITON_VERSION
#define POLARITON_VERSION "unknown"
#endif

namespace polariton {

namespace {

struct RowOutcome
{
  std::vector<double> values;
  std::string error;
  bool ok = false;
};

using RowFn = std::function<std::vector<double>(std::size_t)>;

std::vector<RowOutcome> compute_rows(std::size_t n, std::size_t jobs, const RowFn& row)
{
  std::vector<RowOutcome> out(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        out[i].values = row(i);
        out[i].ok = true;
      } catch (const std::exception& e) {
        out[i].error = e.what();
      }
    }
  };
  const std::size_t workers = std::min(jobs, n);
  if (workers <= 1) {
    worker();
    return out;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back(worker);
  pool.clear();
  return out;
}

void collect(ResultTable& table, const std::vector<double>& grid, std::vector<RowOutcome> rows)
{
  table.set_meta("partial", "false");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].ok) {
      table.set_meta("partial", "true");
      table.set_meta("failed_at", format_double(grid[i]));
      table.set_meta("error", rows[i].error);
      return;
    }
    table.rows.push_back(std::move(rows[i].values));
  }
}

void common_metadata(ResultTable& t, const ExperimentConfig& c)
{
  t.set_meta("kind", to_string(c.kind));
  t.set_meta("version", version());
  t.set_meta("units", "omega_1 = 1, k in omega_1/c, t in 1/omega_1, alpha in omega_1*sqrt(eps0*rho)");
  t.set_meta("eps0", format_double(c.params.eps0));
  t.set_meta("rho", format_double(c.params.rho));
  t.set_meta("c", format_double(c.params.c));
}

void quench_metadata(ResultTable& t, const ExperimentConfig& c)
{
  t.set_meta("omega_x", c.omega_x->describe());
  t.set_meta("alpha", c.alpha->describe());
  t.set_meta("tol", format_double(c.tol));
  t.set_meta("tail_eps", format_double(c.tail_eps));
}

QuenchOptions quench_options(const ExperimentConfig& c)
{
  QuenchOptions o;
  o.integrator.rel_tol = c.tol;
  o.integrator.max_steps = c.max_steps;
  o.tail_eps = c.tail_eps;
  return o;
}

ExperimentConfig with_kind(ExperimentConfig c, ExperimentKind kind)
{
  c.kind = kind;
  c.validate();
  return c;
}

} // namespace

const char* version() { return POLARITON_VERSION; }

ResultTable run_dispersion(const ExperimentConfig& in)
{
  const ExperimentConfig config = with_kind(in, ExperimentKind::dispersion);
  const QuenchSpec spec = config.quench();
  const double wx = config.dispersion_final ? spec.omega_x.final_value() : spec.omega_x.initial_value();
  const double a = config.dispersion_final ? spec.alpha.final_value() : spec.alpha.initial_value();
  const double coupling = a * spec.params.coupling_unit();

  ResultTable t;
  common_metadata(t, config);
  t.set_meta("parameters", config.dispersion_final ? "final" : "initial");
  t.set_meta("omega_x_value", format_double(wx));
  t.set_meta("alpha_value", format_double(a));
  t.columns = {"k", "omega_lower", "omega_upper"};

  const auto rows = compute_rows(config.k_grid.size(), config.jobs, [&](std::size_t i) {
    const double kbar = config.k_grid[i];
    const ModePoint k{kbar / spec.params.c};
    try {
      const BranchFrequencies f = branch_frequencies(spec.params, k, wx, coupling);
      return std::vector<double>{kbar, f.lower, f.upper};
    } catch (const DegenerateMode&) {
      if (coupling != 0.0)
        throw;
      // Uncoupled crossing: both branches sit at the same frequency.
      const double ck = spec.params.c * k.k;
      return std::vector<double>{kbar, std::min(ck, wx), std::max(ck, wx)};
    }
  });
  collect(t, config.k_grid, rows);
  return t;
}

ResultTable run_spectrum(const ExperimentConfig& in)
{
  const ExperimentConfig config = with_kind(in, ExperimentKind::spectrum);
  const QuenchSpec spec = config.quench();
  const QuenchOptions options = quench_options(config);

  ResultTable t;
  common_metadata(t, config);
  quench_metadata(t, config);
  t.columns = {"k", "n_lower", "n_upper"};

  const auto rows = compute_rows(config.k_grid.size(), config.jobs, [&](std::size_t i) {
    const double kbar = config.k_grid[i];
    const CreatedNumbers n = created_numbers(bogoliubov(spec, ModePoint{kbar / spec.params.c}, options));
    return std::vector<double>{kbar, n.lower, n.upper};
  });
  collect(t, config.k_grid, rows);
  return t;
}

ResultTable run_duration_sweep(const ExperimentConfig& in)
{
  const ExperimentConfig config = with_kind(in, ExperimentKind::sweep_T);
  const QuenchSpec spec = config.quench();
  const QuenchOptions options = quench_options(config);

  ResultTable t;
  common_metadata(t, config);
  quench_metadata(t, config);
  t.set_meta("k", format_double(config.k));
  t.set_meta("duration", "ramp length T; sigmoid tau = T/10");
  t.columns = {"T", "n_lower"};

  const ModePoint k{config.k / spec.params.c};
  const auto rows = compute_rows(config.T_grid.size(), config.jobs, [&](std::size_t i) {
    const double T = config.T_grid[i];
    const QuenchSpec s{spec.omega_x.with_duration(T), spec.alpha.with_duration(T), spec.params};
    const CreatedNumbers n = created_numbers(bogoliubov(s, k, options));
    return std::vector<double>{T, n.lower};
  });
  collect(t, config.T_grid, rows);
  return t;
}

ResultTable run_exact_oracle(const ExperimentConfig& in)
{
  const ExperimentConfig config = with_kind(in, ExperimentKind::exact_oracle);
  const double w1 = config.omega_x->initial_value();
  const double w2 = config.omega_x->final_value();

  ResultTable t;
  common_metadata(t, config);
  t.set_meta("source", "closed-form sigmoid, alpha = 0");
  t.set_meta("omega1", format_double(w1));
  t.set_meta("omega2", format_double(w2));
  t.set_meta("duration", "tau = T/10");
  t.columns = {"T", "n_lower"};

  const auto rows = compute_rows(config.T_grid.size(), 1, [&](std::size_t i) {
    const double T = config.T_grid[i];
    return std::vector<double>{T, exact_sigmoid_number({w1, w2, T / 10.0})};
  });
  collect(t, config.T_grid, rows);
  return t;
}

ResultTable run_cavity_decay(const ExperimentConfig& in)
{
  const ExperimentConfig config = with_kind(in, ExperimentKind::cavity_decay);
  const CavityConfig& cav = config.cavity;
  const ContinuumSpec cont = cav.continuum(config.params);
  const CavityHamiltonian h = build_hamiltonian(cav.geometry, cont, config.params);
  const CavityModes modes = diagonalize(h);

  const double t_max = cav.t_max_fraction * 0.5 * modes.recurrence_time();
  std::vector<double> grid(cav.n_t);
  for (std::size_t i = 0; i < cav.n_t; ++i)
    grid[i] = t_max * static_cast<double>(i) / static_cast<double>(cav.n_t - 1);
  const SurvivalSeries s = photon_survival(modes, cav.geometry, config.params, cav.initial_photon(), grid);

  const std::size_t j = cav.reference_mode();
  const double gamma = golden_rule_rate(cav.geometry, cont, config.params, j);
  double norm_dev = 0.0;
  for (double n : s.norm)
    norm_dev = std::max(norm_dev, std::abs(n - 1.0));

  ResultTable t;
  common_metadata(t, config);
  t.set_meta("box_length", format_double(cav.geometry.box_length));
  t.set_meta("gap_length", format_double(cav.geometry.gap_length));
  t.set_meta("n_x", std::to_string(cav.geometry.n_x));
  t.set_meta("initial", (cav.start == PhotonStart::box_mode ? "box:" : "site:") + std::to_string(cav.start_index));
  t.set_meta("continuum", cav.profile == CavityConfig::Profile::flat ? "flat" : "lorentzian");
  t.set_meta("continuum_center", format_double(0.5 * (cont.omega(0) + cont.omega(cont.omega.size() - 1))));
  t.set_meta("continuum_half_width", format_double(cav.half_width));
  t.set_meta("n_omega", std::to_string(cav.n_omega));
  t.set_meta("continuum_rho", format_double(cav.rho));
  t.set_meta("continuum_alpha", format_double(cav.alpha));
  t.set_meta("dimension", std::to_string(h.size()));
  t.set_meta("recurrence_time", format_double(modes.recurrence_time()));
  t.set_meta("golden_rule_rate", format_double(gamma));
  if (gamma > 0.0 && 3.0 / gamma < t_max) {
    t.set_meta("fitted_rate", format_double(fit_decay_rate(s, 0.5 / gamma, 3.0 / gamma)));
    double late = 0.0;
    for (std::size_t i = 0; i < s.t.size(); ++i)
      if (s.t[i] >= 3.0 / gamma)
        late = std::max(late, s.probability[i]);
    t.set_meta("max_P_after_3_over_rate", format_double(late));
  }
  t.set_meta("commutator_residual", format_double(s.commutator_residual));
  t.set_meta("max_norm_deviation", format_double(norm_dev));
  t.set_meta("partial", "false");
  t.columns = {"t", "P"};
  for (std::size_t i = 0; i < s.t.size(); ++i)
    t.rows.push_back({s.t[i], s.probability[i]});
  return t;
}

ResultTable run_experiment(const ExperimentConfig& config)
{
  switch (config.kind) {
  case ExperimentKind::dispersion: return run_dispersion(config);
  case ExperimentKind::spectrum: return run_spectrum(config);
  case ExperimentKind::sweep_T: return run_duration_sweep(config);
  case ExperimentKind::exact_oracle: return run_exact_oracle(config);
  case ExperimentKind::cavity_decay: return run_cavity_decay(config);
  }
  throw ValidationError("unknown experiment kind");
}

} // namespace polariton
