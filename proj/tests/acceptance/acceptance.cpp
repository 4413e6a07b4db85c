// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "polariton/cavity.hpp"
#include "polariton/config.hpp"
#include "polariton/experiments.hpp"
#include "polariton/hopfield.hpp"
#include "polariton/oracles.hpp"
#include "polariton/quench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

using namespace polariton;

namespace {

struct Outcome
{
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, double budget_s, const std::function<Outcome()>& body)
{
  const auto start = std::chrono::steady_clock::now();
  Outcome o{false, ""};
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = elapsed < budget_s;
  const bool pass = o.pass && in_time;
  if (!pass)
    ++failures;
  std::printf("criterion %2d: %s  %s  [%s; %.2f s of %.0f s]\n", id, pass ? "PASS" : "FAIL", title,
              o.detail.c_str(), elapsed, budget_s);
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0)
{
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

ExperimentConfig fig1_config(double T)
{
  ExperimentConfig c;
  c.omega_x = Schedule::smooth_ramp(1.0, 0.95, T);
  c.alpha = Schedule::smooth_ramp(0.05, 0.03, T);
  return c;
}

double lower_number(const QuenchSpec& spec, double k)
{
  return created_numbers(bogoliubov(spec, {k})).lower;
}

} // namespace

int main()
{
  criterion(1, "exact sigmoid oracle, rel err <= 1e-4", 10.0, [] {
    double worst = 0.0;
    for (double tau : {0.05, 0.1, 0.3, 0.5, 1.0, 2.0}) {
      const double exact = exact_sigmoid_number({1.0, 0.9, tau});
      if (exact < 1e-12)
        continue;
      const QuenchSpec spec{Schedule::sigmoid(1.0, 0.9, tau), Schedule::constant(0.0), {}};
      worst = std::max(worst, rel(lower_number(spec, 20.0), exact));
    }
    return Outcome{worst <= 1e-4, fmt("max rel err %.2e", worst)};
  });

  criterion(2, "sudden limit T = 1e-4, rel err <= 1e-3", 1.0, [] {
    const QuenchSpec spec{Schedule::smooth_ramp(1.0, 0.9, 1e-4), Schedule::constant(0.0), {}};
    const double n = lower_number(spec, 20.0);
    const double err = rel(n, 1.0 / 360.0);
    return Outcome{err <= 1e-3, fmt("n = %.10e, rel err %.2e", n, err)};
  });

  criterion(3, "null quench, n <= 1e-12 at 10 random k", 5.0, [] {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> k(0.05, 5.0), a(0.0, 0.2), T(0.1, 10.0);
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      const double alpha = a(rng), TT = T(rng);
      const QuenchSpec spec{Schedule::smooth_ramp(1.0, 1.0, TT), Schedule::smooth_ramp(alpha, alpha, TT), {}};
      const CreatedNumbers n = created_numbers(bogoliubov(spec, {k(rng)}));
      worst = std::max({worst, n.lower, n.upper});
    }
    return Outcome{worst <= 1e-12, fmt("max n %.2e", worst)};
  });

  criterion(4, "symplectic <= 1e-9, pseudo-unitary <= 1e-8 (50 random quenches)", 60.0, [] {
    std::mt19937_64 rng(4711);
    std::uniform_real_distribution<double> k(0.05, 5.0), w(0.7, 1.3), a(0.0, 0.2), T(0.05, 10.0), coin(0.0, 1.0);
    double sym = 0.0, pu = 0.0;
    for (int i = 0; i < 50; ++i) {
      const double TT = T(rng);
      const double w2 = w(rng), a1 = a(rng), a2 = a(rng);
      const Schedule wx = coin(rng) < 0.5 ? Schedule::smooth_ramp(1.0, w2, TT) : Schedule::sigmoid(1.0, w2, TT / 10);
      const Schedule al = coin(rng) < 0.5 ? Schedule::smooth_ramp(a1, a2, TT)
                                          : Schedule::sigmoid(a1, a2, TT / 10, SigmoidMode::linear);
      const QuenchSpec spec{wx, al, {}};
      const ModePoint kk{k(rng)};
      const auto [t0, t1] = quench_window(spec, 1e-10);
      const TransferMatrix m = transfer_matrix(spec, kk, t0, t1);
      sym = std::max({sym, m.max_symplectic_residual, symplectic_residual(m.matrix)});
      pu = std::max(pu, bogoliubov(spec, kk).pseudo_unitarity_residual());
    }
    return Outcome{sym <= 1e-9 && pu <= 1e-8, fmt("max |M^T J M - J| %.2e, max |aa^H - bb^H - I| %.2e", sym, pu)};
  });

  criterion(5, "ramp spectrum crossover: one sign change on 40 k in [0.5, 2], UB first", 60.0, [] {
    ExperimentConfig c = fig1_config(2.0);
    for (int i = 0; i < 40; ++i)
      c.k_grid.push_back(0.5 + 1.5 * i / 39.0);
    const ResultTable t = run_spectrum(c);
    int flips = 0;
    double crossing = 0.0;
    for (std::size_t i = 1; i < t.rows.size(); ++i)
      if ((t.rows[i][1] > t.rows[i][2]) != (t.rows[i - 1][1] > t.rows[i - 1][2])) {
        ++flips;
        crossing = t.rows[i][0];
      }
    const bool ub_first = t.rows.front()[2] > t.rows.front()[1];
    return Outcome{!t.partial() && t.rows.size() == 40 && flips == 1 && ub_first,
                   fmt("%.0f sign change(s), first at ck = %.3f, n_b > n_a at low k: %.0f", flips, crossing,
                       ub_first)};
  });

  criterion(6, "ramp T ordering at ck = 1.5: n(0.1) > n(2) > n(4)", 10.0, [] {
    std::vector<double> n;
    for (double T : {0.1, 2.0, 4.0}) {
      ExperimentConfig c = fig1_config(T);
      c.k_grid = {1.5};
      n.push_back(run_spectrum(c).rows.at(0).at(1));
    }
    return Outcome{n[0] > n[1] && n[1] > n[2], fmt("n_a = %.3e, %.3e, %.3e", n[0], n[1], n[2])};
  });

  criterion(7, "duration sweep at k = 20: decay on [1,15], oscillation on [20,40], ramp >= 1e2 x sigmoid at T=30", 300.0, [] {
    ExperimentConfig c;
    c.omega_x = Schedule::smooth_ramp(1.0, 0.9, 1.0);
    c.alpha = Schedule::constant(0.001);
    c.k = 20.0;
    for (int i = 0; i < 30; ++i)
      c.T_grid.push_back(1.0 + 14.0 * i / 29.0);
    const ResultTable early = run_duration_sweep(c);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& r : early.rows) {
      const double y = std::log(r[1]);
      sx += r[0];
      sy += y;
      sxx += r[0] * r[0];
      sxy += r[0] * y;
    }
    const double nn = static_cast<double>(early.rows.size());
    const double slope = (nn * sxy - sx * sy) / (nn * sxx - sx * sx);

    c.T_grid.clear();
    for (int i = 0; i < 30; ++i)
      c.T_grid.push_back(20.0 + 20.0 * i / 29.0);
    const ResultTable late = run_duration_sweep(c);
    int extrema = 0;
    for (std::size_t i = 1; i + 1 < late.rows.size(); ++i) {
      const double a = late.rows[i - 1][1], b = late.rows[i][1], d = late.rows[i + 1][1];
      if ((b > a && b > d) || (b < a && b < d))
        ++extrema;
    }

    c.T_grid = {30.0};
    const double ramp30 = run_duration_sweep(c).rows.at(0).at(1);
    const double ratio = ramp30 / exact_sigmoid_number({1.0, 0.9, 3.0});
    const bool ok = !early.partial() && !late.partial() && slope < 0.0 && extrema >= 2 && ratio >= 1e2;
    return Outcome{ok, fmt("slope %.3f, %.0f local extrema, ratio %.2e", slope, extrema, ratio)};
  });

  criterion(8, "closed form at tau = 1e-3 vs sudden jump, rel <= 1e-4", 1.0, [] {
    const double err = rel(exact_sigmoid_number({1.0, 0.9, 1e-3}), sudden_quench_number(1.0, 0.9));
    return Outcome{err <= 1e-4, fmt("rel diff %.2e", err)};
  });

  criterion(9, "cavity: golden rule within 10%, max P < 0.05 after 3/G, norm to 1e-8", 120.0, [] {
    ExperimentConfig c;
    c.kind = ExperimentKind::cavity_decay;
    const CavityConfig& cav = c.cavity;
    const ContinuumSpec cont = cav.continuum(c.params);
    const CavityModes modes = diagonalize(build_hamiltonian(cav.geometry, cont, c.params));
    const double gamma = golden_rule_rate(cav.geometry, cont, c.params, 1);
    const double horizon = 0.5 * modes.recurrence_time();
    std::vector<double> t;
    for (int i = 0; i < 600; ++i)
      t.push_back(0.999 * horizon * i / 599.0);
    const SurvivalSeries s = photon_survival(modes, cav.geometry, c.params, cav.initial_photon(), t);
    const double fit = fit_decay_rate(s, 0.5 / gamma, 3.0 / gamma);
    double late = 0.0, norm = s.commutator_residual;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (t[i] >= 3.0 / gamma)
        late = std::max(late, s.probability[i]);
      norm = std::max(norm, std::abs(s.norm[i] - 1.0));
    }
    const bool ok = 3.0 / gamma < horizon && std::abs(fit / gamma - 1.0) <= 0.1 && late < 0.05 && norm <= 1e-8;
    return Outcome{ok, fmt("fit/golden %.4f, max late P %.4f, norm dev %.1e", fit / gamma, late, norm)};
  });

  criterion(10, "dispersion: alpha = 0 exact, k -> 0 upper branch to 1e-10", 1.0, [] {
    bool exact = true;
    for (double k : {0.0, 0.2, 0.99, 1.01, 3.0, 20.0}) {
      const BranchFrequencies f = branch_frequencies({}, {k}, 1.0, 0.0);
      exact = exact && f.lower == std::min(k, 1.0) && f.upper == std::max(k, 1.0);
    }
    double worst = 0.0;
    for (double a : {0.001, 0.05, 0.3})
      for (double k : {0.0, 1e-9})
        worst = std::max(worst, std::abs(branch_frequencies({}, {k}, 1.0, a).upper - std::sqrt(1.0 + a * a)));
    return Outcome{exact && worst <= 1e-10, fmt("alpha=0 exact: %.0f, k->0 max err %.1e", exact, worst)};
  });

  std::printf("%s: %d criterion(s) failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
