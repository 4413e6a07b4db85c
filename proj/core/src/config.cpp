#include "polariton/config.hpp"

#include "polariton/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace polariton {

namespace {

std::string trim(std::string_view s)
{
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double to_double(const std::string& key, const std::string& text)
{
  const std::string s = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v))
    throw ValidationError("config: '" + key + "' expects a number, got '" + text + "'");
  return v;
}

std::size_t to_count(const std::string& key, const std::string& text)
{
  const double v = to_double(key, text);
  if (v < 0.0 || v != std::floor(v) || v > 1e12)
    throw ValidationError("config: '" + key + "' expects a non-negative integer, got '" + text + "'");
  return static_cast<std::size_t>(v);
}

// Tracks which keys were consumed so that typos are reported.
class KeyReader
{
public:
  explicit KeyReader(const KeyValues& keys) : keys_(keys) {}

  const std::string* find(const std::string& key)
  {
    const auto it = keys_.find(key);
    if (it == keys_.end())
      return nullptr;
    used_.insert(key);
    return &it->second;
  }

  double number(const std::string& key, double fallback)
  {
    const std::string* v = find(key);
    return v ? to_double(key, *v) : fallback;
  }

  double required_number(const std::string& key)
  {
    const std::string* v = find(key);
    if (!v)
      throw ValidationError("config: missing key '" + key + "'");
    return to_double(key, *v);
  }

  std::size_t count(const std::string& key, std::size_t fallback)
  {
    const std::string* v = find(key);
    return v ? to_count(key, *v) : fallback;
  }

  void check_all_used() const
  {
    for (const auto& [k, v] : keys_)
      if (!used_.count(k))
        throw ValidationError("config: unknown key '" + k + "'");
  }

private:
  const KeyValues& keys_;
  std::set<std::string> used_;
};

std::optional<Schedule> read_schedule(KeyReader& r, const std::string& name, SigmoidMode default_mode)
{
  const std::string* kind = r.find(name);
  if (!kind)
    return std::nullopt;
  const std::string k = trim(*kind);
  if (k == "constant")
    return Schedule::constant(r.required_number(name + ".value"));
  if (k == "ramp")
    return Schedule::smooth_ramp(r.required_number(name + ".v1"), r.required_number(name + ".v2"),
                                 r.required_number(name + ".T"));
  if (k == "sigmoid") {
    SigmoidMode mode = default_mode;
    if (const std::string* m = r.find(name + ".mode")) {
      if (trim(*m) == "squared")
        mode = SigmoidMode::squared;
      else if (trim(*m) == "linear")
        mode = SigmoidMode::linear;
      else
        throw ValidationError("config: '" + name + ".mode' must be squared or linear");
    }
    return Schedule::sigmoid(r.required_number(name + ".v1"), r.required_number(name + ".v2"),
                             r.required_number(name + ".tau"), mode);
  }
  throw ValidationError("config: '" + name + "' must be constant, ramp or sigmoid, got '" + k + "'");
}

void check_grid(const std::vector<double>& grid, const std::string& name, bool positive)
{
  if (grid.empty())
    throw ValidationError("config: " + name + " is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i]) || (positive ? grid[i] <= 0.0 : grid[i] < 0.0))
      throw ValidationError("config: " + name + " entries must be " + (positive ? "positive" : "non-negative"));
    if (i > 0 && !(grid[i] > grid[i - 1]))
      throw ValidationError("config: " + name + " must be strictly increasing");
  }
}

} // namespace

ExperimentKind parse_experiment_kind(const std::string& name)
{
  if (name == "dispersion")
    return ExperimentKind::dispersion;
  if (name == "spectrum")
    return ExperimentKind::spectrum;
  if (name == "sweep-T")
    return ExperimentKind::sweep_T;
  if (name == "exact-oracle")
    return ExperimentKind::exact_oracle;
  if (name == "cavity-decay")
    return ExperimentKind::cavity_decay;
  throw ValidationError("config: unknown experiment kind '" + name + "'");
}

std::string to_string(ExperimentKind kind)
{
  switch (kind) {
  case ExperimentKind::dispersion: return "dispersion";
  case ExperimentKind::spectrum: return "spectrum";
  case ExperimentKind::sweep_T: return "sweep-T";
  case ExperimentKind::exact_oracle: return "exact-oracle";
  case ExperimentKind::cavity_decay: return "cavity-decay";
  }
  return "unknown";
}

KeyValues parse_key_values(std::string_view text)
{
  KeyValues out;
  std::istringstream ss{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    if (trim(line).empty())
      continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ValidationError("config line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty())
      throw ValidationError("config line " + std::to_string(lineno) + ": empty key");
    out[key] = value;
  }
  return out;
}

std::vector<double> parse_grid(const std::string& text)
{
  const std::string s = trim(text);
  const auto open = s.find('(');
  if (open != std::string::npos) {
    const std::string fn = trim(std::string_view(s).substr(0, open));
    if (s.back() != ')')
      throw ValidationError("grid: missing ')' in '" + s + "'");
    const std::vector<double> args = parse_grid(s.substr(open + 1, s.size() - open - 2));
    if (args.size() != 3)
      throw ValidationError("grid: " + fn + " takes (start, stop, count)");
    const double a = args[0];
    const double b = args[1];
    if (args[2] < 0.0 || args[2] != std::floor(args[2]))
      throw ValidationError("grid: point count must be a non-negative integer");
    const auto n = static_cast<std::size_t>(args[2]);
    if (n == 0)
      return {};
    if (fn != "linspace" && fn != "logspace")
      throw ValidationError("grid: unknown generator '" + fn + "'");
    if (fn == "logspace" && !(a > 0.0 && b > 0.0))
      throw ValidationError("grid: logspace needs positive bounds");
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double f = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
      g[i] = fn == "linspace" ? a + (b - a) * f : std::exp(std::log(a) + (std::log(b) - std::log(a)) * f);
    }
    // Pin the end points exactly.
    g.front() = a;
    if (n > 1)
      g.back() = b;
    return g;
  }
  std::vector<double> g;
  std::istringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!trim(item).empty())
      g.push_back(to_double("grid", item));
  return g;
}

ContinuumSpec CavityConfig::continuum(const MediumParams& params) const
{
  const double c = center.value_or(geometry.box_mode_frequency(reference_mode(), params));
  if (profile == Profile::lorentzian)
    return ContinuumSpec::lorentzian(c, half_width, n_omega, rho, alpha, lorentz_width);
  return ContinuumSpec::flat(c, half_width, n_omega, rho, alpha);
}

InitialPhoton CavityConfig::initial_photon() const
{
  return start == PhotonStart::box_mode ? InitialPhoton::box_mode(geometry, start_index)
                                        : InitialPhoton::localized(geometry, start_index);
}

void ExperimentConfig::validate() const
{
  params.validate();
  if (!(tol > 1e-14 && tol < 1e-4))
    throw ValidationError("config: tol must lie in (1e-14, 1e-4)");
  if (!(tail_eps > 0.0 && tail_eps < 1e-3))
    throw ValidationError("config: tail_eps must lie in (0, 1e-3)");
  if (jobs == 0)
    throw ValidationError("config: jobs must be >= 1");
  if (max_steps == 0)
    throw ValidationError("config: max_steps must be >= 1");

  switch (kind) {
  case ExperimentKind::dispersion:
    check_grid(k_grid, "k_grid", false);
    quench();
    break;
  case ExperimentKind::spectrum:
    check_grid(k_grid, "k_grid", true);
    quench();
    break;
  case ExperimentKind::sweep_T:
    check_grid(T_grid, "T_grid", true);
    if (!(k > 0.0))
      throw ValidationError("config: k must be > 0");
    quench();
    break;
  case ExperimentKind::exact_oracle:
    check_grid(T_grid, "T_grid", true);
    if (!omega_x)
      throw ValidationError("config: missing key 'omega_x'");
    if (!(omega_x->initial_value() > 0.0 && omega_x->final_value() > 0.0))
      throw ValidationError("config: omega_x must stay positive");
    break;
  case ExperimentKind::cavity_decay:
    cavity.geometry.validate();
    if (cavity.n_omega < 2 || !(cavity.half_width > 0.0) || !(cavity.rho > 0.0) || !(cavity.alpha >= 0.0))
      throw ValidationError("config: continuum needs n_omega >= 2, half_width > 0, rho > 0, alpha >= 0");
    if (cavity.profile == CavityConfig::Profile::lorentzian && !(cavity.lorentz_width > 0.0))
      throw ValidationError("config: continuum.width must be > 0");
    if (cavity.n_t < 2 || !(cavity.t_max_fraction > 0.0 && cavity.t_max_fraction < 1.0))
      throw ValidationError("config: survival needs n_t >= 2 and 0 < t_max_fraction < 1");
    if (cavity.start == PhotonStart::box_mode
            ? (cavity.start_index < 1 || cavity.start_index > cavity.geometry.n_x)
            : cavity.start_index >= cavity.geometry.n_x)
      throw ValidationError("config: cavity.initial index out of range");
    cavity.continuum(params).validate();
    break;
  }
}

QuenchSpec ExperimentConfig::quench() const
{
  if (!omega_x)
    throw ValidationError("config: missing key 'omega_x'");
  if (!alpha)
    throw ValidationError("config: missing key 'alpha' (the coupling schedule is never defaulted)");
  QuenchSpec spec{*omega_x, *alpha, params};
  spec.validate();
  return spec;
}

ExperimentConfig config_from_keys(const KeyValues& keys)
{
  KeyReader r(keys);
  ExperimentConfig c;
  if (const std::string* k = r.find("kind"))
    c.kind = parse_experiment_kind(trim(*k));
  c.params.eps0 = r.number("eps0", c.params.eps0);
  c.params.rho = r.number("rho", c.params.rho);
  c.params.c = r.number("c", c.params.c);
  c.omega_x = read_schedule(r, "omega_x", SigmoidMode::squared);
  c.alpha = read_schedule(r, "alpha", SigmoidMode::linear);
  if (const std::string* g = r.find("k_grid"))
    c.k_grid = parse_grid(*g);
  if (const std::string* g = r.find("T_grid"))
    c.T_grid = parse_grid(*g);
  c.k = r.number("k", c.k);
  c.tol = r.number("tol", c.tol);
  c.tail_eps = r.number("tail_eps", c.tail_eps);
  c.max_steps = r.count("max_steps", c.max_steps);
  c.jobs = r.count("jobs", c.jobs);
  if (const std::string* s = r.find("dispersion.parameters")) {
    if (trim(*s) != "initial" && trim(*s) != "final")
      throw ValidationError("config: dispersion.parameters must be initial or final");
    c.dispersion_final = trim(*s) == "final";
  }
  if (const std::string* o = r.find("out"))
    c.out = trim(*o);
  if (const std::string* f = r.find("format"))
    c.format = parse_output_format(trim(*f));

  CavityConfig& cav = c.cavity;
  cav.geometry.box_length = r.number("cavity.box_length", cav.geometry.box_length);
  cav.geometry.gap_length = r.number("cavity.gap_length", cav.geometry.gap_length);
  cav.geometry.n_x = r.count("cavity.n_x", cav.geometry.n_x);
  if (const std::string* s = r.find("cavity.initial")) {
    // "box:<j>" or "site:<i>"
    const std::string v = trim(*s);
    const auto colon = v.find(':');
    const std::string what = colon == std::string::npos ? v : v.substr(0, colon);
    if (colon == std::string::npos || (what != "box" && what != "site"))
      throw ValidationError("config: cavity.initial must be box:<j> or site:<i>");
    cav.start = what == "box" ? PhotonStart::box_mode : PhotonStart::site;
    cav.start_index = to_count("cavity.initial", v.substr(colon + 1));
  }
  if (const std::string* p = r.find("continuum.profile")) {
    if (trim(*p) == "flat")
      cav.profile = CavityConfig::Profile::flat;
    else if (trim(*p) == "lorentzian")
      cav.profile = CavityConfig::Profile::lorentzian;
    else
      throw ValidationError("config: continuum.profile must be flat or lorentzian");
  }
  if (const std::string* v = r.find("continuum.center"))
    cav.center = to_double("continuum.center", *v);
  cav.half_width = r.number("continuum.half_width", cav.half_width);
  cav.n_omega = r.count("continuum.n_omega", cav.n_omega);
  cav.rho = r.number("continuum.rho", cav.rho);
  cav.alpha = r.number("continuum.alpha", cav.alpha);
  cav.lorentz_width = r.number("continuum.width", cav.lorentz_width);
  cav.n_t = r.count("survival.n_t", cav.n_t);
  cav.t_max_fraction = r.number("survival.t_max_fraction", cav.t_max_fraction);

  r.check_all_used();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path, const KeyValues& overrides)
{
  KeyValues keys;
  if (!path.empty()) {
    std::ifstream is(path);
    if (!is)
      throw IoError("config: cannot read '" + path.string() + "'");
    std::ostringstream ss;
    ss << is.rdbuf();
    try {
      keys = parse_key_values(ss.str());
    } catch (const ValidationError& e) {
      throw ValidationError(path.string() + ": " + e.what());
    }
  }
  for (const auto& [k, v] : overrides)
    keys[k] = v;
  return config_from_keys(keys);
}

} // namespace polariton
