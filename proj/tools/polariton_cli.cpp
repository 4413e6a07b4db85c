// polariton: command-line front end for the quench and cavity experiments.
//
// Exit codes: 0 success, 1 invalid input (config, flags, I/O), 2 a
// computation failed (the output, if any, is flagged partial).

#include "polariton/config.hpp"
#include "polariton/errors.hpp"
#include "polariton/experiments.hpp"
#include "polariton/results.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

struct CommonFlags
{
  std::string config;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<double> tol;
  std::optional<std::size_t> jobs;
  std::vector<std::string> sets;
};

void add_common(CLI::App* sub, CommonFlags& f)
{
  sub->add_option("--config", f.config, "Config file (flat key = value)");
  sub->add_option("--out", f.out, "Output path (default: stdout)");
  sub->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--tol", f.tol, "Integrator relative tolerance");
  sub->add_option("--jobs", f.jobs, "Worker threads");
  sub->add_option("--set", f.sets, "Override a config key, KEY=VALUE (repeatable)");
}

polariton::KeyValues overrides(const CommonFlags& f)
{
  polariton::KeyValues kv;
  for (const auto& s : f.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos)
      throw polariton::ValidationError("--set expects KEY=VALUE, got '" + s + "'");
    kv[s.substr(0, eq)] = s.substr(eq + 1);
  }
  return kv;
}

int run(const std::string& subcommand, const CommonFlags& f)
{
  polariton::ExperimentConfig config = polariton::load_config(f.config, overrides(f));
  config.kind = polariton::parse_experiment_kind(subcommand);
  if (f.out)
    config.out = *f.out;
  if (f.format)
    config.format = polariton::parse_output_format(*f.format);
  if (f.tol)
    config.tol = *f.tol;
  if (f.jobs)
    config.jobs = *f.jobs;

  const polariton::ResultTable table = polariton::run_experiment(config);
  polariton::emit(table, config.out, config.format);
  if (table.partial()) {
    std::cerr << "polariton: run stopped early: " << table.meta("error").value_or("unknown error") << '\n';
    return 2;
  }
  return 0;
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Photon-exciton quench simulator"};
  app.set_version_flag("--version", std::string(polariton::version()));
  app.require_subcommand(1);

  CommonFlags flags;
  const std::vector<std::pair<std::string, std::string>> subcommands = {
    {"dispersion", "Branch frequencies over a k grid"},
    {"spectrum", "Created polaritons per mode over a k grid"},
    {"sweep-T", "Created lower-branch polaritons versus quench duration"},
    {"exact-oracle", "Closed-form sigmoid result over a duration grid"},
    {"cavity-decay", "Photon survival probability in the absorptive cavity"},
  };
  for (const auto& [name, help] : subcommands)
    add_common(app.add_subcommand(name, help), flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    return run(app.get_subcommands().front()->get_name(), flags);
  } catch (const polariton::ValidationError& e) {
    std::cerr << "polariton: invalid input: " << e.what() << '\n';
    return 1;
  } catch (const polariton::IoError& e) {
    std::cerr << "polariton: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "polariton: computation failed: " << e.what() << '\n';
    return 2;
  }
}
