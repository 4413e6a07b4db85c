#include "polariton/config.hpp"
#include "polariton/errors.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>

using namespace polariton;

namespace {

const char* fig1 = R"(
# comment line
kind = spectrum
omega_x = ramp
omega_x.v1 = 1
omega_x.v2 = 0.95   # trailing comment
omega_x.T = 2
alpha = ramp
alpha.v1 = 0.05
alpha.v2 = 0.03
alpha.T = 2
k_grid = logspace(0.1, 3, 60)
)";

} // namespace

TEST_CASE("key/value parsing")
{
  const KeyValues kv = parse_key_values("a = 1\n\n  b=two words  # c\n# d = 4\n");
  CHECK(kv.size() == 2);
  CHECK(kv.at("a") == "1");
  CHECK(kv.at("b") == "two words");
  CHECK_THROWS_AS(parse_key_values("just text\n"), ValidationError);
  CHECK_THROWS_AS(parse_key_values(" = 3\n"), ValidationError);
}

TEST_CASE("grids")
{
  const auto lin = parse_grid("linspace(0, 1, 5)");
  CHECK(lin == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  const auto log = parse_grid("logspace(0.1, 3, 60)");
  REQUIRE(log.size() == 60);
  CHECK(log.front() == 0.1);
  CHECK(log.back() == 3.0);
  CHECK(log[1] / log[0] == doctest::Approx(log[59] / log[58]));
  CHECK(parse_grid("1, 2.5,4") == std::vector<double>{1.0, 2.5, 4.0});
  CHECK(parse_grid("linspace(0, 1, 0)").empty());
  CHECK_THROWS_AS(parse_grid("logspace(0, 1, 3)"), ValidationError);
  CHECK_THROWS_AS(parse_grid("cubespace(0, 1, 3)"), ValidationError);
  CHECK_THROWS_AS(parse_grid("linspace(0, 1)"), ValidationError);
  CHECK_THROWS_AS(parse_grid("linspace(0, 1, 2.5)"), ValidationError);
  CHECK_THROWS_AS(parse_grid("1, x"), ValidationError);
}

TEST_CASE("figure config parses into schedules and a grid")
{
  const ExperimentConfig c = config_from_keys(parse_key_values(fig1));
  CHECK(c.kind == ExperimentKind::spectrum);
  CHECK(c.omega_x->describe() == "ramp(v1=1, v2=0.95, T=2)");
  CHECK(c.alpha->describe() == "ramp(v1=0.05, v2=0.03, T=2)");
  CHECK(c.k_grid.size() == 60);
  CHECK(c.tol == 1e-12);
  CHECK_NOTHROW(c.validate());
}

TEST_CASE("sigmoid mode defaults: squared for omega_x, linear for alpha")
{
  const ExperimentConfig c = config_from_keys(parse_key_values(
    "omega_x = sigmoid\nomega_x.v1 = 1\nomega_x.v2 = 0.9\nomega_x.tau = 0.3\n"
    "alpha = sigmoid\nalpha.v1 = 0.05\nalpha.v2 = 0.03\nalpha.tau = 0.3\n"));
  CHECK(std::get<SigmoidForm>(c.omega_x->form()).mode == SigmoidMode::squared);
  CHECK(std::get<SigmoidForm>(c.alpha->form()).mode == SigmoidMode::linear);
}

TEST_CASE("validation")
{
  KeyValues kv = parse_key_values(fig1);
  auto with = [&](const std::string& key, const std::string& value) {
    KeyValues copy = kv;
    copy[key] = value;
    return copy;
  };
  CHECK_THROWS_AS(config_from_keys(with("k_grid", "linspace(0.1, 3, 0)")).validate(), ValidationError);
  CHECK_THROWS_AS(config_from_keys(with("k_grid", "1, 0.5")).validate(), ValidationError);
  CHECK_THROWS_AS(config_from_keys(with("k_grid", "0, 0.5")).validate(), ValidationError);
  CHECK_THROWS_AS(config_from_keys(with("tol", "1e-14")).validate(), ValidationError);
  CHECK_THROWS_AS(config_from_keys(with("tol", "1e-4")).validate(), ValidationError);
  CHECK_NOTHROW(config_from_keys(with("tol", "1e-13")).validate());
  CHECK_THROWS_AS(config_from_keys(with("jobs", "0")).validate(), ValidationError);
  CHECK_THROWS_AS(config_from_keys(with("omega_x.v2", "0")).validate(), ValidationError);
  CHECK_THROWS_AS(config_from_keys(with("omega_x", "cubic")), ValidationError);
  CHECK_THROWS_AS(config_from_keys(with("typo.key", "1")), ValidationError);
  CHECK_THROWS_AS(config_from_keys(with("eps0", "abc")), ValidationError);
  CHECK_THROWS_AS(config_from_keys(with("format", "xml")), ValidationError);

  KeyValues no_alpha = kv;
  for (const char* k : {"alpha", "alpha.v1", "alpha.v2", "alpha.T"})
    no_alpha.erase(k);
  CHECK_THROWS_AS(config_from_keys(no_alpha).validate(), ValidationError);

  // k = 0 is fine for a dispersion table but not for a quench.
  ExperimentConfig d = config_from_keys(with("k_grid", "0, 1"));
  d.kind = ExperimentKind::dispersion;
  CHECK_NOTHROW(d.validate());
  d.kind = ExperimentKind::spectrum;
  CHECK_THROWS_AS(d.validate(), ValidationError);

  // A duration sweep needs its own grid.
  ExperimentConfig s = config_from_keys(kv);
  s.kind = ExperimentKind::sweep_T;
  CHECK_THROWS_AS(s.validate(), ValidationError);
}

TEST_CASE("cavity keys")
{
  const ExperimentConfig c = config_from_keys(parse_key_values(
    "kind = cavity-decay\ncavity.n_x = 80\ncavity.initial = site:12\ncontinuum.profile = lorentzian\n"
    "continuum.width = 0.02\ncontinuum.n_omega = 10\nsurvival.n_t = 50\n"));
  CHECK(c.kind == ExperimentKind::cavity_decay);
  CHECK(c.cavity.geometry.n_x == 80);
  CHECK(c.cavity.start == PhotonStart::site);
  CHECK(c.cavity.start_index == 12);
  CHECK(c.cavity.profile == CavityConfig::Profile::lorentzian);
  CHECK(c.cavity.reference_mode() == 1);
  CHECK_NOTHROW(c.validate());

  CHECK_THROWS_AS(config_from_keys(parse_key_values("cavity.initial = mode:1\n")), ValidationError);
  ExperimentConfig bad = c;
  bad.cavity.geometry.n_x = 32;
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  bad = c;
  bad.cavity.start_index = 80;
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  bad = c;
  bad.cavity.t_max_fraction = 1.0;
  CHECK_THROWS_AS(bad.validate(), ValidationError);
}

TEST_CASE("files and overrides")
{
  const auto path = std::filesystem::temp_directory_path() / "polariton_test_config.cfg";
  {
    std::ofstream os(path);
    os << fig1;
  }
  const ExperimentConfig c = load_config(path, {{"omega_x.T", "4"}, {"tol", "1e-12"}});
  CHECK(c.omega_x->describe() == "ramp(v1=1, v2=0.95, T=4)");
  CHECK(c.tol == 1e-12);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_config(path), IoError);
  CHECK(load_config({}, {{"k", "3"}}).k == 3.0);
}

TEST_CASE("experiment kind names")
{
  for (auto k : {ExperimentKind::dispersion, ExperimentKind::spectrum, ExperimentKind::sweep_T,
                 ExperimentKind::exact_oracle, ExperimentKind::cavity_decay})
    CHECK(parse_experiment_kind(to_string(k)) == k);
  CHECK_THROWS_AS(parse_experiment_kind("sweep"), ValidationError);
}
