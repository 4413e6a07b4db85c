#include "polariton/errors.hpp"
#include "polariton/hopfield.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <random>

using namespace polariton;

namespace {

using cd = std::complex<double>;

// Positive imaginary parts of the eigenvalues of J h, by a general eigen-solve.
std::pair<double, double> eigen_frequencies(const MediumParams& p, double k, double wx, double a)
{
  Eigen::EigenSolver<Mat4> es(flow_matrix(p, {k}, wx, a));
  std::vector<double> w;
  for (int i = 0; i < 4; ++i)
    if (es.eigenvalues()(i).imag() > 0)
      w.push_back(es.eigenvalues()(i).imag());
  REQUIRE(w.size() == 2);
  std::sort(w.begin(), w.end());
  return {w[0], w[1]};
}

} // namespace

TEST_CASE("resonant branches at c k = omega_x")
{
  // Frozen from an independent high-precision root solve.
  const BranchFrequencies f = branch_frequencies({}, {1.0}, 1.0, 0.05);
  CHECK(f.lower == doctest::Approx(0.9753124511871278).epsilon(1e-14));
  CHECK(f.upper == doctest::Approx(1.0253124511871278).epsilon(1e-14));
}

TEST_CASE("uncoupled branches are exactly c k and omega_x")
{
  const MediumParams p{1.0, 1.0, 1.0};
  for (double k : {0.0, 0.1, 0.7, 1.3, 20.0}) {
    const BranchFrequencies f = branch_frequencies(p, {k}, 1.0, 0.0);
    CHECK(f.lower == std::min(k, 1.0));
    CHECK(f.upper == std::max(k, 1.0));
  }
  CHECK_THROWS_AS(branch_frequencies(p, {1.0}, 1.0, 0.0), DegenerateMode);
}

TEST_CASE("k -> 0 upper branch tends to sqrt(omega_x^2 + alpha^2)")
{
  const BranchFrequencies f = branch_frequencies({}, {0.0}, 1.0, 0.05);
  CHECK(f.lower == 0.0);
  CHECK(std::abs(f.upper - 1.0012492197250393) <= 1e-12);
  const double tiny = branch_frequencies({}, {1e-8}, 1.0, 0.05).upper;
  CHECK(std::abs(tiny - std::sqrt(1.0 + 0.0025)) <= 1e-10);
}

TEST_CASE("roots agree with a general eigen-solve for random parameters")
{
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> k(0.01, 5.0), wx(0.2, 3.0), a(0.0, 0.5), unit(0.5, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    const MediumParams p{unit(rng), unit(rng), unit(rng)};
    const double kk = k(rng), w = wx(rng), alpha = a(rng) * p.coupling_unit();
    const BranchFrequencies f = branch_frequencies(p, {kk}, w, alpha);
    const auto [lo, hi] = eigen_frequencies(p, kk, w, alpha);
    CHECK(f.lower == doctest::Approx(lo).epsilon(1e-10));
    CHECK(f.upper == doctest::Approx(hi).epsilon(1e-10));
    // Both satisfy the quartic.
    for (double om : {f.lower, f.upper}) {
      const double lhs = (om * om - p.c * p.c * kk * kk) * (om * om - w * w);
      const double rhs = om * om * alpha * alpha / (p.eps0 * p.rho);
      CHECK(std::abs(lhs - rhs) <= 1e-11 * (1 + std::abs(rhs) + std::pow(kk * p.c + w, 4)));
    }
  }
}

TEST_CASE("normal-mode rows are normalized left eigenvectors with a fixed phase")
{
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> k(0.05, 4.0), wx(0.3, 2.0), a(0.0, 0.3);
  for (int trial = 0; trial < 100; ++trial) {
    const MediumParams p{};
    const double kk = k(rng), w = wx(rng), alpha = a(rng);
    const NormalModeBasis b = normal_mode_basis(p, {kk}, w, alpha);
    CHECK(normalization_residual(b) <= 1e-12);

    const Eigen::Matrix4cd g = flow_matrix(p, {kk}, w, alpha).cast<cd>();
    const double ws[] = {b.frequencies.lower, -b.frequencies.lower, b.frequencies.upper, -b.frequencies.upper};
    for (int r = 0; r < 4; ++r) {
      // d/dt (c z) = c J h z = -i w (c z)
      const Eigen::RowVector4cd lhs = b.rows.row(r) * g;
      const Eigen::RowVector4cd rhs = cd(0.0, -ws[r]) * b.rows.row(r);
      CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-11 * (1 + g.cwiseAbs().maxCoeff()));
    }
    for (int r : {0, 2}) {
      if (alpha > 0.0) {
        CHECK(b.rows(r, 0).imag() == 0.0);
        CHECK(b.rows(r, 0).real() > 0.0);
      }
    }
    CHECK((b.inverse() * b.rows - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("uncoupled basis falls back to the exciton coefficient for the phase")
{
  const NormalModeBasis b = normal_mode_basis({}, {2.0}, 1.0, 0.0);
  CHECK(normalization_residual(b) <= 1e-14);
  // Lower branch is the bare exciton: no weight on A or Pi.
  CHECK(std::abs(b.rows(0, 0)) == 0.0);
  CHECK(std::abs(b.rows(0, 1)) == 0.0);
  CHECK(b.rows(0, 2).imag() == 0.0);
  CHECK(b.rows(0, 2).real() > 0.0);
  // Upper branch is the bare photon.
  CHECK(b.rows(2, 0).real() > 0.0);
  CHECK(std::abs(b.rows(2, 2)) == 0.0);
}

TEST_CASE("large detuning keeps full relative accuracy")
{
  // Lower branch ~ omega_x - alpha^2/(2 k^2) type shifts that a naive
  // quadratic formula would lose to cancellation.
  const BranchFrequencies f = branch_frequencies({}, {1e4}, 1.0, 1e-3);
  const auto [lo, hi] = eigen_frequencies({}, 1e4, 1.0, 1e-3);
  CHECK(f.lower == doctest::Approx(lo).epsilon(1e-12));
  CHECK(f.upper == doctest::Approx(hi).epsilon(1e-12));
  CHECK(f.lower < 1.0);
}

TEST_CASE("invalid inputs")
{
  CHECK_THROWS_AS(branch_frequencies({}, {-1.0}, 1.0, 0.1), ValidationError);
  CHECK_THROWS_AS(branch_frequencies({}, {1.0}, 0.0, 0.1), ValidationError);
  CHECK_THROWS_AS(branch_frequencies({}, {1.0}, 1.0, -0.1), ValidationError);
  CHECK_THROWS_AS(normal_mode_basis({}, {0.0}, 1.0, 0.1), ValidationError);
}
