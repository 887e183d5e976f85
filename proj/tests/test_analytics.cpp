#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "test_helpers.hpp"

using namespace gravent;
using gravent_test::random_quadruple;

namespace {

const double half_pi = std::acos(-1.0) / 2;

SystemParams<double> reference_system() {
  SystemParams<double> p;
  p.mass = 1e-15;
  p.omega = 1e3;
  p.separation = 1e-4;
  return p;
}

/// Exact relative change from the covariance evolution, for cross-checks.
template <class Real>
Real exact_relative_change(const CovarianceMatrix<Real>& sigma0, const Real& eps,
                           const Real& phase) {
  const auto before = symplectic_eigenvalue(sigma0);
  const auto after = symplectic_eigenvalue(evolve(sigma0, eps, phase));
  return (before.one_minus_nu - after.one_minus_nu) / before.nu;
}

}  // namespace

TEST_CASE("thermal first-order law at reference points") {
  const auto r = nu_thermal_first_order(ThermalFactor<double>::from_theta(1.0), 0.1, half_pi);
  CHECK(r.nu == Catch::Approx(0.9).epsilon(1e-14));

  const auto still = nu_thermal_first_order(ThermalFactor<double>::from_theta(1.7), 0.1, 0.0);
  CHECK(still.nu == Catch::Approx(1.7).epsilon(1e-14));
  CHECK(still.log_negativity == 0.0);

  // ground state: same law as the r = 0 squeezed case
  for (double phase : {0.3, 1.0, 2.5}) {
    const auto thermal = nu_thermal_first_order(ThermalFactor<double>{1.0, 0.0}, 1e-3, phase);
    const auto squeezed = nu_squeezed_first_order(0.0, 1e-3, phase);
    CHECK(thermal.nu == Catch::Approx(squeezed.nu).epsilon(1e-14));
  }
}

TEST_CASE("thermal first-order law survives the physical scale") {
  // theta - 1 ~ 1.34e-33 against eps ~ 1.33e-19: the deviation must come out
  // at full relative accuracy in plain binary64.
  const auto dp = derive_params(reference_system());  // no T set
  const ThermalFactor<double> tf{1.0, 1.3446442414753e-33};
  const auto r = nu_thermal_first_order(tf, dp.epsilon_hat, half_pi);
  CHECK(r.one_minus_nu == Catch::Approx(1.33486e-19).epsilon(1e-4));
  CHECK(r.log_negativity == Catch::Approx(1.33486e-19 / std::log(2.0)).epsilon(1e-4));
}

TEST_CASE("threshold temperature: closed form") {
  auto p = reference_system();
  CHECK(t_max_thermal(p) == Catch::Approx(1.729929311e-10).epsilon(2e-9));

  // ratio below one has no logarithmic solution
  p.mass = 1.0;
  p.omega = 1.0;
  CHECK_THROWS_AS(t_max_thermal(p), log_domain_error);
}

TEST_CASE("threshold temperature is nearly linear in omega") {
  // T_max(2w)/T_max(w) = 2 ln(ratio)/(ln(ratio) + ln 4) ~ 1.94: almost
  // linear, from below.
  auto p = reference_system();
  const double t1 = t_max_thermal(p);
  p.omega *= 2;
  const double t2 = t_max_thermal(p);
  CHECK(t2 / t1 > 1.9);
  CHECK(t2 / t1 < 2.0);
}

TEST_CASE("squeezed first-order law at reference points") {
  const auto gain = nu_squeezed_first_order(1.0, 1e-3, half_pi);
  CHECK(gain.nu == Catch::Approx(std::exp(-1.0) * (1 - 1e-3)).epsilon(1e-13));

  const auto loss = nu_squeezed_first_order(-1.0, 1e-3, half_pi);
  CHECK(loss.nu == Catch::Approx(std::exp(-1.0) * (1 + 1e-3)).epsilon(1e-13));

  const auto ground = nu_squeezed_first_order(0.0, 1e-3, half_pi);
  CHECK(ground.nu == Catch::Approx(1 - 1e-3).epsilon(1e-13));
}

TEST_CASE("squeezed expansion of Delta: leading and linear terms") {
  for (double r : {0.0, 0.4, -0.8, 1.5}) {
    CHECK(delta_squeezed_second_order(r, 0.0, 1.234) ==
          Catch::Approx(std::cosh(2 * r) / 2).epsilon(1e-14));
    // linear coefficient proportional to sinh(2r): vanishes at r = 0
    const double eps = 1e-6;
    const double odd = (delta_squeezed_second_order(r, eps, 1.1) -
                        delta_squeezed_second_order(r, -eps, 1.1)) /
                       (2 * eps);
    CHECK(odd == Catch::Approx(std::sinh(2 * r) * sqr(std::sin(1.1))).margin(1e-9));
  }
}

TEST_CASE("squeezed Delta expansion tracks the exact evolution to O(eps^3)") {
  for (double r : {0.0, 0.7}) {
    for (double eps : {1e-3, 1e-4}) {
      double worst = 0.0;
      for (int k = 0; k < 9; ++k) {
        const double phase = 0.3 + 2 * std::acos(-1.0) * k / 8;
        const auto exact = symplectic_eigenvalue(evolve(two_mode_squeezed_state(r), eps, phase));
        worst = std::max(worst,
                         std::fabs(*exact.Delta - delta_squeezed_second_order(r, eps, phase)));
      }
      CHECK(worst < 50 * eps * eps * eps);
    }
  }
}

TEST_CASE("squeezed threshold temperature") {
  CHECK(t_max_squeezed(1.0, 0.0, 1e3) == Catch::Approx(9.894893276e-9).epsilon(2e-9));

  // monotone increasing in r, without bound
  double prev = 0.0;
  for (double r : {0.5, 1.0, 2.0, 4.0, 8.0}) {
    const double t = t_max_squeezed(r, 0.0, 1e3);
    CHECK(t > prev);
    prev = t;
  }

  // r -> 0 with eps fixed recovers the thermal threshold form
  const double eps = 1e-6;
  const double tiny_r = t_max_squeezed(1e-9, eps, 1e3);
  PhysicalConstants<double> k;
  const double thermal_form = k.hbar * 1e3 / (k.k_B * std::log(2 / eps - 1));
  CHECK(tiny_r == Catch::Approx(thermal_form).epsilon(1e-2));

  CHECK_THROWS_AS(t_max_squeezed(-1.0, 0.0, 1e3), invalid_argument_error);
}

TEST_CASE("standard-form expansion coefficients") {
  // thermal: alpha vanishes, Delta0 = theta^2/2
  const double theta = 1.7;
  const auto thermal = sf_expansion(
      StandardFormParams<double>{theta / 2, theta / 2, 0.0, 0.0}, 1.1, 1.1);
  CHECK(thermal.alpha == 0.0);
  CHECK(thermal.Delta0 == Catch::Approx(theta * theta / 2).epsilon(1e-14));

  // two-mode squeezed: Delta0 = cosh(2r)/2, alpha = sinh(2r) sin^2
  const double r = 0.9, phase = 0.77;
  const double ch = std::cosh(r) / 2, sh = std::sinh(r) / 2;
  const auto tms = sf_expansion(StandardFormParams<double>{ch, ch, sh, -sh}, phase, phase);
  CHECK(tms.Delta0 == Catch::Approx(std::cosh(2 * r) / 2).epsilon(1e-13));
  CHECK(tms.alpha == Catch::Approx(std::sinh(2 * r) * sqr(std::sin(phase))).epsilon(1e-13));

  // a = b, c = d: beta collapses to 4(a^2 - c^2) sin^2
  const auto balanced = sf_expansion(StandardFormParams<double>{1.2, 1.2, 0.5, 0.5},
                                     phase, phase);
  CHECK(balanced.beta ==
        Catch::Approx(4 * (1.2 * 1.2 - 0.25) * sqr(std::sin(phase))).epsilon(1e-12));
}

TEST_CASE("standard-form expansion tracks the exact Delta to O(eps^3)") {
  SampleRng rng(83);
  int checked = 0;
  while (checked < 50) {
    const auto q = random_quadruple(rng, 0.5, 3.0, 1.0);
    if (!bona_fide_standard_form(q).empty()) continue;
    ++checked;
    const double eps = 1e-4, phase = 1.234;
    const auto ex = sf_expansion(q, phase, phase);
    const auto exact = symplectic_eigenvalue(evolve(standard_form_state(q), eps, phase));
    const double predicted = ex.Delta0 + ex.alpha * eps + ex.beta * eps * eps;
    REQUIRE(std::fabs(*exact.Delta - predicted) < 100 * eps * eps * eps);
  }
}

TEST_CASE("first-order relative change of the saturating families") {
  // two-mode squeezed, r > 0, at the oscillation maximum: exactly -eps
  const double r = 1.0, eps = 1e-3;
  const double ch = std::cosh(r) / 2, sh = std::sinh(r) / 2;
  const StandardFormParams<double> tms{ch, ch, sh, -sh};
  CHECK(relative_change_first_order(tms, eps, half_pi) == Catch::Approx(-eps).epsilon(1e-10));

  // thermal states: the degenerate branch gives -eps |sin|
  const StandardFormParams<double> thermal{1.25, 1.25, 0.0, 0.0};
  CHECK(relative_change_first_order(thermal, eps, half_pi) ==
        Catch::Approx(-eps).epsilon(1e-12));
  CHECK(relative_change_first_order(thermal, eps, 0.7) ==
        Catch::Approx(-eps * std::fabs(std::sin(0.7))).epsilon(1e-12));

  // negative squeezing flips the sign
  const StandardFormParams<double> anti{ch, ch, -sh, sh};
  CHECK(relative_change_first_order(anti, eps, half_pi) == Catch::Approx(eps).epsilon(1e-10));
}

TEST_CASE("first-order relative change respects the universal bound") {
  SampleRng rng(89);
  int checked = 0;
  const double eps = 1e-3;
  while (checked < 1000) {
    const auto q = random_quadruple(rng, 0.5, 3.0, 1.0);
    if (!bona_fide_standard_form(q).empty()) continue;
    ++checked;
    for (double phase : {0.6, 1.0, half_pi}) {
      const double rc = relative_change_first_order(q, eps, phase);
      REQUIRE(rc >= -eps * sqr(std::sin(phase)) * (1 + 1e-9));
      REQUIRE(rc >= entanglement_bound(eps) * (1 + 1e-9));
    }
  }
}

TEST_CASE("degenerate spectrum with alpha != 0 is flagged as unphysical") {
  // By construction: a != b with c^2 > ab (violates physicality), d solving
  // the degeneracy quadratic exactly.
  const double a = 1.0, b = 0.5, c = 0.8;
  const double d = (4 * (a * a + b * b) * c -
                    std::sqrt(sqr(4 * (a * a + b * b) * c) -
                              16 * a * b * (sqr(a * a - b * b) + 4 * a * b * c * c))) /
                   (8 * a * b);
  const StandardFormParams<double> p{a, b, c, d};
  CHECK_THROWS_AS(relative_change_first_order(p, 1e-3, 1.0), degenerate_discriminant);
}

TEST_CASE("first-order formulas converge at order eps^2") {
  const double phases_acos = std::acos(-1.0);
  auto max_err_thermal = [&](double theta, double eps) {
    double worst = 0;
    for (int k = 0; k <= 32; ++k) {
      const double phase = 2 * phases_acos * k / 32;
      const auto exact = symplectic_eigenvalue(evolve(thermal_state(theta), eps, phase));
      const auto first =
          nu_thermal_first_order(ThermalFactor<double>::from_theta(theta), eps, phase);
      worst = std::max(worst, std::fabs(exact.nu - first.nu));
    }
    return worst;
  };
  auto max_err_tms = [&](double r, double eps) {
    double worst = 0;
    for (int k = 0; k <= 32; ++k) {
      const double phase = 2 * phases_acos * k / 32;
      const auto exact = symplectic_eigenvalue(evolve(two_mode_squeezed_state(r), eps, phase));
      const auto first = nu_squeezed_first_order(r, eps, phase);
      worst = std::max(worst, std::fabs(exact.nu - first.nu));
    }
    return worst;
  };
  for (double theta : {1.0, 1.5}) {
    const double e1 = max_err_thermal(theta, 1e-2);
    const double e2 = max_err_thermal(theta, 5e-3);
    CHECK(e1 / e2 > 3.5);
    CHECK(e1 / e2 < 4.5);
  }
  for (double r : {1.0, -1.0}) {
    const double e1 = max_err_tms(r, 1e-2);
    const double e2 = max_err_tms(r, 5e-3);
    CHECK(e1 / e2 > 3.5);
    CHECK(e1 / e2 < 4.5);
  }
}

TEST_CASE("exact saturation of the bound at the oscillation maximum") {
  const double eps = 1e-3;
  for (double theta : {1.0, 1.5, 3.0}) {
    const double rc = exact_relative_change(thermal_state(theta), eps, half_pi);
    CHECK(std::fabs(rc + eps) < 5 * eps * eps);
  }
  const double rc_tms = exact_relative_change(two_mode_squeezed_state(1.0), eps, half_pi);
  CHECK(std::fabs(rc_tms + eps) < 5 * eps * eps);
}

TEST_CASE("sign law: squeezing direction decides gain or loss") {
  const double eps = 1e-3;
  for (double phase : {0.3, 1.0, 2.0}) {
    CHECK(exact_relative_change(two_mode_squeezed_state(0.8), eps, phase) < 0);
    CHECK(exact_relative_change(two_mode_squeezed_state(-0.8), eps, phase) > 0);
  }
}

TEST_CASE("universal bound values") {
  CHECK(entanglement_bound(1e-3) == -1e-3);
  CHECK(entanglement_bound(0.0) == 0.0);
  CHECK(entanglement_bound(1.33486e-19) == -1.33486e-19);
  CHECK_THROWS_AS(entanglement_bound(-1e-3), invalid_argument_error);
}

TEST_CASE("Casimir-Polder potential") {
  PhysicalConstants<double> k;
  const double radius = 1e-6, dist = 1e-4;
  const double inf = std::numeric_limits<double>::infinity();

  // perfect reflector cap: dielectric factor -> 1
  const double cap = casimir_polder_potential(radius, dist, inf);
  const double direct = 23 * k.hbar * k.c * std::pow(radius, 6) /
                        (4 * std::acos(-1.0) * std::pow(dist, 7));
  CHECK(cap == Catch::Approx(direct).epsilon(1e-13));

  // vacuum spheres do not interact
  CHECK(casimir_polder_potential(radius, dist, 1.0) == 0.0);

  // D^-7 scaling
  const double near = casimir_polder_potential(radius, dist, 4.0);
  const double far = casimir_polder_potential(radius, 2 * dist, 4.0);
  CHECK(near / far == Catch::Approx(128.0).epsilon(1e-12));

  CHECK_THROWS_AS(casimir_polder_potential(radius, 4 * radius, inf), geometry_invalid);
}

TEST_CASE("Casimir-Polder crossover distance") {
  const double inf = std::numeric_limits<double>::infinity();
  const double d = casimir_crossover_distance(1e-15, 2200.0, inf, 0.1);
  CHECK(d == Catch::Approx(2.1618775e-4).epsilon(1e-6));
  CHECK(d > 1e-4);
  CHECK(d < 1e-3);

  // equality threshold sits closer by 10^{1/6}
  const double d1 = casimir_crossover_distance(1e-15, 2200.0, inf, 1.0);
  CHECK(d / d1 == Catch::Approx(std::pow(10.0, 1.0 / 6)).epsilon(1e-12));

  // no polarizability, no crossover
  CHECK(casimir_crossover_distance(1e-15, 2200.0, 1.0, 0.1) == 0.0);

  // at the crossover, the potential really is `ratio` times gravity
  PhysicalConstants<double> k;
  const double radius = std::cbrt(3 * 1e-15 / (4 * std::acos(-1.0) * 2200.0));
  const double v = casimir_polder_potential(radius, d, inf);
  CHECK(v / (k.G * 1e-15 * 1e-15 / d) == Catch::Approx(0.1).epsilon(1e-10));
}
