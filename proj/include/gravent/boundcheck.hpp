#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gravent/dynamics.hpp"
#include "gravent/errors.hpp"
#include "gravent/gaussian.hpp"
#include "gravent/real.hpp"
#include "gravent/states.hpp"
#include "gravent/util.hpp"

namespace gravent {

template <class Real>
struct SampleBatch {
  std::vector<StandardFormParams<Real>> samples;
  long attempts = 0;

  double acceptance_rate() const {
    return attempts == 0 ? 0.0
                         : static_cast<double>(samples.size()) / static_cast<double>(attempts);
  }
};

/// Rejection-samples physical standard-form quadruples: a, b uniform on
/// [1/2, a_max], c, d uniform on [-sqrt(ab), sqrt(ab)], kept iff all four
/// physicality conditions hold. Draws are binary64 regardless of Real, so a
/// seed produces one sample stream at every precision.
template <class Real>
SampleBatch<Real> sample_standard_form(std::uint64_t seed, int n, double a_max = 3.0) {
  if (!(a_max > 0.5)) throw invalid_argument_error("a_max must exceed 1/2");
  if (n < 1) throw invalid_argument_error("need at least one sample");
  SampleRng rng(seed);
  SampleBatch<Real> out;
  out.samples.reserve(static_cast<std::size_t>(n));
  const long attempt_budget = 1000L * n + 1000L;
  while (static_cast<int>(out.samples.size()) < n) {
    if (out.attempts > attempt_budget)
      throw acceptance_too_low("standard-form acceptance rate below 1e-3; lower a_max");
    ++out.attempts;
    StandardFormParams<double> p;
    p.a = rng.uniform(0.5, a_max);
    p.b = rng.uniform(0.5, a_max);
    const double bound = std::sqrt(p.a * p.b);
    p.c = rng.uniform(-bound, bound);
    p.d = rng.uniform(-bound, bound);
    if (!bona_fide_standard_form(p).empty()) continue;
    out.samples.push_back(StandardFormParams<Real>{Real(p.a), Real(p.b), Real(p.c), Real(p.d)});
  }
  return out;
}

/// Exact relative change (nu(t) - nu(0))/nu(0) for a standard-form initial
/// state evolved at coupling eps to phase omega' t. Differences are taken
/// between the cancellation-safe 1 - nu values; run with an extended Real for
/// eps below ~1e-6.
template <class Real>
Real relative_change_exact(const StandardFormParams<Real>& p, const Real& eps,
                           const Real& phase) {
  if (!(eps > 0 && eps <= Real(0.1)))
    throw invalid_argument_error("relative change is defined for eps in (0, 0.1]");
  const CovarianceMatrix<Real> sigma0 = standard_form_state(p);
  const auto before = symplectic_eigenvalue(sigma0);
  const auto after = symplectic_eigenvalue(evolve(sigma0, eps, phase));
  return (before.one_minus_nu - after.one_minus_nu) / before.nu;
}

template <class Real>
struct SampleReport {
  std::uint64_t seed = 0;
  int n_samples = 0;
  Real eps{};
  std::vector<Real> phases;
  Real min_relative_change{};
  StandardFormParams<Real> argmin_params;
  Real argmin_phase{};
  long violations = 0;
  double acceptance_rate = 0;
  // family name -> relative change achieved at phase pi/2
  std::vector<std::pair<std::string, Real>> saturating_families;
};

/// Monte-Carlo verification of the universal bound
/// (nu(t) - nu(0))/nu(0) >= -eps over physical standard-form states, with the
/// saturating families (thermal, two-mode squeezed r > 0) evaluated
/// explicitly. The bound is first order, so violations are counted against
/// -eps (1 + 10 eps). A violation throws: it indicates an implementation bug,
/// not new physics.
template <class Real>
SampleReport<Real> verify_bound(std::uint64_t seed, int n, const Real& eps,
                                const std::vector<Real>& phases, double a_max = 3.0,
                                int jobs = 1) {
  if (!(eps > 0) || eps > Real(1e-2))
    throw invalid_argument_error("bound verification expects eps in (0, 1e-2]");
  if (phases.empty()) throw invalid_argument_error("need at least one phase");

  auto batch = sample_standard_form<Real>(seed, n, a_max);
  const int np = static_cast<int>(phases.size());

  std::vector<Real> rc(static_cast<std::size_t>(n) * np);
  parallel_for(n, jobs, [&](int i) {
    for (int j = 0; j < np; ++j)
      rc[static_cast<std::size_t>(i) * np + j] =
          relative_change_exact(batch.samples[static_cast<std::size_t>(i)], eps,
                                phases[static_cast<std::size_t>(j)]);
  });

  SampleReport<Real> report;
  report.seed = seed;
  report.n_samples = n;
  report.eps = eps;
  report.phases = phases;
  report.acceptance_rate = batch.acceptance_rate();

  const Real floor = -eps * (Real(1) + Real(10) * eps);
  bool have_min = false;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < np; ++j) {
      const Real v = rc[static_cast<std::size_t>(i) * np + j];
      if (!have_min || v < report.min_relative_change) {
        report.min_relative_change = v;
        report.argmin_params = batch.samples[static_cast<std::size_t>(i)];
        report.argmin_phase = phases[static_cast<std::size_t>(j)];
        have_min = true;
      }
      if (v < floor) ++report.violations;
    }

  const Real half_pi = pi<Real>() / 2;
  using std::cosh;
  using std::sinh;
  const Real ch = cosh(Real(1)) / 2, sh = sinh(Real(1)) / 2;
  const std::pair<std::string, StandardFormParams<Real>> families[] = {
      {"ground", {Real(0.5), Real(0.5), Real(0), Real(0)}},
      {"thermal_theta2", {Real(1), Real(1), Real(0), Real(0)}},
      {"tms_r1", {ch, ch, sh, -sh}},
  };
  for (const auto& fam : families) {
    const Real v = relative_change_exact(fam.second, eps, half_pi);
    report.saturating_families.emplace_back(fam.first, v);
    if (v < floor) ++report.violations;
    if (!have_min || v < report.min_relative_change) {
      report.min_relative_change = v;
      report.argmin_params = fam.second;
      report.argmin_phase = half_pi;
      have_min = true;
    }
  }

  if (report.violations > 0) {
    std::ostringstream os;
    os << "bound violated " << report.violations << " time(s); worst relative change "
       << to_decimal_string(report.min_relative_change) << " at (a,b,c,d)=("
       << to_decimal_string(report.argmin_params.a) << ","
       << to_decimal_string(report.argmin_params.b) << ","
       << to_decimal_string(report.argmin_params.c) << ","
       << to_decimal_string(report.argmin_params.d) << ")";
    throw bound_violation(os.str());
  }
  return report;
}

/// Searches for states that would make the relative change scale as
/// sqrt(eps): simultaneously alpha != 0 and Delta0^2 = 4 det sigma. Expected
/// empty. Every sample additionally passes the algebraic chain check: the
/// quadratic (in d) expressing the degeneracy has real roots only if
/// (c^2 - ab)(a^2 - b^2)^2 >= 0; physicality forces c^2 < ab, hence a = b,
/// hence c = d, hence alpha = 0.
template <class Real>
std::vector<StandardFormParams<Real>> search_sqrt_epsilon_states(std::uint64_t seed, int n,
                                                                 double a_max = 3.0) {
  using std::fabs;
  auto batch = sample_standard_form<Real>(seed, n, a_max);
  std::vector<StandardFormParams<Real>> hits;
  for (const auto& p : batch.samples) {
    const Real ab = p.a * p.b;
    // Physicality margin: ab - c^2 >= b/(4a) > 0. A sample breaking this
    // breaks the whole impossibility argument.
    if (!(p.c * p.c < ab)) {
      std::ostringstream os;
      os << "sample with c^2 >= ab escaped the physicality gate: (a,b,c,d)=("
         << to_decimal_string(p.a) << "," << to_decimal_string(p.b) << ","
         << to_decimal_string(p.c) << "," << to_decimal_string(p.d) << ")";
      throw impossibility_violated(os.str());
    }
    const Real discriminant_sign = (p.c * p.c - ab) * sqr(p.a * p.a - p.b * p.b);
    if (discriminant_sign > 0)
      throw impossibility_violated("degeneracy quadratic acquired a real root off a = b");

    const Real delta0 = p.a * p.a + p.b * p.b - Real(2) * p.c * p.d;
    const Real det_sigma = (ab - p.c * p.c) * (ab - p.d * p.d);
    const Real alpha_coeff = Real(2) * (p.a + p.b) * (p.c - p.d);  // alpha at sin^2 = 1
    const bool degenerate =
        fabs(delta0 * delta0 - Real(4) * det_sigma) <= Real(1e-10) * sqr(delta0);
    if (degenerate && fabs(alpha_coeff) > Real(1e-8)) hits.push_back(p);
  }
  return hits;
}

}  // namespace gravent
