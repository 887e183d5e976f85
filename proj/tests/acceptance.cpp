// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failures. Run directly or through ctest.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "gravent/gravent.hpp"

using namespace gravent;

namespace {

const double half_pi = std::acos(-1.0) / 2;

struct Harness {
  int failures = 0;
  std::chrono::steady_clock::time_point started;

  void begin() { started = std::chrono::steady_clock::now(); }

  void report(int id, const std::string& name, bool pass, const std::string& detail,
              double budget_seconds) {
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    const bool in_budget = secs < budget_seconds;
    char timing[48];
    std::snprintf(timing, sizeof(timing), "%.2fs/%gs", secs, budget_seconds);
    std::cout << ((pass && in_budget) ? "[PASS] " : "[FAIL] ") << "criterion " << id
              << ": " << name << " (" << detail << ", " << timing << ")\n";
    if (!(pass && in_budget)) ++failures;
  }
};

SystemParams<double> reference_system() {
  SystemParams<double> p;
  p.mass = 1e-15;
  p.omega = 1e3;
  p.separation = 1e-4;
  return p;
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

int worker_count() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw > 8 ? 8 : hw);
}

// 1. Threshold temperature: closed form at 1.7e-10 K (+-2%), numeric root
//    within 5%.
void criterion_1(Harness& h) {
  h.begin();
  const auto closed = t_max_thermal(reference_system());
  auto sys = reference_system();
  const auto numeric = t_max_numeric(sys, closed / 10, closed * 10);
  const bool near_paper = std::fabs(closed - 1.7e-10) <= 0.02 * 1.7e-10;
  const bool roots_agree = std::fabs(numeric - closed) / closed <= 0.05;
  h.report(1, "threshold temperature", near_paper && roots_agree,
           "closed=" + fmt(closed) + " K, numeric=" + fmt(numeric) + " K", 1.0);
}

// 2. Frequency-sweep reproduction at 50 decimal digits (exact engine):
//    onset near 5.6e2 (+-10%), single interior peak of ~5e-19 (+-30%) at
//    omega_opt in [5.5e2, 7e2], monotone decay beyond.
void criterion_2(Harness& h) {
  h.begin();
  SweepSpec<real50> spec;
  spec.variable = SweepVariable::omega;
  spec.lo = real50(5e2);
  spec.hi = real50(3e3);
  spec.points = 120;
  spec.fixed.mass = real50(1e-15);
  spec.fixed.omega = real50(1e3);
  spec.fixed.separation = real50(1e-4);
  spec.fixed.temperature = real50(1e-10);
  spec.engine = SweepEngine::exact;
  spec.phase_grid_points = 64;
  const auto curve = run_sweep(spec, worker_count());

  std::size_t peak = 0, onset = curve.size();
  for (std::size_t i = 0; i < curve.size(); ++i) {
    if (curve[i].log_negativity > curve[peak].log_negativity) peak = i;
    if (onset == curve.size() && curve[i].log_negativity > 0) onset = i;
  }
  if (onset == curve.size() || onset == 0 || peak <= onset) {
    h.report(2, "frequency sweep at 50 digits", false, "curve has no onset/peak shape", 30.0);
    return;
  }
  bool zeros_below_onset = true;
  for (std::size_t i = 0; i < onset; ++i)
    zeros_below_onset = zeros_below_onset && curve[i].log_negativity == 0;
  const double onset_x = static_cast<double>(curve[onset].x);
  const double peak_x = static_cast<double>(curve[peak].x);
  const double peak_en = static_cast<double>(curve[peak].log_negativity);

  bool monotone_past_peak = true;
  for (std::size_t i = peak + 1; i < curve.size(); ++i)
    monotone_past_peak = monotone_past_peak &&
                         curve[i].log_negativity <=
                             curve[i - 1].log_negativity * real50("1.000000001");
  bool rising_to_peak = true;
  for (std::size_t i = onset + 1; i <= peak; ++i)
    rising_to_peak = rising_to_peak &&
                     curve[i].log_negativity >=
                         curve[i - 1].log_negativity * real50("0.999999999");

  const bool pass = zeros_below_onset && std::fabs(onset_x - 5.6e2) <= 0.1 * 5.6e2 &&
                    peak_x >= 5.5e2 && peak_x <= 7e2 &&
                    std::fabs(peak_en - 5e-19) <= 0.3 * 5e-19 && monotone_past_peak &&
                    rising_to_peak && detectable_count(curve) == 0;
  h.report(2, "frequency sweep at 50 digits", pass,
           "onset=" + fmt(onset_x) + ", peak E_N=" + fmt(peak_en) + " at omega=" +
               fmt(peak_x), 30.0);
}

// 3. Power-law fit over 16 temperatures in [1e-15, 1] K: exponent in
//    [0.99, 1.09], prefactor within a factor 2 of 1.4e13.
void criterion_3(Harness& h) {
  h.begin();
  std::vector<double> temps;
  for (int i = 0; i < 16; ++i) temps.push_back(std::pow(10.0, -15.0 + i));
  const auto fit = fit_omega_opt_powerlaw(temps, reference_system());
  const bool pass = fit.exponent >= 0.99 && fit.exponent <= 1.09 &&
                    fit.prefactor >= 0.7e13 && fit.prefactor <= 2.8e13;
  h.report(3, "omega_opt power law", pass,
           "exponent=" + fmt(fit.exponent) + ", prefactor=" + fmt(fit.prefactor), 300.0);
}

// 4. Universal bound: 1e4 samples x 3 phases at eps = 1e-3, zero violations
//    of -(1 + 10 eps) eps; saturating families within 10 eps^2 at pi/2;
//    100-sample spot check at eps = 1e-10 with 50 digits.
void criterion_4(Harness& h) {
  h.begin();
  bool pass = true;
  std::string detail;
  try {
    const double eps = 1e-3;
    const auto report = verify_bound<double>(
        42, 10000, eps, {half_pi / 2, half_pi, 1.0}, 3.0, worker_count());
    pass = pass && report.violations == 0;
    for (const auto& fam : report.saturating_families)
      pass = pass && std::fabs(fam.second + eps) <= 10 * eps * eps;
    detail = "min=" + fmt(report.min_relative_change);

    const real50 eps50("1e-10");
    const auto spot = verify_bound<real50>(
        43, 100, eps50, {pi<real50>() / 4, pi<real50>() / 2, real50(1)}, 3.0,
        worker_count());
    pass = pass && spot.violations == 0;
    using std::fabs;
    for (const auto& fam : spot.saturating_families)
      pass = pass && fabs(fam.second + eps50) <= 10 * eps50 * eps50;
    detail += ", spot min=" + fmt(static_cast<double>(spot.min_relative_change));
  } catch (const error& e) {
    pass = false;
    detail = e.what();
  }
  h.report(4, "entanglement bound", pass, detail, 300.0);
}

// 5. Convergence order: max-over-phase |nu_exact - nu_first| scales as eps^2
//    (successive ratios in [3.5, 4.5]) for thermal theta in {1, 1.5} and
//    two-mode squeezed r in {+-1}.
void criterion_5(Harness& h) {
  h.begin();
  const std::vector<double> eps_grid{1e-2, 5e-3, 2.5e-3, 1.25e-3};
  bool pass = true;
  double worst_ratio_lo = 4.0, worst_ratio_hi = 4.0;

  auto max_err = [&](bool squeezed, double param, double eps) {
    double worst = 0;
    const auto sigma0 = squeezed ? two_mode_squeezed_state(param) : thermal_state(param);
    for (int k = 0; k <= 32; ++k) {
      const double phase = 2 * std::acos(-1.0) * k / 32;
      const auto exact = symplectic_eigenvalue(evolve(sigma0, eps, phase));
      const auto first =
          squeezed ? nu_squeezed_first_order(param, eps, phase)
                   : nu_thermal_first_order(ThermalFactor<double>::from_theta(param), eps,
                                            phase);
      worst = std::max(worst, std::fabs(exact.nu - first.nu));
    }
    return worst;
  };

  for (const auto& [squeezed, param] :
       std::vector<std::pair<bool, double>>{{false, 1.0}, {false, 1.5}, {true, 1.0},
                                            {true, -1.0}}) {
    std::vector<double> errs;
    for (double eps : eps_grid) errs.push_back(max_err(squeezed, param, eps));
    for (std::size_t i = 1; i < errs.size(); ++i) {
      const double ratio = errs[i - 1] / errs[i];
      worst_ratio_lo = std::min(worst_ratio_lo, ratio);
      worst_ratio_hi = std::max(worst_ratio_hi, ratio);
      pass = pass && ratio >= 3.5 && ratio <= 4.5;
    }
  }
  h.report(5, "first-order convergence, order eps^2", pass,
           "ratios in [" + fmt(worst_ratio_lo) + ", " + fmt(worst_ratio_hi) + "]", 10.0);
}

// 6. sqrt(eps) impossibility over 1e5 samples, with the discriminant-sign
//    chain checked on every sample inside the search.
void criterion_6(Harness& h) {
  h.begin();
  bool pass = true;
  std::string detail = "no simultaneous alpha != 0 and degenerate spectrum";
  try {
    const auto hits = search_sqrt_epsilon_states<double>(42, 100000);
    pass = hits.empty();
    if (!hits.empty()) detail = "found " + std::to_string(hits.size()) + " candidates";
  } catch (const error& e) {
    pass = false;
    detail = e.what();
  }
  h.report(6, "sqrt(eps) impossibility", pass, detail, 60.0);
}

// 7. Structural invariants, >= 1e3 randomized cases each: symplectic defect,
//    closed vs series propagator, det preservation, standard-form round trip,
//    local-symplectic invariance of nu.
void criterion_7(Harness& h) {
  h.begin();
  SampleRng rng(2024);
  double max_defect = 0, max_series_diff = 0, max_det_drift = 0, max_roundtrip = 0,
         max_invariance = 0;

  for (int i = 0; i < 1000; ++i) {
    const double eps = std::pow(10.0, rng.uniform(-6, -1));
    const double phase = rng.uniform(0.0, 20.0);
    const auto closed = propagator_closed_form(eps, phase);
    const auto series = propagator_series(eps, phase);
    max_defect = std::max(max_defect, closed.symplectic_defect);
    max_series_diff = std::max(max_series_diff, max_abs_diff(closed.matrix, series.matrix));
  }

  const auto batch = sample_standard_form<double>(2025, 1000);
  for (const auto& q : batch.samples) {
    const CovarianceMatrix<double> sigma(
        [&] {
          Mat4<double> m;
          m(0, 0) = m(1, 1) = q.a;
          m(2, 2) = m(3, 3) = q.b;
          m(0, 2) = m(2, 0) = q.c;
          m(1, 3) = m(3, 1) = q.d;
          return m;
        }());
    const double eps = std::pow(10.0, rng.uniform(-5, -2));
    const double phase = rng.uniform(0.0, 20.0);

    const double det_before = det_spd(sigma.entries());
    const double det_after = det_spd(evolve(sigma, eps, phase).entries());
    max_det_drift = std::max(max_det_drift,
                             std::fabs(det_after - det_before) / det_before);

    auto canonical = q;
    if (std::fabs(canonical.c) < std::fabs(canonical.d)) std::swap(canonical.c, canonical.d);
    if (canonical.c < 0) {
      canonical.c = -canonical.c;
      canonical.d = -canonical.d;
    }
    const auto back = standard_form_invariants(standard_form_state(canonical));
    max_roundtrip = std::max({max_roundtrip, std::fabs(back.a - canonical.a),
                              std::fabs(back.b - canonical.b),
                              std::fabs(back.c - canonical.c),
                              std::fabs(back.d - canonical.d)});

    gravent::Mat2<double> s1, s2;
    {
      double a = 0;
      while (std::fabs(a) < 0.3) a = rng.uniform(-1.5, 1.5);
      const double b = rng.uniform(-1.0, 1.0), cc = rng.uniform(-1.0, 1.0);
      s1(0, 0) = a; s1(0, 1) = b; s1(1, 0) = cc; s1(1, 1) = (1 + b * cc) / a;
      a = 0;
      while (std::fabs(a) < 0.3) a = rng.uniform(-1.5, 1.5);
      const double b2 = rng.uniform(-1.0, 1.0), c2 = rng.uniform(-1.0, 1.0);
      s2(0, 0) = a; s2(0, 1) = b2; s2(1, 0) = c2; s2(1, 1) = (1 + b2 * c2) / a;
    }
    Mat4<double> local;
    for (int r = 0; r < 2; ++r)
      for (int cidx = 0; cidx < 2; ++cidx) {
        local(r, cidx) = s1(r, cidx);
        local(r + 2, cidx + 2) = s2(r, cidx);
      }
    const CovarianceMatrix<double> rotated(local * sigma.entries() * local.transposed());
    const double nu0 = symplectic_eigenvalue(sigma).nu;
    const double nu1 = symplectic_eigenvalue(rotated).nu;
    max_invariance = std::max(max_invariance, std::fabs(nu1 - nu0) / nu0);
  }

  const bool pass = max_defect <= 1e-12 && max_series_diff <= 1e-12 &&
                    max_det_drift <= 1e-12 && max_roundtrip <= 1e-10 &&
                    max_invariance <= 1e-12;
  h.report(7, "structural invariants", pass,
           "defect=" + fmt(max_defect) + ", series=" + fmt(max_series_diff) +
               ", det=" + fmt(max_det_drift) + ", roundtrip=" + fmt(max_roundtrip) +
               ", invariance=" + fmt(max_invariance), 60.0);
}

// 8. Casimir-Polder crossover with the defaults lands in [1e-4, 1e-3] m.
void criterion_8(Harness& h) {
  h.begin();
  const double d = casimir_crossover_distance(
      1e-15, 2200.0, std::numeric_limits<double>::infinity(), 0.1);
  const bool pass = d >= 1e-4 && d <= 1e-3;
  h.report(8, "Casimir-Polder crossover", pass, "D=" + fmt(d) + " m", 1.0);
}

// 9. Squeezed temperature window: T_max,s(r=1) = 9.9e-9 K (+-2%), more than
//    50x the thermal threshold, monotone increasing in r.
void criterion_9(Harness& h) {
  h.begin();
  const double t_squeezed = t_max_squeezed(1.0, 0.0, 1e3);
  const double t_thermal = t_max_thermal(reference_system());
  bool monotone = true;
  double prev = 0;
  for (double r : {0.5, 1.0, 2.0, 4.0}) {
    const double t = t_max_squeezed(r, 0.0, 1e3);
    monotone = monotone && t > prev;
    prev = t;
  }
  const bool pass = std::fabs(t_squeezed - 9.9e-9) <= 0.02 * 9.9e-9 &&
                    t_squeezed > 50 * t_thermal && monotone;
  h.report(9, "squeezed temperature window", pass,
           "T_max,s=" + fmt(t_squeezed) + " K, ratio=" + fmt(t_squeezed / t_thermal), 1.0);
}

}  // namespace

int main() {
  Harness h;
  criterion_1(h);
  criterion_2(h);
  criterion_3(h);
  criterion_4(h);
  criterion_5(h);
  criterion_6(h);
  criterion_7(h);
  criterion_8(h);
  criterion_9(h);
  if (h.failures == 0)
    std::cout << "all 9 criteria passed\n";
  else
    std::cout << h.failures << " criteria FAILED\n";
  return h.failures;
}
