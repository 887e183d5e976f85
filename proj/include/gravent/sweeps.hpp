#pragma once

#include <cmath>
#include <vector>

#include "gravent/analytics.hpp"
#include "gravent/dynamics.hpp"
#include "gravent/errors.hpp"
#include "gravent/params.hpp"
#include "gravent/real.hpp"
#include "gravent/states.hpp"
#include "gravent/util.hpp"

namespace gravent {

enum class SweepVariable { omega, temperature, mass, separation, squeezing };

inline const char* to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::omega: return "omega";
    case SweepVariable::temperature: return "T";
    case SweepVariable::mass: return "m";
    case SweepVariable::separation: return "d";
    case SweepVariable::squeezing: return "r";
  }
  return "?";
}

enum class SweepEngine { first_order, exact };

/// Detectability threshold: demonstrating entanglement against current
/// nu-measurement uncertainty (~0.05) needs nu below this.
inline constexpr double nu_detectability_threshold = 0.95;

template <class Real>
struct SweepSpec {
  SweepVariable variable = SweepVariable::omega;
  Real lo{}, hi{};
  int points = 2;
  bool log_spacing = true;
  SystemParams<Real> fixed;        // swept variable's entry is overwritten
  bool maximize_over_time = true;  // else evaluate at `phase`
  Real phase{};                    // rad, used when !maximize_over_time
  SweepEngine engine = SweepEngine::first_order;
  int phase_grid_points = 64;      // exact-engine time maximization grid

  void validate() const {
    if (!(lo < hi)) throw invalid_argument_error("sweep range must have lo < hi");
    if (points < 2) throw invalid_argument_error("sweep needs at least 2 grid points");
    if (log_spacing && !(lo > 0))
      throw invalid_argument_error("log spacing requires a positive range");
    if (phase_grid_points < 2)
      throw invalid_argument_error("phase grid needs at least 2 points");
  }
};

template <class Real>
struct CurvePoint {
  Real x{};
  Real nu{};
  Real one_minus_nu{};
  Real log_negativity{};
  bool detectable = false;  // nu < 0.95
};

template <class Real>
struct FitResult {
  Real prefactor{};  // rad/s at T = 1 K
  Real exponent{};
  Real residual{};   // rms residual of the log-log fit
};

namespace detail {

template <class Real>
SystemParams<Real> with_variable(SystemParams<Real> base, SweepVariable v, const Real& x) {
  switch (v) {
    case SweepVariable::omega: base.omega = x; break;
    case SweepVariable::temperature: base.temperature = x; break;
    case SweepVariable::mass: base.mass = x; break;
    case SweepVariable::separation: base.separation = x; break;
    case SweepVariable::squeezing: base.squeezing = x; break;
  }
  return base;
}

template <class Real>
Real grid_value(const SweepSpec<Real>& spec, int i) {
  using std::exp;
  using std::log;
  const Real f = Real(i) / Real(spec.points - 1);
  if (spec.log_spacing) return spec.lo * exp(f * log(spec.hi / spec.lo));
  return spec.lo + f * (spec.hi - spec.lo);
}

/// One sweep sample. Squeezed inputs take the squeezed-state law; anything
/// else follows the thermal law with theta from T (ground state when absent).
template <class Real>
EntanglementResult<Real> evaluate_point(const SystemParams<Real>& p,
                                        const SweepSpec<Real>& spec,
                                        const PhysicalConstants<Real>& k) {
  const DerivedParams<Real> dp = derive_params(p, k);
  const ThermalFactor<Real> tf =
      dp.thermal ? *dp.thermal : ThermalFactor<Real>{Real(1), Real(0)};

  if (spec.engine == SweepEngine::first_order) {
    const Real phase = spec.maximize_over_time ? pi<Real>() / 2 : spec.phase;
    if (p.squeezing) return nu_squeezed_first_order(*p.squeezing, dp.epsilon_hat, phase);
    return nu_thermal_first_order(tf, dp.epsilon_hat, phase);
  }

  const CovarianceMatrix<Real> sigma0 =
      p.squeezing ? two_mode_squeezed_state(*p.squeezing) : thermal_state(tf.theta);
  if (!spec.maximize_over_time)
    return symplectic_eigenvalue(evolve(sigma0, dp.epsilon, spec.phase));

  EntanglementResult<Real> best;
  bool have = false;
  for (int j = 0; j < spec.phase_grid_points; ++j) {
    const Real phase = two_pi<Real>() * Real(j) / Real(spec.phase_grid_points);
    auto r = symplectic_eigenvalue(evolve(sigma0, dp.epsilon, phase));
    if (!have || r.one_minus_nu > best.one_minus_nu) {
      best = r;
      have = true;
    }
  }
  return best;
}

}  // namespace detail

/// Evaluates the sweep grid. Points are independent and may run on `jobs`
/// threads; the output is ordered by grid index and bit-identical for any
/// thread count.
template <class Real>
std::vector<CurvePoint<Real>> run_sweep(const SweepSpec<Real>& spec, int jobs = 1,
                                        const PhysicalConstants<Real>& k = {}) {
  spec.validate();
  std::vector<CurvePoint<Real>> out(static_cast<std::size_t>(spec.points));
  parallel_for(spec.points, jobs, [&](int i) {
    const Real x = detail::grid_value(spec, i);
    const auto p = detail::with_variable(spec.fixed, spec.variable, x);
    const auto r = detail::evaluate_point(p, spec, k);
    auto& cp = out[static_cast<std::size_t>(i)];
    cp.x = x;
    cp.nu = r.nu;
    cp.one_minus_nu = r.one_minus_nu;
    cp.log_negativity = r.log_negativity;
    cp.detectable = r.nu < Real(nu_detectability_threshold);
  });
  return out;
}

/// E_N(omega) curve under the standard sweep contract.
template <class Real>
std::vector<CurvePoint<Real>> en_vs_omega_curve(const SweepSpec<Real>& spec, int jobs = 1,
                                                const PhysicalConstants<Real>& k = {}) {
  return run_sweep(spec, jobs, k);
}

namespace detail {

/// First-order entanglement gain 1 - nu at the time maximum (phase pi/2):
/// delta_nu(w) = theta(w) eps_hat(w) - (theta(w) - 1), assembled from
/// theta - 1 so the 1e-19-scale competition survives binary64.
template <class Real>
Real delta_nu_first_order(const SystemParams<Real>& p, const PhysicalConstants<Real>& k) {
  const DerivedParams<Real> dp = derive_params(p, k);
  const ThermalFactor<Real> tf =
      dp.thermal ? *dp.thermal : ThermalFactor<Real>{Real(1), Real(0)};
  return tf.theta * dp.epsilon_hat - tf.theta_minus_one;
}

}  // namespace detail

/// Trap frequency maximizing the first-order logarithmic negativity at fixed
/// T, m, d: coarse 64-point log grid to bracket, then golden-section
/// refinement of delta_nu to relative width 1e-4.
template <class Real>
std::pair<Real, Real> find_omega_opt(const SystemParams<Real>& fixed, const Real& lo,
                                     const Real& hi,
                                     const PhysicalConstants<Real>& k = {}) {
  using std::exp;
  using std::log;
  using std::sqrt;
  if (!(lo > 0 && lo < hi)) throw invalid_argument_error("invalid omega bracket");

  auto objective = [&](const Real& w) {
    return detail::delta_nu_first_order(detail::with_variable(fixed, SweepVariable::omega, w), k);
  };

  constexpr int coarse = 64;
  Real best_val{};
  int best_i = 0;
  for (int i = 0; i < coarse; ++i) {
    const Real w = lo * exp(Real(i) / Real(coarse - 1) * log(hi / lo));
    const Real v = objective(w);
    if (i == 0 || v > best_val) {
      best_val = v;
      best_i = i;
    }
  }
  if (best_i == 0 || best_i == coarse - 1)
    throw no_interior_maximum("delta_nu is monotone on the coarse grid; widen the bracket");

  Real a = lo * exp(Real(best_i - 1) / Real(coarse - 1) * log(hi / lo));
  Real b = lo * exp(Real(best_i + 1) / Real(coarse - 1) * log(hi / lo));
  const Real inv_phi = (sqrt(Real(5)) - 1) / 2;
  Real x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
  Real f1 = objective(x1), f2 = objective(x2);
  while ((b - a) > Real(1e-4) * (a + b) / 2) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = objective(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = objective(x1);
    }
  }
  const Real w_opt = (a + b) / 2;
  const Real dnu = objective(w_opt);
  const auto measures = entanglement_measures(Real(1) - dnu, dnu);
  return {w_opt, measures.log_negativity};
}

/// Onset frequency: root of delta_nu(omega) = 0 by bisection to relative
/// width 1e-6. Requires a sign change over the bracket.
template <class Real>
Real find_omega_min(const SystemParams<Real>& fixed, Real lo, Real hi,
                    const PhysicalConstants<Real>& k = {}) {
  if (!(lo > 0 && lo < hi)) throw invalid_argument_error("invalid omega bracket");
  auto objective = [&](const Real& w) {
    return detail::delta_nu_first_order(detail::with_variable(fixed, SweepVariable::omega, w), k);
  };
  Real flo = objective(lo), fhi = objective(hi);
  if (!(flo < 0) == !(fhi < 0))
    throw no_sign_change("delta_nu does not change sign over the omega bracket");
  while ((hi - lo) > Real(1e-6) * (hi + lo) / 2) {
    const Real mid = (lo + hi) / 2;
    const Real fmid = objective(mid);
    if (!(fmid < 0) == !(flo < 0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return (lo + hi) / 2;
}

/// Threshold temperature as the numeric root of nu_T(T) = 1 at phase pi/2,
/// bisection on the cancellation-safe 1 - nu to relative width 1e-6.
template <class Real>
Real t_max_numeric(const SystemParams<Real>& fixed, Real t_lo, Real t_hi,
                   const PhysicalConstants<Real>& k = {}) {
  if (!(t_lo > 0 && t_lo < t_hi)) throw invalid_argument_error("invalid temperature bracket");
  auto objective = [&](const Real& t) {
    return detail::delta_nu_first_order(
        detail::with_variable(fixed, SweepVariable::temperature, t), k);
  };
  Real flo = objective(t_lo), fhi = objective(t_hi);
  if (!(flo > 0 && fhi < 0))
    throw no_sign_change("need nu(T_lo) < 1 < nu(T_hi) over the temperature bracket");
  while ((t_hi - t_lo) > Real(1e-6) * (t_hi + t_lo) / 2) {
    const Real mid = (t_lo + t_hi) / 2;
    if (objective(mid) > 0)
      t_lo = mid;
    else
      t_hi = mid;
  }
  return (t_lo + t_hi) / 2;
}

/// Bracket for the inner omega optimization of the power-law fit. The
/// stationarity condition puts hbar w / kB T in [20, 95] over [1e-15, 1] K;
/// [5, 400] covers it with margin.
template <class Real>
std::pair<Real, Real> omega_opt_bracket(const Real& temperature,
                                        const PhysicalConstants<Real>& k = {}) {
  const Real scale = k.k_B * temperature / k.hbar;
  return {Real(5) * scale, Real(400) * scale};
}

/// Least-squares power law y ~ prefactor * x^exponent, fitted as a line in
/// log10-log10 coordinates; residual is the rms in log10 units.
template <class Real>
FitResult<Real> power_law_fit(const std::vector<std::pair<Real, Real>>& points) {
  using std::log10;
  using std::pow;
  using std::sqrt;
  if (points.size() < 2) throw invalid_argument_error("power-law fit needs >= 2 points");
  const std::size_t n = points.size();
  std::vector<Real> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(points[i].first > 0 && points[i].second > 0))
      throw invalid_argument_error("power-law fit needs positive coordinates");
    lx[i] = log10(points[i].first);
    ly[i] = log10(points[i].second);
  }
  Real sx{}, sy{}, sxx{}, sxy{};
  for (std::size_t i = 0; i < n; ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  const Real nn = Real(static_cast<double>(n));
  const Real slope = (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
  const Real intercept = (sy - slope * sx) / nn;
  Real ss{};
  for (std::size_t i = 0; i < n; ++i) ss += sqr(ly[i] - slope * lx[i] - intercept);
  FitResult<Real> out;
  out.exponent = slope;
  out.prefactor = pow(Real(10), intercept);
  out.residual = sqrt(ss / nn);
  return out;
}

/// Power law omega_opt ~ prefactor * T^exponent over a temperature grid.
template <class Real>
FitResult<Real> fit_omega_opt_powerlaw(const std::vector<Real>& temperatures,
                                       const SystemParams<Real>& fixed,
                                       const PhysicalConstants<Real>& k = {}) {
  if (temperatures.size() < 8)
    throw invalid_argument_error("power-law fit needs at least 8 temperatures");
  for (const Real& t : temperatures)
    if (!(t >= Real(1e-15) * (1 - Real(1e-9)) && t <= Real(1) * (1 + Real(1e-9))))
      throw invalid_argument_error("fit temperatures must lie in [1e-15, 1] K");

  std::vector<std::pair<Real, Real>> pts;
  pts.reserve(temperatures.size());
  for (const Real& t : temperatures) {
    const auto at_t = detail::with_variable(fixed, SweepVariable::temperature, t);
    const auto bracket = omega_opt_bracket(t, k);
    const auto opt = find_omega_opt(at_t, bracket.first, bracket.second, k);
    pts.emplace_back(t, opt.first);
  }
  return power_law_fit(pts);
}

}  // namespace gravent
