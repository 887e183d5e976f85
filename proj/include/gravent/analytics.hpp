#pragma once

#include <boost/math/special_functions/fpclassify.hpp>

#include "gravent/errors.hpp"
#include "gravent/gaussian.hpp"
#include "gravent/params.hpp"
#include "gravent/real.hpp"

namespace gravent {

/// First-order symplectic eigenvalue of an evolved thermal state:
/// nu = theta (1 - eps_hat |sin phase|), with 1 - nu assembled from
/// theta - 1 directly so it survives theta - 1 ~ 1e-33 against
/// eps_hat ~ 1e-19.
template <class Real>
EntanglementResult<Real> nu_thermal_first_order(const ThermalFactor<Real>& tf,
                                                const Real& eps_hat, const Real& phase) {
  using std::fabs;
  using std::sin;
  const Real abs_sin = fabs(sin(phase));
  const Real nu = tf.theta * (Real(1) - eps_hat * abs_sin);
  const Real one_minus_nu = tf.theta * eps_hat * abs_sin - tf.theta_minus_one;
  return entanglement_measures(nu, one_minus_nu);
}

/// Threshold temperature above which a thermal state stays separable:
/// T_max = hbar w / (kB ln(d^3 w^2 / G m)), natural logarithm.
template <class Real>
Real t_max_thermal(const SystemParams<Real>& p, const PhysicalConstants<Real>& k = {}) {
  using std::log;
  p.validate();
  const Real d3 = p.separation * p.separation * p.separation;
  const Real ratio = d3 * p.omega * p.omega / (k.G * p.mass);
  if (!(ratio > 1))
    throw log_domain_error("d^3 w^2 / (G m) must exceed 1 for a finite threshold");
  return k.hbar * p.omega / (k.k_B * log(ratio));
}

/// First-order symplectic eigenvalue of an evolved two-mode squeezed state.
/// r != 0: nu = e^{-|r|} (1 - sign(r) eps_hat sin^2 phase); the ground state
/// r = 0 follows the thermal theta = 1 law instead (|sin|, not sin^2).
template <class Real>
EntanglementResult<Real> nu_squeezed_first_order(const Real& r, const Real& eps_hat,
                                                 const Real& phase) {
  using std::exp;
  using std::fabs;
  using std::sin;
  if (r == 0) {
    const Real one_minus_nu = eps_hat * fabs(sin(phase));
    return entanglement_measures(Real(1) - one_minus_nu, one_minus_nu);
  }
  const Real decay = exp(-fabs(r));
  const Real sin_sq = sqr(sin(phase));
  const Real osc = Real(sign_of(r)) * eps_hat * sin_sq;
  const Real nu = decay * (Real(1) - osc);
  // 1 - e^{-|r|} via expm1, then the O(eps) oscillation on top.
  const Real one_minus_nu = -expm1_safe(-fabs(r)) + decay * osc;
  return entanglement_measures(nu, one_minus_nu);
}

/// Delta of an evolved two-mode squeezed state expanded to second order in
/// eps, evaluated exactly as the closed-form expansion dictates (phase =
/// omega' t, entering both the trigonometric and the secular quadratic terms).
template <class Real>
Real delta_squeezed_second_order(const Real& r, const Real& eps, const Real& phase) {
  using std::cos;
  using std::cosh;
  using std::sin;
  using std::sinh;
  const Real ch2 = cosh(2 * r);
  const Real ph2 = phase * phase;
  const Real second = (ch2 * (Real(-8) * ph2 - Real(8) * cos(2 * phase) + Real(7)) +
                       Real(2) * sqr(sinh(r)) * cos(4 * phase) + Real(8) * ph2 + Real(1)) /
                      Real(16);
  return ch2 / Real(2) + eps * sinh(2 * r) * sqr(sin(phase)) + eps * eps * second;
}

/// Threshold temperature for entanglement from a squeezed state:
/// T_max,s = hbar w / (kB ln((e^r + 1 - eps)/(e^r - 1 + eps))).
template <class Real>
Real t_max_squeezed(const Real& r, const Real& eps, const Real& omega,
                    const PhysicalConstants<Real>& k = {}) {
  using std::exp;
  using std::log;
  const Real er = exp(r);
  const Real den = er - Real(1) + eps;
  if (!(den > 0))
    throw invalid_argument_error("e^r - 1 + eps must be positive");
  const Real ratio = (er + Real(1) - eps) / den;
  if (!(ratio > 1)) throw log_domain_error("temperature threshold undefined for eps >= 1");
  return k.hbar * omega / (k.k_B * log(ratio));
}

/// Coefficients of Delta(t) ~ Delta0 + alpha eps + beta eps^2 for a
/// standard-form initial state.
template <class Real>
struct SfExpansion {
  Real Delta0{};
  Real alpha{};
  Real beta{};
};

/// The expansion coefficients. Trigonometric factors are evaluated at `phase`;
/// the secular (unbounded) terms use `omega_t_product`, so callers may pass a
/// reduced phase together with the full elapsed product when they differ.
template <class Real>
SfExpansion<Real> sf_expansion(const StandardFormParams<Real>& p, const Real& phase,
                               const Real& omega_t_product) {
  using std::cos;
  using std::sin;
  const Real a = p.a, b = p.b, c = p.c, d = p.d;
  SfExpansion<Real> out;
  out.Delta0 = a * a + b * b - Real(2) * c * d;
  out.alpha = Real(2) * (a + b) * (c - d) * sqr(sin(phase));
  const Real wt = omega_t_product;
  out.beta = (Real(4) * sqr(a + b) - c * c - d * d - Real(14) * c * d -
              Real(8) * (sqr(a - b) + sqr(c - d)) * wt * wt -
              Real(4) * (sqr(a + b) - Real(4) * c * d) * cos(2 * phase) +
              (c - d) * ((c - d) * cos(4 * phase) -
                         Real(8) * (c + d) * wt * sin(2 * phase))) /
             Real(8);
  return out;
}

/// First-order relative change (nu(t) - nu(0))/nu(0) of a standard-form
/// state under the gravitational coupling:
///   - generic branch:      -alpha eps / (2 sqrt(Delta0^2 - 4 det sigma)),
///   - degenerate spectrum: -eps sqrt(beta / (2 Delta0)) (requires alpha = 0;
///     physical states cannot reach the degenerate branch with alpha != 0).
template <class Real>
Real relative_change_first_order(const StandardFormParams<Real>& p, const Real& eps,
                                 const Real& phase,
                                 const Real& tol = default_tolerance<Real>()) {
  using std::fabs;
  using std::sqrt;
  const auto ex = sf_expansion(p, phase, phase);
  const Real det_sigma = (p.a * p.b - p.c * p.c) * (p.a * p.b - p.d * p.d);
  const Real disc = ex.Delta0 * ex.Delta0 - Real(4) * det_sigma;

  if (disc > tol * sqr(ex.Delta0))
    return -ex.alpha * eps / (Real(2) * sqrt(disc));

  // Degenerate partial-transpose spectrum.
  const Real alpha_scale = Real(2) * (p.a + p.b) * (Real(1) + fabs(p.c) + fabs(p.d));
  if (fabs(ex.alpha) > tol * alpha_scale)
    throw degenerate_discriminant(
        "Delta0^2 = 4 det sigma with alpha != 0: not reachable by a physical state");
  const Real beta = ex.beta > 0 ? ex.beta : Real(0);
  return -eps * sqrt(beta / (Real(2) * ex.Delta0));
}

/// Universal lower bound on the relative change of nu over all Gaussian
/// initial states: -eps.
template <class Real>
Real entanglement_bound(const Real& eps) {
  if (!(eps >= 0)) throw invalid_argument_error("eps must be non-negative");
  return -eps;
}

/// Casimir-Polder energy of two dielectric spheres of radius R at separation
/// D >> R: 23 hbar c R^6 / (4 pi D^7) * ((eps_r - 1)/(eps_r + 2))^2.
template <class Real>
Real casimir_polder_potential(const Real& radius, const Real& distance, const Real& eps_r,
                              const PhysicalConstants<Real>& k = {}) {
  using std::pow;
  if (!(distance > Real(5) * radius))
    throw geometry_invalid("sphere separation must exceed 5 radii");
  const Real eta = boost::math::isinf(eps_r) ? Real(1) : (eps_r - 1) / (eps_r + 2);
  return Real(23) * k.hbar * k.c * pow(radius, 6) * eta * eta /
         (Real(4) * pi<Real>() * pow(distance, 7));
}

/// Separation at which the Casimir-Polder term equals `ratio` times the
/// gravitational energy Gm^2/D, for spheres of density rho:
/// D = (23 hbar c R^6 eta^2 / (4 pi ratio G m^2))^{1/6}, R = (3m/4 pi rho)^{1/3}.
template <class Real>
Real casimir_crossover_distance(const Real& mass, const Real& rho, const Real& eps_r,
                                const Real& ratio, const PhysicalConstants<Real>& k = {}) {
  using std::pow;
  if (!(mass > 0 && rho > 0)) throw invalid_argument_error("mass and density must be positive");
  if (!(ratio > 0 && ratio <= 1)) throw invalid_argument_error("ratio must be in (0, 1]");
  const Real eta = boost::math::isinf(eps_r) ? Real(1) : (eps_r - 1) / (eps_r + 2);
  const Real r_cubed = Real(3) * mass / (Real(4) * pi<Real>() * rho);
  const Real d6 = Real(23) * k.hbar * k.c * r_cubed * r_cubed * eta * eta /
                  (Real(4) * pi<Real>() * ratio * k.G * mass * mass);
  return pow(d6, Real(1) / Real(6));
}

}  // namespace gravent
