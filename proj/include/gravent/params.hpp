#pragma once

#include <optional>

#include "gravent/errors.hpp"
#include "gravent/real.hpp"

namespace gravent {

/// Fundamental constants (SI). Defaults are the CODATA 2018 exact/recommended
/// values; overridable for unit-scaling tests.
template <class Real>
struct PhysicalConstants {
  Real G = Real(6.67430e-11);         // m^3 kg^-1 s^-2
  Real hbar = Real(1.054571817e-34);  // J s
  Real k_B = Real(1.380649e-23);      // J K^-1
  Real c = Real(299792458.0);         // m s^-1

  void validate() const {
    // G = 0 is allowed: it is the exact decoupling limit (omega' = omega,
    // delta = 0, eps = 0).
    if (!(G >= 0 && hbar > 0 && k_B > 0 && c > 0))
      throw invalid_argument_error("physical constants must be positive (G may be zero)");
  }
};

/// Experimental inputs: two identical particles of mass m in harmonic traps of
/// angular frequency omega (rad/s), trap centers separated by d.
template <class Real>
struct SystemParams {
  Real mass{};        // kg
  Real omega{};       // rad/s (angular frequency throughout)
  Real separation{};  // m
  std::optional<Real> temperature;  // K, >= 0
  std::optional<Real> squeezing;    // two-mode squeezing parameter r

  void validate() const {
    if (!(mass > 0)) throw invalid_argument_error("mass must be positive");
    if (!(omega > 0)) throw invalid_argument_error("omega must be positive");
    if (!(separation > 0)) throw invalid_argument_error("separation must be positive");
    if (temperature && !(*temperature >= 0))
      throw invalid_argument_error("temperature must be non-negative");
  }
};

/// theta = coth(hbar*omega / 2 kB T) stored together with theta - 1.
/// theta - 1 underflows the difference of two binary64 values long before it
/// stops mattering (it competes with couplings ~1e-19), so it is carried
/// separately through every formula that consumes it.
template <class Real>
struct ThermalFactor {
  Real theta{};
  Real theta_minus_one{};

  static ThermalFactor from_theta(const Real& theta) {
    return {theta, theta - Real(1)};
  }
};

template <class Real>
struct DerivedParams {
  Real omega_prime{};   // rad/s, omega'^2 = omega^2 - 2Gm/d^3
  Real epsilon{};       // 2Gm / (d^3 omega'^2)
  Real epsilon_hat{};   // 2Gm / (d^3 omega^2), the first-order-formula variant
  std::optional<Real> displacement;  // delta, m; absent when omega^2 d^3 <= 4Gm
  std::optional<ThermalFactor<Real>> thermal;  // present when T was given
};

/// coth(hbar*omega / 2 kB T) via the identity coth(x) - 1 = 2/(e^{2x} - 1),
/// which is exact and cancellation-free for all T; T = 0 is the theta = 1
/// limit.
template <class Real>
ThermalFactor<Real> theta_of_temperature(const Real& temperature, const Real& omega,
                                         const PhysicalConstants<Real>& k = {}) {
  if (!(temperature >= 0)) throw invalid_argument_error("temperature must be >= 0");
  if (!(omega > 0)) throw invalid_argument_error("omega must be positive");
  if (temperature == 0) return {Real(1), Real(0)};
  const Real x = k.hbar * omega / (k.k_B * temperature);  // = 2 * (hbar w / 2 kB T)
  const Real tm1 = Real(2) / expm1_safe(x);
  return {Real(1) + tm1, tm1};
}

/// Frequency shift, equilibrium displacement and coupling strength of the
/// linearized gravitational interaction.
template <class Real>
DerivedParams<Real> derive_params(const SystemParams<Real>& p,
                                  const PhysicalConstants<Real>& k = {}) {
  using std::sqrt;
  p.validate();
  k.validate();
  const Real d3 = p.separation * p.separation * p.separation;
  const Real coupling = Real(2) * k.G * p.mass / d3;  // 2Gm/d^3, s^-2
  const Real wp2 = p.omega * p.omega - coupling;
  if (!(wp2 > 0))
    throw trap_unstable("omega^2 <= 2Gm/d^3: trap does not confine the particles");

  DerivedParams<Real> out;
  out.omega_prime = sqrt(wp2);
  out.epsilon = coupling / wp2;
  out.epsilon_hat = coupling / (p.omega * p.omega);

  // delta is diagnostic only; its denominator can vanish while the trap is
  // still stable, so the singular case is reported by absence, not an error.
  const Real delta_den = p.omega * p.omega * d3 - Real(4) * k.G * p.mass;
  if (delta_den > 0) out.displacement = k.G * p.mass * p.separation / delta_den;

  if (p.temperature) out.thermal = theta_of_temperature(*p.temperature, p.omega, k);
  return out;
}

}  // namespace gravent
