#pragma once

#include <sstream>

#include "gravent/errors.hpp"
#include "gravent/gaussian.hpp"
#include "gravent/real.hpp"

namespace gravent {

/// Thermal (product) state at occupation factor theta = coth(hbar w / 2 kB T):
/// sigma = theta/2 * I. theta = 1 is the two-mode ground state.
template <class Real>
CovarianceMatrix<Real> thermal_state(const Real& theta,
                                     const Real& tol = default_tolerance<Real>()) {
  if (theta < Real(1) - tol)
    throw unphysical_theta("theta must be >= 1 (theta = coth of a positive argument)");
  Mat4<Real> m;
  for (int i = 0; i < 4; ++i) m(i, i) = theta / Real(2);
  return CovarianceMatrix<Real>(m);
}

/// Two-mode squeezed vacuum with parameter r (any sign): positive r squeezes
/// the position difference, Var(q1 - q2) = e^-r.
template <class Real>
CovarianceMatrix<Real> two_mode_squeezed_state(const Real& r) {
  using std::cosh;
  using std::sinh;
  const Real ch = cosh(r) / Real(2);
  const Real sh = sinh(r) / Real(2);
  Mat4<Real> m;
  for (int i = 0; i < 4; ++i) m(i, i) = ch;
  m(0, 2) = sh;
  m(2, 0) = sh;
  m(1, 3) = -sh;
  m(3, 1) = -sh;
  return CovarianceMatrix<Real>(m);
}

/// Assembles the standard-form covariance matrix: diagonal (a, a, b, b),
/// c at the (q1, q2) entries and d at the (k1, k2) entries. Throws unless the
/// parameters describe a physical state.
template <class Real>
CovarianceMatrix<Real> standard_form_state(const StandardFormParams<Real>& p,
                                           const Real& tol = default_tolerance<Real>()) {
  const auto violated = bona_fide_standard_form(p, tol);
  if (!violated.empty()) {
    std::ostringstream os;
    os << "standard-form parameters violate physicality:";
    for (auto v : violated) os << ' ' << to_string(v);
    throw bona_fide_violation(os.str());
  }
  Mat4<Real> m;
  m(0, 0) = p.a;
  m(1, 1) = p.a;
  m(2, 2) = p.b;
  m(3, 3) = p.b;
  m(0, 2) = p.c;
  m(2, 0) = p.c;
  m(1, 3) = p.d;
  m(3, 1) = p.d;
  return CovarianceMatrix<Real>(m);
}

}  // namespace gravent
