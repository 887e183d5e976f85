#pragma once

#include <optional>

#include "gravent/errors.hpp"
#include "gravent/gaussian.hpp"
#include "gravent/linalg.hpp"
#include "gravent/params.hpp"
#include "gravent/real.hpp"

namespace gravent {

/// Quadratic-form matrix of the coupled-trap Hamiltonian H = X^T H X in the
/// (q1, k1, q2, k2) basis: diagonal hbar*omega'/2, gravitational coupling
/// hbar*omega'*eps/2 on the (q1, q2) entries. Units: J.
template <class Real>
Mat4<Real> hamiltonian_matrix(const DerivedParams<Real>& dp,
                              const PhysicalConstants<Real>& k = {}) {
  const Real scale = k.hbar * dp.omega_prime / Real(2);
  Mat4<Real> h;
  for (int i = 0; i < 4; ++i) h(i, i) = scale;
  h(0, 2) = scale * dp.epsilon;
  h(2, 0) = scale * dp.epsilon;
  return h;
}

/// Generator of the symplectic evolution, omega'*t * K with
/// K = [[0,1,0,0],[-1,0,-eps,0],[0,0,0,1],[-eps,0,-1,0]]. Equals (2t/hbar)
/// Omega H; the quadratic form above carries no 1/2, hence the factor 2.
template <class Real>
Mat4<Real> propagator_generator(const Real& eps, const Real& omega_prime_t) {
  Mat4<Real> g;
  g(0, 1) = omega_prime_t;
  g(1, 0) = -omega_prime_t;
  g(1, 2) = -eps * omega_prime_t;
  g(2, 3) = omega_prime_t;
  g(3, 2) = -omega_prime_t;
  g(3, 0) = -eps * omega_prime_t;
  return g;
}

/// Symplectic propagator S(t) with its measured symplecticity defect
/// max |S Omega S^T - Omega|.
template <class Real>
struct Propagator {
  Mat4<Real> matrix;
  Real omega_prime_t{};       // accumulated dimensionless phase omega' * t
  std::optional<Real> time;   // seconds, when built from physical parameters
  Real symplectic_defect{};
};

namespace detail {

template <class Real>
Real reduce_phase(const Real& phase) {
  using std::fmod;
  return fmod(phase, two_pi<Real>());
}

/// Single normal-mode block for scaled frequency w = 1 +- eps:
/// [[cos p, sin p / sqrt(w)], [-sqrt(w) sin p, cos p]] at p = omega' t sqrt(w).
template <class Real>
void fill_mode_block(Mat4<Real>& d, int at, const Real& w, const Real& omega_prime_t) {
  using std::cos;
  using std::sin;
  using std::sqrt;
  const Real root_w = sqrt(w);
  const Real p = reduce_phase(omega_prime_t * root_w);
  const Real cp = cos(p), sp = sin(p);
  d(at, at) = cp;
  d(at, at + 1) = sp / root_w;
  d(at + 1, at) = -root_w * sp;
  d(at + 1, at + 1) = cp;
}

template <class Real>
Propagator<Real> finish_propagator(const Mat4<Real>& s, const Real& omega_prime_t,
                                   const Real& tol) {
  const Mat4<Real> w = symplectic_form<Real>();
  Propagator<Real> out;
  out.matrix = s;
  out.omega_prime_t = omega_prime_t;
  out.symplectic_defect = max_abs_diff(s * w * s.transposed(), w);
  if (out.symplectic_defect > tol)
    throw symplectic_defect_error("propagator failed the symplecticity certificate");
  return out;
}

}  // namespace detail

/// Exact propagator via the normal modes (q1 +- q2)/sqrt(2), which evolve as
/// independent oscillators at frequencies omega' sqrt(1 +- eps). Valid for all
/// t; phases are reduced mod 2pi in the working precision before the
/// trigonometric evaluation.
template <class Real>
Propagator<Real> propagator_closed_form(const Real& eps, const Real& omega_prime_t,
                                        const Real& tol = default_tolerance<Real>()) {
  using std::sqrt;
  if (!(eps < 1))
    throw epsilon_out_of_range("eps must be < 1 for stable two-mode dynamics");
  const Real inv_rt2 = Real(1) / sqrt(Real(2));
  Mat4<Real> t;  // (q1,k1,q2,k2) -> (q+,k+,q-,k-); orthogonal and symplectic
  t(0, 0) = inv_rt2; t(0, 2) = inv_rt2;
  t(1, 1) = inv_rt2; t(1, 3) = inv_rt2;
  t(2, 0) = inv_rt2; t(2, 2) = -inv_rt2;
  t(3, 1) = inv_rt2; t(3, 3) = -inv_rt2;

  Mat4<Real> d;
  detail::fill_mode_block(d, 0, Real(1) + eps, omega_prime_t);
  detail::fill_mode_block(d, 2, Real(1) - eps, omega_prime_t);

  return detail::finish_propagator(t.transposed() * d * t, omega_prime_t, tol);
}

template <class Real>
Propagator<Real> propagator_closed_form(const DerivedParams<Real>& dp, const Real& t,
                                        const Real& tol = default_tolerance<Real>()) {
  auto p = propagator_closed_form(dp.epsilon, dp.omega_prime * t, tol);
  p.time = t;
  return p;
}

/// Reference propagator: scaling-and-squaring matrix exponential of the
/// generator, truncated at working precision. Exists as an independent
/// cross-check of the closed form; the closed form is the production path.
template <class Real>
Propagator<Real> propagator_series(const Real& eps, const Real& omega_prime_t,
                                   const Real& tol = default_tolerance<Real>()) {
  using std::fabs;
  if (!(eps < 1))
    throw epsilon_out_of_range("eps must be < 1 for stable two-mode dynamics");
  Mat4<Real> a = propagator_generator(eps, omega_prime_t);

  Real norm(0);  // max row sum
  for (int i = 0; i < 4; ++i) {
    Real row(0);
    for (int j = 0; j < 4; ++j) row += fabs(a(i, j));
    if (row > norm) norm = row;
  }
  int squarings = 0;
  const Real half(0.5);
  while (norm > half) {
    a = half * a;
    norm = half * norm;
    ++squarings;
  }

  Mat4<Real> sum = Mat4<Real>::identity();
  Mat4<Real> term = Mat4<Real>::identity();
  const Real eps_mach = std::numeric_limits<Real>::epsilon();
  for (int k = 1; k <= 64; ++k) {
    term = (Real(1) / Real(k)) * (term * a);
    sum = sum + term;
    if (term.max_abs() <= eps_mach * sum.max_abs() / Real(16)) break;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;

  return detail::finish_propagator(sum, omega_prime_t, tol);
}

template <class Real>
Propagator<Real> propagator_series(const DerivedParams<Real>& dp, const Real& t,
                                   const Real& tol = default_tolerance<Real>()) {
  auto p = propagator_series(dp.epsilon, dp.omega_prime * t, tol);
  p.time = t;
  return p;
}

/// sigma(t) = S sigma(0) S^T, symmetrized by averaging with its transpose.
template <class Real>
CovarianceMatrix<Real> evolve(const CovarianceMatrix<Real>& sigma0,
                              const Propagator<Real>& prop) {
  const Mat4<Real> s = prop.matrix;
  Mat4<Real> out = s * sigma0.entries() * s.transposed();
  out = Real(0.5) * (out + out.transposed());
  return CovarianceMatrix<Real>(out);
}

template <class Real>
CovarianceMatrix<Real> evolve(const CovarianceMatrix<Real>& sigma0, const Real& eps,
                              const Real& omega_prime_t) {
  return evolve(sigma0, propagator_closed_form(eps, omega_prime_t));
}

template <class Real>
CovarianceMatrix<Real> evolve(const CovarianceMatrix<Real>& sigma0,
                              const DerivedParams<Real>& dp, const Real& t) {
  return evolve(sigma0, propagator_closed_form(dp, t));
}

}  // namespace gravent
