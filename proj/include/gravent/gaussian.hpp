#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gravent/errors.hpp"
#include "gravent/linalg.hpp"
#include "gravent/real.hpp"

namespace gravent {

/// Symplectic form for two modes in the (q1, k1, q2, k2) ordering.
template <class Real>
Mat4<Real> symplectic_form() {
  Mat4<Real> w;
  w(0, 1) = Real(1);
  w(1, 0) = Real(-1);
  w(2, 3) = Real(1);
  w(3, 2) = Real(-1);
  return w;
}

/// Covariance matrix of a two-mode Gaussian state, vacuum variance 1/2
/// (sigma_vac = I/2). Symmetric as stored and positive definite, both checked
/// on construction. Precision is the scalar template parameter: double is the
/// standard mode, dec_float<Digits> the extended mode.
template <class Real>
class CovarianceMatrix {
 public:
  explicit CovarianceMatrix(const Mat4<Real>& entries,
                            const Real& tol = default_tolerance<Real>()) {
    using std::fabs;
    Real asym(0);
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) {
        Real d = fabs(entries(i, j) - entries(j, i));
        if (d > asym) asym = d;
      }
    if (asym > tol * (Real(1) + entries.max_abs()))
      throw asymmetric_matrix("covariance matrix is not symmetric");
    m_ = entries;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) {
        const Real v = (entries(i, j) + entries(j, i)) / Real(2);
        m_(i, j) = v;
        m_(j, i) = v;
      }
    cholesky(m_);  // positive definiteness gate
  }

  const Mat4<Real>& entries() const { return m_; }
  const Real& operator()(int i, int j) const { return m_(i, j); }

  /// Partial transpose on mode 2 (k2 -> -k2).
  Mat4<Real> partial_transpose() const {
    Mat4<Real> pt = m_;
    for (int i = 0; i < 3; ++i) {
      pt(i, 3) = -pt(i, 3);
      pt(3, i) = -pt(3, i);
    }
    return pt;
  }

 private:
  Mat4<Real> m_;
};

/// The (a, b, c, d) parameters of the two-mode standard form: diagonal blocks
/// a*I and b*I, off-diagonal block diag(c, d).
template <class Real>
struct StandardFormParams {
  Real a{}, b{}, c{}, d{};
};

/// The four scalar physicality conditions equivalent to
/// sigma + (i/2) Omega >= 0 for a standard-form state.
enum class StandardFormCondition {
  variance_floor,          // a, b >= 1/2
  minor_positivity,        // ab >= c^2 + b/(4a)
  correlation_budget,      // 2ab - 1/2 >= c^2 + d^2
  symplectic_uncertainty,  // (2cd - 1/2)^2 >= a^2 + b^2 - 4ab(ab - c^2 - d^2)
};

inline const char* to_string(StandardFormCondition c) {
  switch (c) {
    case StandardFormCondition::variance_floor: return "variance_floor";
    case StandardFormCondition::minor_positivity: return "minor_positivity";
    case StandardFormCondition::correlation_budget: return "correlation_budget";
    case StandardFormCondition::symplectic_uncertainty: return "symplectic_uncertainty";
  }
  return "?";
}

/// Entanglement data derived from the partial-transpose symplectic eigenvalue.
/// nu and 1 - nu are carried independently: for physically relevant couplings
/// 1 - nu ~ 1e-19, which a stored nu cannot resolve in binary64.
template <class Real>
struct EntanglementResult {
  Real nu{};
  Real one_minus_nu{};
  Real negativity{};
  Real log_negativity{};          // bits
  std::optional<Real> Delta;      // det a + det b - 2 det g, when computed
  std::optional<Real> det_sigma;  // det sigma, when computed
};

/// Negativity and logarithmic negativity from nu with its cancellation-safe
/// deviation. E_N uses log1p on (1 - nu) so that nu = 1 - 1e-19 keeps full
/// relative accuracy.
template <class Real>
EntanglementResult<Real> entanglement_measures(const Real& nu,
                                               const Real& one_minus_nu) {
  if (!(nu > 0)) throw non_positive_nu("nu must be positive");
  EntanglementResult<Real> r;
  r.nu = nu;
  r.one_minus_nu = one_minus_nu;
  r.negativity = one_minus_nu > 0 ? one_minus_nu / (Real(2) * nu) : Real(0);
  const Real en = -log1p_safe(-one_minus_nu) / ln_two<Real>();
  r.log_negativity = en > 0 ? en : Real(0);
  return r;
}

template <class Real>
EntanglementResult<Real> entanglement_measures(const Real& nu) {
  return entanglement_measures(nu, Real(1) - nu);
}

/// Smaller symplectic eigenvalue of the partially transposed state, from the
/// block invariants of sigma. The state is entangled iff nu < 1.
///
/// nu^2 = 2(Delta - s), s = sqrt(Delta^2 - 4 det sigma), with
/// Delta = det alpha + det beta - 2 det gamma (the minus sign is the partial
/// transpose). The deviation 1 - nu is recovered without subtracting nearly
/// equal quantities through
///     (1 - nu^2)(1 - nu_+^2) = 1 - 4 Delta + 16 det sigma,
/// where nu_+^2 = 2(Delta + s) is the larger eigenvalue; the direct
/// difference is used only when nu_+ itself sits at the vacuum point and the
/// quotient degenerates.
template <class Real>
EntanglementResult<Real> symplectic_eigenvalue(
    const CovarianceMatrix<Real>& sigma,
    const Real& tol = default_tolerance<Real>()) {
  using std::fabs;
  using std::sqrt;
  const Mat4<Real>& m = sigma.entries();
  const Real det_alpha = block_det2(m, 0, 0);
  const Real det_beta = block_det2(m, 2, 2);
  const Real det_gamma = block_det2(m, 0, 2);
  const Real delta = det_alpha + det_beta - Real(2) * det_gamma;
  const Real det_sigma = det_spd(m);

  Real disc = delta * delta - Real(4) * det_sigma;
  if (disc < -tol * (Real(1) + delta * delta))
    throw negative_discriminant("Delta^2 - 4 det sigma < 0: unphysical covariance matrix");
  if (disc < 0) disc = Real(0);
  const Real s = sqrt(disc);

  // nu^2 = 2(Delta - s) rationalized to 8 det sigma / (Delta + s): the direct
  // difference loses half the digits whenever nu << nu_+.
  if (!(delta + s > 0))
    throw non_positive_nu("partial-transpose symplectic eigenvalue is not positive");
  const Real nu_sq = Real(8) * det_sigma / (delta + s);
  if (!(nu_sq > 0))
    throw non_positive_nu("partial-transpose symplectic eigenvalue is not positive");
  const Real nu = sqrt(nu_sq);
  const Real nu_plus_sq = Real(2) * (delta + s);

  const Real quotient = Real(1) - nu_plus_sq;
  Real one_minus_nu_sq;
  if (fabs(quotient) > sqrt(std::numeric_limits<Real>::epsilon()))
    one_minus_nu_sq = (Real(1) - Real(4) * delta + Real(16) * det_sigma) / quotient;
  else
    one_minus_nu_sq = Real(1) - nu_sq;

  auto r = entanglement_measures(nu, one_minus_nu_sq / (Real(1) + nu));
  r.Delta = delta;
  r.det_sigma = det_sigma;
  return r;
}

/// Minimum eigenvalue of the Hermitian matrix sigma + (i/2) Omega, computed
/// from the equivalent real symmetric 8x8 embedding
/// [[sigma, -Omega/2], [Omega/2, sigma]] (same spectrum, doubled).
template <class Real>
Real bona_fide_min_eigenvalue(const Mat4<Real>& sigma) {
  Mat8<Real> embed;
  const Mat4<Real> w = symplectic_form<Real>();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      embed(i, j) = sigma(i, j);
      embed(i + 4, j + 4) = sigma(i, j);
      embed(i, j + 4) = -w(i, j) / Real(2);
      embed(i + 4, j) = w(i, j) / Real(2);
    }
  return symmetric_eigenvalues(embed)[0];
}

/// Physicality of an arbitrary two-mode covariance matrix:
/// sigma + (i/2) Omega >= 0.
template <class Real>
bool bona_fide_general(const Mat4<Real>& sigma,
                       const Real& tol = default_tolerance<Real>()) {
  return bona_fide_min_eigenvalue(sigma) >= -tol;
}

template <class Real>
bool bona_fide_general(const CovarianceMatrix<Real>& sigma,
                       const Real& tol = default_tolerance<Real>()) {
  return bona_fide_general(sigma.entries(), tol);
}

/// Evaluates the four standard-form physicality inequalities exactly as
/// written and returns every violated one (empty means pass). Equality counts
/// as a pass: boundary states are physical pure states.
template <class Real>
std::vector<StandardFormCondition> bona_fide_standard_form(
    const StandardFormParams<Real>& p, const Real& tol = default_tolerance<Real>()) {
  const Real half(0.5);
  std::vector<StandardFormCondition> violated;
  if (p.a < half - tol || p.b < half - tol)
    violated.push_back(StandardFormCondition::variance_floor);
  if (p.a * p.b < p.c * p.c + p.b / (Real(4) * p.a) - tol)
    violated.push_back(StandardFormCondition::minor_positivity);
  if (Real(2) * p.a * p.b - half < p.c * p.c + p.d * p.d - tol)
    violated.push_back(StandardFormCondition::correlation_budget);
  const Real lhs = sqr(Real(2) * p.c * p.d - half);
  const Real rhs = p.a * p.a + p.b * p.b -
                   Real(4) * p.a * p.b * (p.a * p.b - p.c * p.c - p.d * p.d);
  if (lhs < rhs - tol)
    violated.push_back(StandardFormCondition::symplectic_uncertainty);
  return violated;
}

/// Recovers the standard-form parameters of an arbitrary bona fide sigma from
/// its local-symplectic invariants: a = sqrt(det alpha), b = sqrt(det beta),
/// and (c, d) from det gamma = c d together with
/// det sigma = (ab - c^2)(ab - d^2). c^2 and d^2 are the roots of
/// y^2 - s y + p^2 with s = (a^2 b^2 + p^2 - det sigma)/(ab); the sign
/// convention is c >= |d| with sign(d) = sign(det gamma).
template <class Real>
StandardFormParams<Real> standard_form_invariants(
    const CovarianceMatrix<Real>& sigma,
    const Real& tol = default_tolerance<Real>()) {
  using std::sqrt;
  const Mat4<Real>& m = sigma.entries();
  const Real a = sqrt(block_det2(m, 0, 0));
  const Real b = sqrt(block_det2(m, 2, 2));
  const Real p = block_det2(m, 0, 2);
  const Real det_sigma = det_spd(m);

  const Real ab = a * b;
  const Real s = (ab * ab + p * p - det_sigma) / ab;
  Real disc = s * s - Real(4) * p * p;
  if (disc < -tol * (Real(1) + s * s))
    throw invariant_inconsistency(
        "covariance matrix is not reducible to standard form (s^2 < 4 p^2)");
  if (disc < 0) disc = Real(0);
  const Real root = sqrt(disc);
  Real c_sq = (s + root) / Real(2);
  Real d_sq = (s - root) / Real(2);
  if (c_sq < 0) c_sq = Real(0);
  if (d_sq < 0) d_sq = Real(0);

  StandardFormParams<Real> out;
  out.a = a;
  out.b = b;
  out.c = sqrt(c_sq);
  out.d = (p < 0 ? Real(-1) : Real(1)) * sqrt(d_sq);
  return out;
}

}  // namespace gravent
