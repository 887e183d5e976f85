#pragma once

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/expm1.hpp>
#include <boost/math/special_functions/log1p.hpp>
#include <boost/multiprecision/cpp_dec_float.hpp>

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <string>
#include <type_traits>

namespace gravent {

/// Extended-precision scalars. Expression templates are off so the numbers
/// behave as plain value types inside generic code.
template <unsigned Digits>
using dec_float =
    boost::multiprecision::number<boost::multiprecision::cpp_dec_float<Digits>,
                                  boost::multiprecision::et_off>;

using real30 = dec_float<30>;
using real50 = dec_float<50>;
using real100 = dec_float<100>;

template <class Real>
inline constexpr bool is_extended_v = !std::is_same_v<Real, double>;

template <class Real>
constexpr int decimal_digits() {
  return std::numeric_limits<Real>::digits10;
}

template <class Real>
Real pi() {
  return boost::math::constants::pi<Real>();
}

template <class Real>
Real two_pi() {
  return boost::math::constants::two_pi<Real>();
}

template <class Real>
Real ln_two() {
  return boost::math::constants::ln_two<Real>();
}

/// Default comparison/physicality tolerance: 1e-12 in binary64 mode,
/// 10^-(digits-10) in extended mode.
template <class Real>
Real default_tolerance() {
  if constexpr (is_extended_v<Real>) {
    using std::pow;
    return pow(Real(10), -(decimal_digits<Real>() - 10));
  } else {
    return Real(1e-12);
  }
}

template <class Real>
Real sqr(const Real& x) {
  return x * x;
}

template <class Real>
int sign_of(const Real& x) {
  return x > 0 ? 1 : (x < 0 ? -1 : 0);
}

/// log(1+x) without cancellation for small |x|; works for any scalar.
template <class Real>
Real log1p_safe(const Real& x) {
  return boost::math::log1p(x);
}

/// exp(x)-1 without cancellation for small |x|.
template <class Real>
Real expm1_safe(const Real& x) {
  return boost::math::expm1(x);
}

/// Serialize with full round-trip precision: 17 significant digits for
/// binary64, all digits for extended scalars.
inline std::string to_decimal_string(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

template <class Real>
std::string to_decimal_string(const Real& x) {
  std::ostringstream os;
  os.precision(decimal_digits<Real>());
  os << std::scientific << x;
  return os.str();
}

/// Invokes f with the scalar type selected by a decimal-digit request,
/// rounded up to the nearest supported precision.
/// Returns the digit count actually used, or -1 if unsupported.
template <class F>
int dispatch_precision(int digits, F&& f) {
  // binary64 resolves up to 17 significant decimal digits
  if (digits <= 16) {
    f(std::type_identity<double>{});
    return std::numeric_limits<double>::digits10;
  }
  if (digits <= 30) {
    f(std::type_identity<real30>{});
    return 30;
  }
  if (digits <= 50) {
    f(std::type_identity<real50>{});
    return 50;
  }
  if (digits <= 100) {
    f(std::type_identity<real100>{});
    return 100;
  }
  return -1;
}

}  // namespace gravent
