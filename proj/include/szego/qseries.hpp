#pragma once

// Basic (q-) special functions: q-Pochhammer symbols of finite, negative and
// infinite order, the bilateral 1psi1 series, Ramanujan's and Cauchy's closed
// forms, the q-gamma function and the modified Jacobi theta function.
//
// Every routine is a pure function templated on the real scalar type. The
// complex parameters are taken through std::type_identity_t so that plain
// real literals convert without having to spell out std::complex<double>.

#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>
#include <limits>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>

#include "szego/error.hpp"
#include "szego/types.hpp"

namespace szego {

/// Factors with modulus below this are treated as exact zeros of a
/// denominator (PoleHit / DivisionByZeroFactor) instead of producing a huge
/// quotient.
inline constexpr double pole_tolerance = 1e-14;

/// Infinite products stop once the running term |alpha q^k| drops below this.
inline constexpr double default_product_cutoff = 1e-17;

/// Order of a q-Pochhammer symbol: any signed integer, or infinity.
class PochhammerOrder {
 public:
  constexpr PochhammerOrder(int n) : n_(n), infinite_(false) {}  // NOLINT(google-explicit-constructor)

  static constexpr PochhammerOrder infinity() { return PochhammerOrder(); }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr int value() const { return n_; }

 private:
  constexpr PochhammerOrder() : n_(0), infinite_(true) {}

  int n_;
  bool infinite_;
};

inline constexpr PochhammerOrder pochhammer_infinity = PochhammerOrder::infinity();

/// Base q and parameters alpha, beta of a 1psi1 series.
template <std::floating_point T = double>
struct QSeriesParams {
  cplx<T> q;
  cplx<T> alpha;
  std::optional<cplx<T>> beta;
};

namespace detail {

template <std::floating_point T>
struct ProductTrace {
  cplx<T> value;
  // Smallest |1 - alpha q^k| seen; used for pole detection in denominators.
  T min_factor;
};

// (alpha; q)_inf truncated at the first k with |alpha q^k| < cutoff, after at
// least ceil(ln(cutoff) / ln|q|) factors.
template <std::floating_point T>
ProductTrace<T> infinite_product(cplx<T> alpha, cplx<T> q, T cutoff) {
  const T abs_q = std::abs(q);
  if (!(abs_q < T(1))) {
    throw DivergentProduct("infinite q-Pochhammer product requires |q| < 1");
  }
  if (abs_q == T(0)) {
    const cplx<T> f = T(1) - alpha;
    return {f, std::abs(f)};
  }
  const auto min_terms =
      static_cast<long>(std::ceil(std::log(cutoff) / std::log(abs_q)));

  cplx<T> value{1};
  cplx<T> term = alpha;
  T min_factor = std::numeric_limits<T>::infinity();
  for (long k = 0;; ++k) {
    if (std::abs(term) < cutoff && k >= min_terms) break;
    const cplx<T> f = T(1) - term;
    min_factor = std::min(min_factor, std::abs(f));
    value *= f;
    term *= q;
  }
  return {value, min_factor};
}

template <std::floating_point T>
cplx<T> checked_denominator(cplx<T> alpha, cplx<T> q, T cutoff, const char* what) {
  const auto p = infinite_product(alpha, q, cutoff);
  if (p.min_factor < T(pole_tolerance)) {
    throw PoleHit(std::string("vanishing denominator product ") + what);
  }
  return p.value;
}

}  // namespace detail

/// (alpha; q)_n for signed finite n, or the infinite product when
/// n = pochhammer_infinity. Negative orders use the reciprocal product
/// 1 / prod_{k=1}^{-n} (1 - alpha q^{-k}).
template <std::floating_point T = double>
cplx<T> q_pochhammer(std::type_identity_t<cplx<T>> alpha,
                     std::type_identity_t<cplx<T>> q, PochhammerOrder order,
                     T cutoff = T(default_product_cutoff)) {
  if (order.is_infinite()) {
    return detail::infinite_product<T>(alpha, q, cutoff).value;
  }
  const int n = order.value();
  cplx<T> value{1};
  if (n >= 0) {
    cplx<T> term = alpha;
    for (int k = 0; k < n; ++k) {
      value *= T(1) - term;
      term *= q;
    }
    return value;
  }
  if (q == cplx<T>{}) {
    throw InvalidArgument("negative-order q-Pochhammer symbol needs q != 0");
  }
  cplx<T> term = alpha;
  for (int k = 1; k <= -n; ++k) {
    term /= q;
    const cplx<T> f = T(1) - term;
    if (std::abs(f) < T(pole_tolerance)) {
      throw DivisionByZeroFactor("factor 1 - alpha q^-" + std::to_string(k) +
                                 " vanishes");
    }
    value *= f;
  }
  return T(1) / value;
}

/// Both sides of (1 - alpha) / (1 - alpha q^n) = (alpha; q)_n / (alpha q; q)_n.
template <std::floating_point T = double>
std::pair<cplx<T>, cplx<T>> q_pochhammer_ratio_identity_check(
    std::type_identity_t<cplx<T>> alpha, std::type_identity_t<cplx<T>> q, int n) {
  const cplx<T> denom = T(1) - alpha * std::pow(q, n);
  if (std::abs(denom) < T(pole_tolerance)) {
    throw DivisionByZeroFactor("1 - alpha q^n vanishes");
  }
  const cplx<T> lhs = (T(1) - alpha) / denom;
  const cplx<T> rhs = q_pochhammer<T>(alpha, q, n) / q_pochhammer<T>(alpha * q, q, n);
  return {lhs, rhs};
}

/// Symmetric partial sum sum_{n=-N}^{N} (alpha;q)_n / (beta;q)_n z^n.
///
/// Consecutive terms are generated from the factor ratio
/// (1 - alpha q^k) / (1 - beta q^k) (and its reciprocal for negative n), which
/// is the same quantity as the ratio of Pochhammer symbols but never forms
/// the individually overflowing products (q^{-k} grows like q^{-N^2/2}).
template <std::floating_point T = double>
cplx<T> psi11(std::type_identity_t<cplx<T>> alpha, std::type_identity_t<cplx<T>> beta,
              std::type_identity_t<cplx<T>> q, std::type_identity_t<cplx<T>> z,
              int half_width) {
  if (!(std::abs(q) < T(1))) {
    throw DivergentProduct("1psi1 requires |q| < 1");
  }
  if (half_width < 0) {
    throw InvalidArgument("1psi1 truncation must be non-negative");
  }
  const T lower = std::abs(beta / alpha);
  const T abs_z = std::abs(z);
  if (!(lower < abs_z && abs_z < T(1))) {
    throw ConvergenceRegionViolated("1psi1 requires |beta/alpha| < |z| < 1");
  }

  cplx<T> sum{1};
  cplx<T> term{1};
  cplx<T> qk{1};
  for (int k = 0; k < half_width; ++k) {
    const cplx<T> den = T(1) - beta * qk;
    if (std::abs(den) < T(pole_tolerance)) {
      throw PoleHit("(beta; q)_n vanishes in 1psi1 term");
    }
    term *= z * (T(1) - alpha * qk) / den;
    sum += term;
    qk *= q;
  }

  term = cplx<T>{1};
  qk = cplx<T>{1};
  for (int m = 1; m <= half_width; ++m) {
    qk *= q;
    // (1 - beta q^-m) / (1 - alpha q^-m) = (q^m - beta) / (q^m - alpha)
    const cplx<T> den = qk - alpha;
    if (std::abs(den) < T(pole_tolerance) * std::abs(qk)) {
      throw DivisionByZeroFactor("factor 1 - alpha q^-m vanishes in 1psi1 term");
    }
    term *= (qk - beta) / (den * z);
    sum += term;
  }
  return sum;
}

template <std::floating_point T = double>
cplx<T> psi11(const QSeriesParams<T>& p, std::type_identity_t<cplx<T>> z, int half_width) {
  if (!p.beta) throw InvalidArgument("1psi1 needs beta");
  return psi11<T>(p.alpha, *p.beta, p.q, z, half_width);
}

/// Ramanujan's closed form for 1psi1(alpha; beta; q; z):
///   (alpha z, q/(alpha z), beta/alpha, q; q)_inf
///   / (z, beta/(alpha z), q/alpha, beta; q)_inf
template <std::floating_point T = double>
cplx<T> ramanujan_sum(std::type_identity_t<cplx<T>> alpha, std::type_identity_t<cplx<T>> beta,
                      std::type_identity_t<cplx<T>> q, std::type_identity_t<cplx<T>> z,
                      T cutoff = T(default_product_cutoff)) {
  if (!(std::abs(q) < T(1))) {
    throw DivergentProduct("Ramanujan's sum requires |q| < 1");
  }
  const T abs_z = std::abs(z);
  if (!(std::abs(beta / alpha) < abs_z && abs_z < T(1))) {
    throw ConvergenceRegionViolated("Ramanujan's sum requires |beta/alpha| < |z| < 1");
  }
  using detail::checked_denominator;
  using detail::infinite_product;
  const cplx<T> az = alpha * z;
  const cplx<T> num = infinite_product<T>(az, q, cutoff).value *
                      infinite_product<T>(q / az, q, cutoff).value *
                      infinite_product<T>(beta / alpha, q, cutoff).value *
                      infinite_product<T>(q, q, cutoff).value;
  const cplx<T> den = checked_denominator<T>(z, q, cutoff, "(z; q)") *
                      checked_denominator<T>(beta / az, q, cutoff, "(beta/(alpha z); q)") *
                      checked_denominator<T>(q / alpha, q, cutoff, "(q/alpha; q)") *
                      checked_denominator<T>(beta, q, cutoff, "(beta; q)");
  return num / den;
}

template <std::floating_point T = double>
cplx<T> ramanujan_sum(const QSeriesParams<T>& p, std::type_identity_t<cplx<T>> z) {
  if (!p.beta) throw InvalidArgument("Ramanujan's sum needs beta");
  return ramanujan_sum<T>(p.alpha, *p.beta, p.q, z);
}

/// Cauchy's formula: sum_n z^n / (1 - alpha q^n) as
///   (alpha z, q/(alpha z); q)_inf (q; q)_inf^2
///   / (z, q/z, alpha, q/alpha; q)_inf.
/// The right-hand side is symmetric in alpha and z.
template <std::floating_point T = double>
cplx<T> cauchy_sum(std::type_identity_t<cplx<T>> alpha, std::type_identity_t<cplx<T>> q,
                   std::type_identity_t<cplx<T>> z, T cutoff = T(default_product_cutoff)) {
  const T abs_q = std::abs(q);
  if (!(abs_q < T(1))) {
    throw DivergentProduct("Cauchy's sum requires |q| < 1");
  }
  const T abs_z = std::abs(z);
  if (!(abs_q < abs_z && abs_z < T(1))) {
    throw ConvergenceRegionViolated("Cauchy's sum requires |q| < |z| < 1");
  }
  if (alpha == cplx<T>{}) {
    throw InvalidArgument("Cauchy's sum requires alpha != 0");
  }
  using detail::checked_denominator;
  using detail::infinite_product;
  const cplx<T> az = alpha * z;
  const cplx<T> qq = infinite_product<T>(q, q, cutoff).value;
  const cplx<T> num = infinite_product<T>(az, q, cutoff).value *
                      infinite_product<T>(q / az, q, cutoff).value * qq * qq;
  const cplx<T> den = checked_denominator<T>(z, q, cutoff, "(z; q)") *
                      checked_denominator<T>(q / z, q, cutoff, "(q/z; q)") *
                      checked_denominator<T>(alpha, q, cutoff, "(alpha; q)") *
                      checked_denominator<T>(q / alpha, q, cutoff, "(q/alpha; q)");
  return num / den;
}

/// q-gamma function (q;q)_inf / (q^x;q)_inf (1-q)^{1-x}, 0 < q < 1.
/// Complex powers of the positive bases q and 1-q use their real logarithms.
template <std::floating_point T = double>
cplx<T> q_gamma(std::type_identity_t<cplx<T>> x, T q, T cutoff = T(default_product_cutoff)) {
  if (!(q > T(0) && q < T(1))) {
    throw InvalidArgument("q-gamma requires 0 < q < 1");
  }
  const cplx<T> qx = std::exp(x * std::log(q));
  const cplx<T> num = detail::infinite_product<T>(cplx<T>{q}, cplx<T>{q}, cutoff).value;
  const cplx<T> den = detail::checked_denominator<T>(qx, cplx<T>{q}, cutoff, "(q^x; q)");
  return num / den * std::exp((T(1) - x) * std::log1p(-q));
}

/// Modified Jacobi theta function (x; q)_inf (q/x; q)_inf.
template <std::floating_point T = double>
cplx<T> theta_fn(std::type_identity_t<cplx<T>> x, T q, T cutoff = T(default_product_cutoff)) {
  if (x == cplx<T>{}) {
    throw InvalidArgument("theta function is undefined at x = 0");
  }
  if (!(q > T(0) && q < T(1))) {
    throw InvalidArgument("theta function requires 0 < q < 1");
  }
  const cplx<T> base{q};
  return detail::infinite_product<T>(x, base, cutoff).value *
         detail::infinite_product<T>(base / x, base, cutoff).value;
}

}  // namespace szego
