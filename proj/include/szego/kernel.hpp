#pragma once

// Szego kernel of the annulus rho < |z| < 1 evaluated four ways:
//
//   series4    (1/2pi) sum_n (z conj(a))^n / (1 + rho^{2n+1})
//   series5    (1/2pi) sum_n (-1)^n rho^n / (rho^{2n} - z conj(a))
//   product21  (1/2pi) prod_{n>=0} of the Ramanujan-sum factors
//   closed30   q-gamma / theta closed form with q = rho^2
//
// plus the general annulus r2 < |z - z0| < r1 (reduced to the canonical one
// through the affine map (z - z0)/r1) and the weighted kernel in which the
// weight t > 0 replaces rho in 1 + rho^{2n+1}.
//
// Throughout, w = z conj(a) is the only combination of z and a the canonical
// kernel depends on.

#include <cmath>
#include <complex>
#include <concepts>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "szego/error.hpp"
#include "szego/qseries.hpp"

namespace szego {

/// Slack on |z| when checking closed-annulus membership of boundary nodes.
inline constexpr double domain_slack = 1e-12;

/// Series: sum over -series_half_width..series_half_width.
/// Product: factors n = 0..product_depth.
struct TruncationSpec {
  int series_half_width = 100;
  int product_depth = 25;

  void validate() const {
    if (series_half_width < 1) throw InvalidArgument("series half-width must be >= 1");
    if (product_depth < 0) throw InvalidArgument("product depth must be >= 0");
  }
};

enum class Method { series4, series5, product21, closed30 };

inline std::string_view to_string(Method m) {
  switch (m) {
    case Method::series4: return "series4";
    case Method::series5: return "series5";
    case Method::product21: return "product";
    case Method::closed30: return "closed";
  }
  return "unknown";
}

inline std::optional<Method> parse_method(std::string_view s) {
  if (s == "series4") return Method::series4;
  if (s == "series5") return Method::series5;
  if (s == "product") return Method::product21;
  if (s == "closed") return Method::closed30;
  return std::nullopt;
}

/// Canonical annulus rho < |z| < 1 with kernel anchor a inside it.
template <std::floating_point T = double>
class AnnulusDomain {
 public:
  AnnulusDomain(T rho, std::type_identity_t<cplx<T>> a) : rho_(rho), a_(a) {
    if (!(rho > T(0) && rho < T(1))) {
      throw DomainViolation("annulus needs 0 < rho < 1");
    }
    const T r = std::abs(a);
    if (!(rho < r && r < T(1))) {
      throw DomainViolation("anchor a must satisfy rho < |a| < 1");
    }
  }

  T rho() const { return rho_; }
  cplx<T> a() const { return a_; }

  bool contains_closure(cplx<T> z) const {
    const T r = std::abs(z);
    const T slack = T(domain_slack);
    return r >= rho_ * (T(1) - slack) && r <= T(1) + slack;
  }

 private:
  T rho_;
  cplx<T> a_;
};

/// r2 < |z - z0| < r1 with anchor a.
template <std::floating_point T = double>
class GeneralAnnulusDomain {
 public:
  GeneralAnnulusDomain(std::type_identity_t<cplx<T>> z0, T r1, T r2,
                       std::type_identity_t<cplx<T>> a)
      : z0_(z0), r1_(r1), r2_(r2), a_(a) {
    if (!(r2 > T(0) && r2 < r1)) {
      throw DomainViolation("general annulus needs 0 < r2 < r1");
    }
    const T d = std::abs(a - z0);
    if (!(r2 < d && d < r1)) {
      throw DomainViolation("anchor a must satisfy r2 < |a - z0| < r1");
    }
  }

  cplx<T> center() const { return z0_; }
  T outer_radius() const { return r1_; }
  T inner_radius() const { return r2_; }
  cplx<T> a() const { return a_; }

  /// Image under f(z) = (z - z0)/r1: the annulus r2/r1 < |z| < 1.
  AnnulusDomain<T> canonical() const { return AnnulusDomain<T>(r2_ / r1_, to_canonical(a_)); }
  cplx<T> to_canonical(cplx<T> z) const { return (z - z0_) / r1_; }

 private:
  cplx<T> z0_;
  T r1_;
  T r2_;
  cplx<T> a_;
};

template <std::floating_point T = double>
class WeightedKernelParams {
 public:
  WeightedKernelParams(T rho, std::type_identity_t<cplx<T>> a, T t) : domain_(rho, a), t_(t) {
    if (!(t > T(0))) throw InvalidArgument("weight t must be positive");
  }

  T rho() const { return domain_.rho(); }
  cplx<T> a() const { return domain_.a(); }
  T t() const { return t_; }
  const AnnulusDomain<T>& domain() const { return domain_; }

 private:
  AnnulusDomain<T> domain_;
  T t_;
};

/// Exponents solving rho^{2x} = -rho (lambda), rho^{2x} = -t (mu) and
/// rho^{2x} = -rho^2/t (nu) on the principal branch.
template <std::floating_point T = double>
struct ClosedFormExponents {
  cplx<T> lambda;
  cplx<T> mu;
  cplx<T> nu;

  static ClosedFormExponents make(T rho, T t) {
    const T two_log_rho = T(2) * std::log(rho);
    const T pi = std::numbers::pi_v<T>;
    const T log_t = std::log(t);
    return {cplx<T>{T(0.5), pi / two_log_rho},
            cplx<T>{log_t, pi} / two_log_rho,
            T(1) + cplx<T>{-log_t, pi} / two_log_rho};
  }

  static ClosedFormExponents make(T rho) { return make(rho, rho); }
};

namespace detail {

template <std::floating_point T>
constexpr T inv_two_pi = T(1) / (T(2) * std::numbers::pi_v<T>);

// Zero of the factor conj(a) z + c, written as conj(a) (z - z_c). Keeping the
// zero explicit makes the factor vanish bit-exactly at zero_location().
template <std::floating_point T>
cplx<T> factor_zero(T c, cplx<T> a) {
  return -(c / std::conj(a));
}

template <std::floating_point T>
void check_pole(cplx<T> f, const char* what) {
  if (std::abs(f) < T(pole_tolerance)) throw PoleHit(what);
}

template <std::floating_point T>
cplx<T> sum_reversed(const std::vector<cplx<T>>& terms) {
  cplx<T> s{};
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) s += *it;
  return s;
}

}  // namespace detail

/// Bilateral series (1/2pi) sum_{n=-N}^{N} (z conj(a))^n / (1 + rho^{2n+1}),
/// valid for rho <= |z| <= 1.
template <std::floating_point T = double>
cplx<T> eval_series_eq4(const AnnulusDomain<T>& dom, std::type_identity_t<cplx<T>> z,
                        const TruncationSpec& trunc = {}) {
  trunc.validate();
  if (!dom.contains_closure(z)) {
    throw DomainViolation("series4 needs rho <= |z| <= 1");
  }
  const T rho = dom.rho();
  const cplx<T> w = z * std::conj(dom.a());
  const cplx<T> inv = rho * rho / w;
  const int n_max = trunc.series_half_width;

  // Terms ordered by decreasing |n| so the sum runs small-to-large.
  std::vector<cplx<T>> terms;
  terms.reserve(2 * n_max + 1);
  terms.push_back(cplx<T>{1} / (T(1) + rho));
  cplx<T> wp{1};
  cplx<T> ip{1};
  for (int n = 1; n <= n_max; ++n) {
    wp *= w;
    ip *= inv;
    terms.push_back(wp / (T(1) + std::pow(rho, 2 * n + 1)));
    // n -> -n: w^{-n} / (1 + rho^{1-2n}) = (rho^2/w)^n / (rho (1 + rho^{2n-1}))
    terms.push_back(ip / (rho * (T(1) + std::pow(rho, 2 * n - 1))));
  }
  return detail::inv_two_pi<T> * detail::sum_reversed(terms);
}

/// Bilateral series (1/2pi) sum_{n=-N}^{N} (-1)^n rho^n / (rho^{2n} - z conj(a)).
/// Requires rho^2 < |z conj(a)| so both tails decay like rho^{|n|}.
template <std::floating_point T = double>
cplx<T> eval_series_eq5(const AnnulusDomain<T>& dom, std::type_identity_t<cplx<T>> z,
                        const TruncationSpec& trunc = {}) {
  trunc.validate();
  const T rho = dom.rho();
  const cplx<T> w = z * std::conj(dom.a());
  if (!(std::abs(w) > rho * rho)) {
    throw ConvergenceRegionViolated("series5 needs rho^2 < |z conj(a)|");
  }
  const T tol = T(pole_tolerance);
  const int n_max = trunc.series_half_width;

  std::vector<cplx<T>> terms;
  terms.reserve(2 * n_max + 1);
  const cplx<T> d0 = T(1) - w;
  if (std::abs(d0) < tol) throw PoleHit("series5 denominator vanishes at n = 0");
  terms.push_back(T(1) / d0);
  for (int n = 1; n <= n_max; ++n) {
    const T sign = (n % 2 == 0) ? T(1) : T(-1);
    const T rn = std::pow(rho, n);
    const T r2n = std::pow(rho, 2 * n);
    const cplx<T> dp = r2n - w;
    // n -> -n: (-1)^n rho^{-n} / (rho^{-2n} - w) = (-1)^n rho^n / (1 - w rho^{2n})
    const cplx<T> dm = T(1) - w * r2n;
    if (std::abs(dp) < tol || std::abs(dm) < tol * r2n) {
      throw PoleHit("series5 denominator vanishes at n = +/-" + std::to_string(n));
    }
    terms.push_back(sign * rn / dp);
    terms.push_back(sign * rn / dm);
  }
  return detail::inv_two_pi<T> * detail::sum_reversed(terms);
}

/// Infinite product (1/2pi) prod_{n=0}^{P}
///   (1 + w rho^{2n+1})(w + rho^{2n+1})(1 - rho^{2n+2})^2
///   / ((1 - w rho^{2n})(w - rho^{2n+2})(1 + rho^{2n+1})^2),  w = z conj(a).
/// Defined for every z except 0 and the poles w = rho^{-2n}, rho^{2n+2}.
template <std::floating_point T = double>
cplx<T> eval_product_eq21(const AnnulusDomain<T>& dom, std::type_identity_t<cplx<T>> z,
                          const TruncationSpec& trunc = {}) {
  trunc.validate();
  if (z == cplx<T>{}) throw PoleHit("product has a pole at z = 0");
  const T rho = dom.rho();
  const cplx<T> ca = std::conj(dom.a());
  const cplx<T> w = z * ca;

  cplx<T> value{1};
  for (int n = 0; n <= trunc.product_depth; ++n) {
    const T r_even = std::pow(rho, 2 * n);
    const T r_odd = std::pow(rho, 2 * n + 1);
    const T r_next = std::pow(rho, 2 * n + 2);
    const T c1 = T(1) - r_next;
    const T c2 = T(1) + r_odd;

    const cplx<T> d1 = T(1) - w * r_even;
    const cplx<T> d2 = w - r_next;
    detail::check_pole(d1, "product: 1 - w rho^{2n} vanishes");
    detail::check_pole(d2, "product: w - rho^{2n+2} vanishes");

    const cplx<T> n1 = T(1) + w * r_odd;
    const cplx<T> n2 = ca * (z - detail::factor_zero(r_odd, dom.a()));
    value *= (n1 * n2 * (c1 * c1)) / (d1 * d2 * (c2 * c2));
  }
  return detail::inv_two_pi<T> * value;
}

/// Closed form [Gamma_{rho^2}(lambda)]^2 / (2pi (1-rho^2)^{2(1-lambda)})
///   * theta(-rho w; rho^2) / theta(w; rho^2).
template <std::floating_point T = double>
cplx<T> eval_closed_form_eq30(const AnnulusDomain<T>& dom, std::type_identity_t<cplx<T>> z) {
  const T rho = dom.rho();
  const T q = rho * rho;
  const cplx<T> w = z * std::conj(dom.a());
  if (w == cplx<T>{}) throw PoleHit("closed form has a pole at z = 0");

  const cplx<T> den = detail::checked_denominator<T>(w, cplx<T>{q}, T(default_product_cutoff),
                                                     "theta(w; rho^2)") *
                      detail::checked_denominator<T>(q / w, cplx<T>{q}, T(default_product_cutoff),
                                                     "theta(w; rho^2)");
  const auto ex = ClosedFormExponents<T>::make(rho);
  const cplx<T> g = q_gamma<T>(ex.lambda, q);
  const cplx<T> scale = std::exp(T(2) * (T(1) - ex.lambda) * std::log1p(-q));
  return detail::inv_two_pi<T> * g * g / scale * theta_fn<T>(-rho * w, q) / den;
}

/// The unique zero of the kernel in the annulus, -rho / conj(a).
template <std::floating_point T = double>
cplx<T> zero_location(const AnnulusDomain<T>& dom) {
  return detail::factor_zero(dom.rho(), dom.a());
}

template <std::floating_point T = double>
cplx<T> eval_canonical(const AnnulusDomain<T>& dom, std::type_identity_t<cplx<T>> z,
                       Method method, const TruncationSpec& trunc = {}) {
  switch (method) {
    case Method::series4: return eval_series_eq4(dom, z, trunc);
    case Method::series5: return eval_series_eq5(dom, z, trunc);
    case Method::product21: return eval_product_eq21(dom, z, trunc);
    case Method::closed30: return eval_closed_form_eq30(dom, z);
  }
  throw InvalidArgument("unknown evaluation method");
}

/// Kernel of r2 < |z - z0| < r1 via S2(z, a) = S((z - z0)/r1, (a - z0)/r1) / r1.
template <std::floating_point T = double>
cplx<T> eval_general_annulus(const GeneralAnnulusDomain<T>& dom,
                             std::type_identity_t<cplx<T>> z, Method method,
                             const TruncationSpec& trunc = {}) {
  return T(1) / dom.outer_radius() *
         eval_canonical(dom.canonical(), dom.to_canonical(z), method, trunc);
}

/// z0 - r1 r2 / conj(a - z0).
template <std::floating_point T = double>
cplx<T> general_zero_location(const GeneralAnnulusDomain<T>& dom) {
  return dom.center() -
         dom.outer_radius() * dom.inner_radius() / std::conj(dom.a() - dom.center());
}

/// Weighted kernel series (1/2pi) sum_{n=-N}^{N} w^n / (1 + t rho^{2n}).
template <std::floating_point T = double>
cplx<T> eval_weighted_series_eq37(const WeightedKernelParams<T>& par,
                                  std::type_identity_t<cplx<T>> z,
                                  const TruncationSpec& trunc = {}) {
  trunc.validate();
  const T rho = par.rho();
  const T rho2 = rho * rho;
  const T t = par.t();
  const cplx<T> w = z * std::conj(par.a());
  const T abs_w = std::abs(w);
  if (!(rho2 < abs_w && abs_w < T(1))) {
    throw ConvergenceRegionViolated("weighted series needs rho^2 < |z conj(a)| < 1");
  }
  const cplx<T> inv = rho2 / w;
  const int n_max = trunc.series_half_width;

  std::vector<cplx<T>> terms;
  terms.reserve(2 * n_max + 1);
  terms.push_back(cplx<T>{1} / (T(1) + t));
  cplx<T> wp{1};
  cplx<T> ip{1};
  for (int n = 1; n <= n_max; ++n) {
    wp *= w;
    ip *= inv;
    const T r2n = std::pow(rho, 2 * n);
    terms.push_back(wp / (T(1) + t * r2n));
    // n -> -n: w^{-n} / (1 + t rho^{-2n}) = (rho^2/w)^n / (rho^{2n} + t)
    terms.push_back(ip / (r2n + t));
  }
  return detail::inv_two_pi<T> * detail::sum_reversed(terms);
}

/// Weighted kernel product (1/2pi) prod_{n=0}^{P}
///   (1 + t w rho^{2n})(w + rho^{2n+2}/t)(1 - rho^{2n+2})^2
///   / ((1 - w rho^{2n})(w - rho^{2n+2})(1 + rho^{2n+2}/t)(1 + t rho^{2n})).
template <std::floating_point T = double>
cplx<T> eval_weighted_product_eq38(const WeightedKernelParams<T>& par,
                                   std::type_identity_t<cplx<T>> z,
                                   const TruncationSpec& trunc = {}) {
  trunc.validate();
  if (z == cplx<T>{}) throw PoleHit("weighted product has a pole at z = 0");
  const T rho = par.rho();
  const T t = par.t();
  const cplx<T> ca = std::conj(par.a());
  const cplx<T> w = z * ca;

  cplx<T> value{1};
  for (int n = 0; n <= trunc.product_depth; ++n) {
    const T r_even = std::pow(rho, 2 * n);
    const T r_next = std::pow(rho, 2 * n + 2);
    const T c1 = T(1) - r_next;

    const cplx<T> d1 = T(1) - w * r_even;
    const cplx<T> d2 = w - r_next;
    detail::check_pole(d1, "weighted product: 1 - w rho^{2n} vanishes");
    detail::check_pole(d2, "weighted product: w - rho^{2n+2} vanishes");
    const T d3 = (T(1) + r_next / t) * (T(1) + t * r_even);

    const cplx<T> n1 = T(1) + t * w * r_even;
    const cplx<T> n2 = ca * (z - detail::factor_zero(r_next / t, par.a()));
    value *= (n1 * n2 * (c1 * c1)) / (d1 * d2 * d3);
  }
  return detail::inv_two_pi<T> * value;
}

/// Closed form Gamma_{rho^2}(mu) Gamma_{rho^2}(nu) / (2pi (1-rho^2)^{2-mu-nu})
///   * theta(-t w; rho^2) / theta(w; rho^2).
template <std::floating_point T = double>
cplx<T> eval_weighted_closed_form_eq42(const WeightedKernelParams<T>& par,
                                       std::type_identity_t<cplx<T>> z) {
  const T rho = par.rho();
  const T q = rho * rho;
  const cplx<T> w = z * std::conj(par.a());
  if (w == cplx<T>{}) throw PoleHit("weighted closed form has a pole at z = 0");

  const cplx<T> den = detail::checked_denominator<T>(w, cplx<T>{q}, T(default_product_cutoff),
                                                     "theta(w; rho^2)") *
                      detail::checked_denominator<T>(q / w, cplx<T>{q}, T(default_product_cutoff),
                                                     "theta(w; rho^2)");
  const auto ex = ClosedFormExponents<T>::make(rho, par.t());
  const cplx<T> scale = std::exp((T(2) - ex.mu - ex.nu) * std::log1p(-q));
  return detail::inv_two_pi<T> * q_gamma<T>(ex.mu, q) * q_gamma<T>(ex.nu, q) / scale *
         theta_fn<T>(-par.t() * w, q) / den;
}

/// -rho/conj(a) when ln t / ln rho is an odd integer (t = rho^{+-(2m+1)}),
/// otherwise empty.
template <std::floating_point T = double>
std::optional<cplx<T>> weighted_zero_condition(const WeightedKernelParams<T>& par) {
  const T e = std::log(par.t()) / std::log(par.rho());
  const T m = std::round(e);
  if (std::abs(e - m) >= T(1e-10)) return std::nullopt;
  if (std::fmod(std::abs(m), T(2)) != T(1)) return std::nullopt;
  return zero_location(par.domain());
}

}  // namespace szego
