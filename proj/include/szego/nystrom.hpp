#pragma once

// Nystrom solution of the boundary integral equation
//
//   S(z) + int_Gamma A(z, w) S(w) |dw| = g(z),   z on Gamma,
//
// on the boundary of rho < |z| < 1, discretized with the trapezoidal rule on
// n equispaced parameter nodes per circle. The outer circle is traversed
// counterclockwise (e^{it}), the inner one clockwise (rho e^{-it}), so the
// annulus lies to the left of both.
//
// Deliberately independent of kernel.hpp: this is the reference the analytic
// formulas are checked against.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>
#include <limits>
#include <numbers>
#include <span>
#include <type_traits>
#include <vector>

#include "szego/error.hpp"
#include "szego/types.hpp"

namespace szego {

/// Quadrature nodes on Gamma_0 (indices 0..n-1) followed by Gamma_1
/// (indices n..2n-1), with unit tangents and arc-length weights.
template <std::floating_point T = double>
struct BoundaryGrid {
  T rho{};
  int nodes_per_curve{};
  std::vector<cplx<T>> nodes;
  std::vector<cplx<T>> tangents;
  std::vector<T> weights;

  std::size_t size() const { return nodes.size(); }
};

template <std::floating_point T = double>
using ComplexMatrix = Eigen::Matrix<cplx<T>, Eigen::Dynamic, Eigen::Dynamic>;

template <std::floating_point T = double>
using ComplexVector = Eigen::Matrix<cplx<T>, Eigen::Dynamic, 1>;

/// Discrete integral-equation system (I + A W) x = g.
template <std::floating_point T = double>
struct KSSystem {
  ComplexMatrix<T> matrix;
  ComplexVector<T> rhs;
};

template <std::floating_point T = double>
BoundaryGrid<T> build_boundary_grid(T rho, int n) {
  if (!(rho > T(0) && rho < T(1))) throw InvalidArgument("grid needs 0 < rho < 1");
  if (n < 4) throw InvalidArgument("grid needs at least 4 nodes per curve");
  if (n % 2 != 0) throw InvalidArgument("grid needs an even node count per curve");

  BoundaryGrid<T> g;
  g.rho = rho;
  g.nodes_per_curve = n;
  g.nodes.reserve(2 * n);
  g.tangents.reserve(2 * n);
  g.weights.reserve(2 * n);
  const T h = T(2) * std::numbers::pi_v<T> / T(n);
  const cplx<T> i{0, 1};
  for (int j = 0; j < n; ++j) {
    const cplx<T> e = std::polar(T(1), h * T(j));
    g.nodes.push_back(e);
    g.tangents.push_back(i * e);
    g.weights.push_back(h);
  }
  for (int j = 0; j < n; ++j) {
    const cplx<T> e = std::polar(T(1), -h * T(j));
    g.nodes.push_back(rho * e);
    g.tangents.push_back(-i * e);
    g.weights.push_back(h * rho);
  }
  return g;
}

/// A(z, w) = (1/(2 pi i)) (T(w)/(z - w) - conj(T(z))/(conj(z) - conj(w))),
/// and 0 on the diagonal z = w.
template <std::floating_point T = double>
cplx<T> ks_kernel(std::type_identity_t<cplx<T>> z, std::type_identity_t<cplx<T>> tz,
                  std::type_identity_t<cplx<T>> w, std::type_identity_t<cplx<T>> tw) {
  if (z == w) return {};
  const cplx<T> two_pi_i{0, T(2) * std::numbers::pi_v<T>};
  return (tw / (z - w) - std::conj(tz) / std::conj(z - w)) / two_pi_i;
}

/// g(z) = -(1/(2 pi i)) conj(T(z)) / (conj(z) - conj(a)).
template <std::floating_point T = double>
cplx<T> ks_rhs(std::type_identity_t<cplx<T>> z, std::type_identity_t<cplx<T>> tz,
               std::type_identity_t<cplx<T>> a) {
  const cplx<T> two_pi_i{0, T(2) * std::numbers::pi_v<T>};
  return -std::conj(tz) / std::conj(z - a) / two_pi_i;
}

template <std::floating_point T = double>
KSSystem<T> assemble_ks_system(const BoundaryGrid<T>& grid, std::type_identity_t<cplx<T>> a) {
  const T r = std::abs(a);
  if (!(grid.rho < r && r < T(1))) {
    throw DomainViolation("anchor a must lie strictly inside the annulus");
  }
  const auto m = static_cast<Eigen::Index>(grid.size());
  KSSystem<T> sys;
  sys.matrix.resize(m, m);
  sys.rhs.resize(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    const auto uj = static_cast<std::size_t>(j);
    for (Eigen::Index k = 0; k < m; ++k) {
      const auto uk = static_cast<std::size_t>(k);
      sys.matrix(j, k) = ks_kernel<T>(grid.nodes[uj], grid.tangents[uj], grid.nodes[uk],
                                      grid.tangents[uk]) *
                         grid.weights[uk];
    }
    sys.matrix(j, j) += T(1);
    sys.rhs(j) = ks_rhs<T>(grid.nodes[uj], grid.tangents[uj], a);
  }
  return sys;
}

/// Dense LU with partial pivoting; throws SingularSystem when the reciprocal
/// condition estimate is at or below machine epsilon.
template <std::floating_point T = double>
std::vector<cplx<T>> solve_ks_system(const KSSystem<T>& sys) {
  const Eigen::PartialPivLU<ComplexMatrix<T>> lu(sys.matrix);
  if (!(lu.rcond() > std::numeric_limits<T>::epsilon())) {
    throw SingularSystem("integral-equation matrix is numerically singular");
  }
  const ComplexVector<T> x = lu.solve(sys.rhs);
  return {x.data(), x.data() + x.size()};
}

/// Boundary values of the Szego kernel S(z_j, a) at the grid nodes.
template <std::floating_point T = double>
std::vector<cplx<T>> solve_ks(const BoundaryGrid<T>& grid, std::type_identity_t<cplx<T>> a) {
  return solve_ks_system(assemble_ks_system(grid, a));
}

/// max_j |((I + A W) x - g)_j|
template <std::floating_point T = double>
T residual_norm(const KSSystem<T>& sys, std::type_identity_t<std::span<const cplx<T>>> x) {
  if (static_cast<Eigen::Index>(x.size()) != sys.rhs.size()) {
    throw LengthMismatch("solution length does not match the system");
  }
  const Eigen::Map<const ComplexVector<T>> xv(x.data(), static_cast<Eigen::Index>(x.size()));
  return (sys.matrix * xv - sys.rhs).cwiseAbs().maxCoeff();
}

/// Largest entry of W^{1/2} A W^{1/2} + (W^{1/2} A W^{1/2})^H, where A W is
/// the assembled matrix minus the identity. Zero for an exactly
/// skew-Hermitian kernel.
template <std::floating_point T = double>
T anti_hermitian_defect(const KSSystem<T>& sys, const BoundaryGrid<T>& grid) {
  const auto m = static_cast<Eigen::Index>(grid.size());
  Eigen::Matrix<T, Eigen::Dynamic, 1> s(m);
  for (Eigen::Index k = 0; k < m; ++k) s(k) = std::sqrt(grid.weights[static_cast<std::size_t>(k)]);
  ComplexMatrix<T> b = sys.matrix - ComplexMatrix<T>::Identity(m, m);
  // (A W)_{jk} = A_jk w_k  ->  s_j A_jk s_k = s_j (A W)_jk / s_k
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index k = 0; k < m; ++k) b(j, k) *= s(j) / s(k);
  }
  return (b + b.adjoint()).cwiseAbs().maxCoeff();
}

/// Sup norm max_j |a_j - b_j|.
template <std::floating_point T = double>
T error_norm(std::type_identity_t<std::span<const cplx<T>>> values_a,
             std::type_identity_t<std::span<const cplx<T>>> values_b) {
  if (values_a.size() != values_b.size()) {
    throw LengthMismatch("error_norm needs equal-length vectors");
  }
  T e{0};
  for (std::size_t j = 0; j < values_a.size(); ++j) {
    e = std::max(e, std::abs(values_a[j] - values_b[j]));
  }
  return e;
}

}  // namespace szego
