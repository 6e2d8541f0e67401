#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <vector>

#include "szego/kernel.hpp"
#include "szego/nystrom.hpp"
#include "test_support.hpp"

using namespace szego;
using szego::testing::C;
using szego::testing::Sampler;

namespace {

constexpr C I{0.0, 1.0};
constexpr double kPi = std::numbers::pi;

std::vector<C> series_at_nodes(const BoundaryGrid<double>& g, C a, int n_max) {
  const AnnulusDomain<double> dom(g.rho, a);
  std::vector<C> v;
  for (const C& z : g.nodes) v.push_back(eval_series_eq4(dom, z, {n_max, 25}));
  return v;
}

}  // namespace

TEST(BoundaryGrid, Layout) {
  const auto g = build_boundary_grid(0.5, 4);
  ASSERT_EQ(g.size(), 8u);
  EXPECT_NEAR(std::accumulate(g.weights.begin(), g.weights.end(), 0.0), 3.0 * kPi, 1e-12);
  EXPECT_EQ(g.tangents[0], I);
  EXPECT_EQ(g.tangents[4], -I);
  EXPECT_EQ(g.nodes[0], C(1.0));
  EXPECT_EQ(g.nodes[4], C(0.5));
}

TEST(BoundaryGrid, Invariants) {
  for (int n : {16, 64, 128}) {
    const auto g = build_boundary_grid(0.3, n);
    for (std::size_t j = 0; j < g.size(); ++j) {
      EXPECT_NEAR(std::abs(g.tangents[j]), 1.0, 1e-15);
      EXPECT_GT(g.weights[j], 0.0);
    }
    EXPECT_NEAR(std::accumulate(g.weights.begin(), g.weights.end(), 0.0), 2.0 * kPi * 1.3, 1e-12);
    // Inner circle runs clockwise: the second inner node sits at angle -2 pi / n.
    EXPECT_LT(std::arg(g.nodes[static_cast<std::size_t>(n) + 1]), 0.0);
  }
}

TEST(BoundaryGrid, RejectsBadNodeCounts) {
  EXPECT_THROW(build_boundary_grid(0.5, 2), InvalidArgument);
  EXPECT_THROW(build_boundary_grid(0.5, 7), InvalidArgument);
  EXPECT_THROW(build_boundary_grid(1.5, 8), InvalidArgument);
}

TEST(KSKernel, DiagonalIsZero) {
  EXPECT_EQ(ks_kernel(0.5 * I, 1.0, 0.5 * I, 1.0), C(0.0));
}

TEST(KSKernel, SkewHermitian) {
  Sampler s(1);
  const auto g = build_boundary_grid(0.4, 64);
  for (int draw = 0; draw < 200; ++draw) {
    const auto j = static_cast<std::size_t>(s.uniform(0, 128));
    const auto k = static_cast<std::size_t>(s.uniform(0, 128));
    const C ajk = ks_kernel(g.nodes[j], g.tangents[j], g.nodes[k], g.tangents[k]);
    const C akj = ks_kernel(g.nodes[k], g.tangents[k], g.nodes[j], g.tangents[j]);
    EXPECT_LT(std::abs(ajk + std::conj(akj)), 1e-14);
  }
}

TEST(KSKernel, VanishesOnACommonCircle) {
  EXPECT_LT(std::abs(ks_kernel(1.0, I, I, -1.0)), 1e-14);
  // Two inner-circle points, clockwise tangents.
  const double rho = 0.5;
  const C z = std::polar(rho, -0.3), w = std::polar(rho, -2.1);
  EXPECT_LT(std::abs(ks_kernel(z, -I * z / rho, w, -I * w / rho)), 1e-14);
  // Points on different circles couple.
  EXPECT_GT(std::abs(ks_kernel(1.0, I, 0.5 * I, 1.0)), 1e-3);
}

TEST(KSRhs, DirectSubstitution) {
  const C g = ks_rhs(1.0, I, 0.7 * I);
  EXPECT_NEAR(std::abs(g), 1.0 / (2.0 * kPi * std::abs(C(1.0, 0.7))), 1e-15);
  const C expected = -(-I) / (1.0 + 0.7 * I) / (2.0 * kPi * I);
  EXPECT_LT(std::abs(g - expected), 1e-16);
}

TEST(KSRhs, SmoothAlongOuterCircle) {
  // |dg/dt| <= 1 / (2 pi (1 - |a|)^2) on the unit circle.
  const C a = 0.7 * I;
  const double h = 1e-4;
  double max_slope = 0.0;
  for (int k = 0; k < 2000; ++k) {
    const double t = 2.0 * kPi * k / 2000.0;
    const C g0 = ks_rhs(std::polar(1.0, t), I * std::polar(1.0, t), a);
    const C g1 = ks_rhs(std::polar(1.0, t + h), I * std::polar(1.0, t + h), a);
    max_slope = std::max(max_slope, std::abs(g1 - g0) / h);
  }
  EXPECT_LT(max_slope, 1.0 / (2.0 * kPi * 0.09));
}

TEST(KSRhs, ConjugationSymmetryForRealAnchor) {
  // a real: reflecting a node across the real axis flips the tangent to
  // -conj(T), and g(conj z) = conj(g(z)).
  const double a = 0.7;
  Sampler s(6);
  for (int draw = 0; draw < 50; ++draw) {
    const double r = draw % 2 == 0 ? 1.0 : 0.5;
    const double sense = draw % 2 == 0 ? 1.0 : -1.0;
    const double t = s.uniform(0.0, 2.0 * kPi);
    const C z = std::polar(r, sense * t);
    const C tz = sense * I * std::polar(1.0, sense * t);
    const C gz = ks_rhs(z, tz, a);
    const C g_reflected = ks_rhs(std::conj(z), -std::conj(tz), a);
    EXPECT_LT(std::abs(g_reflected - std::conj(gz)), 1e-15);
  }
}

TEST(SolveKS, MatchesSeriesAt128Nodes) {
  const auto g = build_boundary_grid(0.5, 128);
  const auto x = solve_ks(g, 0.7 * I);
  EXPECT_LE(error_norm<double>(x, series_at_nodes(g, 0.7 * I, 100)), 1e-12);
}

TEST(SolveKS, SixteenNodeErrorMatchesReferenceValue) {
  const auto g = build_boundary_grid(0.5, 16);
  const auto x = solve_ks(g, 0.7 * I);
  const double e = error_norm<double>(x, series_at_nodes(g, 0.7 * I, 100));
  EXPECT_NEAR(e, 2.97758e-3, 2.97758e-3 * 1e-4);
}

TEST(SolveKS, ResidualAndAntiHermitian) {
  const auto g = build_boundary_grid(0.5, 64);
  const auto sys = assemble_ks_system(g, 0.7 * I);
  const auto x = solve_ks_system(sys);
  EXPECT_LT(residual_norm<double>(sys, x), 1e-13);
  EXPECT_LT(anti_hermitian_defect(sys, g), 1e-13);
}

TEST(SolveKS, SpectralConvergence) {
  const C a{0.3, 0.5};
  double previous = 1.0;
  double previous_sup = 0.0;
  for (int n : {16, 32, 64, 128}) {
    const auto g = build_boundary_grid(0.4, n);
    const auto x = solve_ks(g, a);
    const double e = error_norm<double>(x, series_at_nodes(g, a, 150));
    if (n <= 64) {
      // Each doubling at least squares-root-geometric: e(2n) <= e(n)^{1.5}.
      EXPECT_LT(e, std::pow(previous, 1.5)) << "n=" << n;
    }
    EXPECT_LT(e, previous) << "n=" << n;
    previous = e;

    double sup = 0.0;
    for (const C& v : x) sup = std::max(sup, std::abs(v));
    if (previous_sup > 0.0) {
      EXPECT_LT(std::abs(sup / previous_sup - 1.0), 0.5);
    }
    previous_sup = sup;
  }
}

TEST(SolveKS, RejectsAnchorOutsideAnnulus) {
  const auto g = build_boundary_grid(0.5, 16);
  EXPECT_THROW(solve_ks(g, 0.2 * I), DomainViolation);
}

TEST(SolveKS, SingularSystemDetected) {
  KSSystem<double> sys;
  sys.matrix = ComplexMatrix<double>::Zero(4, 4);
  sys.rhs = ComplexVector<double>::Ones(4);
  EXPECT_THROW(solve_ks_system(sys), SingularSystem);
}

TEST(ErrorNorm, Basics) {
  const std::vector<C> u{1.0, I, 2.0};
  const std::vector<C> v{1.0, I, 2.5};
  EXPECT_EQ(error_norm<double>(u, u), 0.0);
  EXPECT_EQ(error_norm<double>(u, v), 0.5);
  EXPECT_THROW(error_norm<double>(u, std::vector<C>{1.0}), LengthMismatch);
}
