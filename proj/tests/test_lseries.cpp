#include <gtest/gtest.h>

#include <cmath>

#include "fqm/lseries.hpp"
#include "fqm/momentcalc.hpp"

using namespace fqm;

namespace {

CharGroup group(std::uint32_t p, const char* Q) {
  const FieldDesc F = FieldDesc::make(p, 1);
  return CharGroup::build(F, parse_poly(F, Q));
}

// L(s) = sum_n L_n q^(-ns)
cd l_at(const LSeriesData& s, double sv) {
  const double q = s.group().field().q();
  cd acc = 0.0;
  for (std::size_t n = 0; n < s.L.size(); ++n) acc += s.L[n] * std::pow(q, -sv * static_cast<double>(n));
  return acc;
}

double rel(cd a, cd b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST(LCoeffs, HistogramPathMatchesDirectSums) {
  for (auto [p, Q] : {std::pair{2u, "1+t+t^4"}, std::pair{3u, "1+2*t+t^3"}, std::pair{5u, "2+t^2"}}) {
    const CharGroup G = group(p, Q);
    for (std::uint64_t j = 0; j < G.phi(); ++j) {
      const Character chi(G, j);
      const LSeriesData a = l_coeffs(G, chi);
      const LSeriesData b = l_coeffs_naive(G, chi);
      ASSERT_EQ(a.L.size(), static_cast<std::size_t>(G.degree()));
      for (int n = 0; n < G.degree(); ++n) EXPECT_LT(std::abs(a.L[n] - b.L[n]), 1e-10) << j << " " << n;
      EXPECT_NEAR(std::abs(a.L[0] - 1.0), 0.0, 1e-15);
    }
  }
}

TEST(LCoeffs, MatrixMatchesNaiveAndIsDeterministic) {
  const CharGroup G = group(3, "1+2*t+t^5");
  const LMatrix fast = l_coeffs_all(G, 1);
  const LMatrix slow = l_coeffs_all_naive(G);
  ASSERT_EQ(fast.values.size(), slow.values.size());
  for (std::size_t i = 0; i < fast.values.size(); ++i) EXPECT_LT(std::abs(fast.values[i] - slow.values[i]), 1e-9);
  const LMatrix again = l_coeffs_all(G, 3);
  EXPECT_EQ(again.values, fast.values);
}

TEST(LCoeffs, SumOverAllCharactersCountsOne) {
  // sum_chi L_n(chi) = phi * #{A monic, deg n < deg Q, A = 1 mod Q}
  const CharGroup G = group(3, "1+2*t+t^3");
  const LMatrix L = l_coeffs_all(G);
  for (int n = 0; n < G.degree(); ++n) {
    cd s = 0.0;
    for (std::uint64_t j = 0; j < G.phi(); ++j) s += L.at(j, n);
    EXPECT_NEAR(std::abs(s - cd(n == 0 ? static_cast<double>(G.phi()) : 0.0)), 0.0, 1e-9);
  }
}

TEST(LCoeffs, EvenCharactersVanishAtOne) {
  const CharGroup G = group(3, "1+2*t+t^3");
  for (std::uint64_t j = 2; j < G.phi(); j += 2) {
    const LSeriesData s = l_coeffs(G, Character(G, j));
    cd sum = 0.0;
    for (const cd& x : s.L) sum += x;
    EXPECT_NEAR(std::abs(sum), 0.0, 1e-12) << j;
    EXPECT_NEAR(std::abs(s.M.back()), std::abs(s.L.back()) * 3.0, 1e-9);
  }
}

TEST(Derivatives, MatchFiniteDifferences) {
  const CharGroup G = group(5, "1+t+t^3");
  const double h = 1e-3;
  for (std::uint64_t j : {1u, 4u, 17u, 60u}) {
    const LSeriesData s = l_coeffs(G, Character(G, j));
    EXPECT_LT(rel(l_derivative_half(s, 0), l_at(s, 0.5)), 1e-14);
    const cd d1 = (-l_at(s, 0.5 + 2 * h) + 8.0 * l_at(s, 0.5 + h) - 8.0 * l_at(s, 0.5 - h) + l_at(s, 0.5 - 2 * h)) /
                  (12 * h);
    EXPECT_LT(rel(l_derivative_half(s, 1), d1), 1e-8);
    const cd d2 = (-l_at(s, 0.5 + 2 * h) + 16.0 * l_at(s, 0.5 + h) - 30.0 * l_at(s, 0.5) +
                   16.0 * l_at(s, 0.5 - h) - l_at(s, 0.5 - 2 * h)) /
                  (12 * h * h);
    EXPECT_LT(rel(l_derivative_half(s, 2), d2), 1e-5);
  }
  EXPECT_THROW(l_derivative_half(l_coeffs(G, Character(G, 1)), -1), std::invalid_argument);
}

TEST(Derivatives, CompletedFunctionByFiniteDifference) {
  const CharGroup G = group(3, "1+2*t+t^3");
  const LSeriesData s = l_coeffs(G, Character(G, 4));
  const double q = 3.0;
  auto lhat = [&](double sv) { return (std::pow(q, 1 - sv) - 1.0) * l_at(s, sv); };
  const double h = 1e-3;
  const cd d1 = (-lhat(0.5 + 2 * h) + 8.0 * lhat(0.5 + h) - 8.0 * lhat(0.5 - h) + lhat(0.5 - 2 * h)) / (12 * h);
  EXPECT_LT(rel(lhat_derivative_half(s, 1), d1), 1e-8);
  EXPECT_THROW(lhat_derivative_half(l_coeffs(G, Character(G, 1)), 0), std::domain_error);
}

TEST(FunctionalEquation, AllCharactersSmallGroups) {
  for (auto [p, Q] : {std::pair{2u, "1+t+t^4"}, std::pair{3u, "1+t^2"}, std::pair{3u, "2+t+t^4"},
                      std::pair{5u, "1+t+t^3"}}) {
    const CharGroup G = group(p, Q);
    const LMatrix L = l_coeffs_all(G);
    for (std::uint64_t j = 1; j < G.phi(); ++j) {
      const LSeriesData s = L.series(G, j);
      const FunctionalEquationReport r = verify_functional_equation(s);
      EXPECT_TRUE(r.passed) << Q << " j=" << j;
      EXPECT_NEAR(std::abs(r.W), 1.0, 1e-9);
      EXPECT_LT(r.max_residual, 1e-8 * std::pow(p, G.degree() / 2.0));
      // W(conj chi) = conj W(chi)
      const cd wc = root_number(L.series(G, G.phi() - j));
      EXPECT_NEAR(std::abs(wc - std::conj(r.W)), 0.0, 1e-9);
    }
    EXPECT_THROW(root_number_info(L.series(G, 0)), std::domain_error);
  }
}

TEST(Reconstruction, LFromLhatMatchesDirect) {
  const CharGroup G = group(3, "2+t+t^4");
  for (std::uint64_t j = 2; j < G.phi(); j += 2) {
    const LSeriesData s = l_coeffs(G, Character(G, j));
    for (int k = 0; k <= 4; ++k) EXPECT_LT(rel(l_from_lhat(s, k), l_derivative_half(s, k)), 1e-8) << j << " " << k;
  }
  EXPECT_THROW(l_from_lhat(l_coeffs(G, Character(G, 1)), 1), std::domain_error);
}

TEST(Reconstruction, PValuesMatchPolynomials) {
  for (int k = 0; k <= 5; ++k) {
    for (int i = 0; i <= k; ++i) {
      const double v = 2.7;
      EXPECT_NEAR(p_value(k, i, v), p_poly(k, i).eval(v), 1e-9 * std::max(1.0, std::abs(p_value(k, i, v))));
    }
  }
  EXPECT_EQ(p_value(3, 3, 5.0), 1.0);
  EXPECT_DOUBLE_EQ(p_value(1, 0, 2.0), -2.0);
}

// Truncated series for the trivial character converges to (1 - |Q|^-s) zeta.
TEST(TrivialCharacter, EulerFactorRemoved) {
  const CharGroup G = group(2, "1+t+t^2");
  const TrivialLDiagnostic d = trivial_l_diagnostic(G, 2.0, 16);
  EXPECT_NEAR(d.direct, d.euler_factor_removed, 1e-4);
  EXPECT_GT(std::abs(d.direct - d.euler_factor_inverted), 0.1);
  EXPECT_THROW(trivial_l_diagnostic(G, 2.0, 30), std::exception);
}
