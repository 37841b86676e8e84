#ifndef FQM_MOMENTCALC_HPP
#define FQM_MOMENTCALC_HPP

#include <array>
#include <optional>
#include <vector>

#include "fqm/bigrational.hpp"
#include "fqm/multipoly.hpp"
#include "fqm/ratfunc.hpp"

namespace fqm {

using RatPoly = MultiPoly<BigRational>;
/// Coefficients in Q(u), u standing for q^(1/2).
using RFPoly = MultiPoly<RatFunc>;

// Variable orders. Weight polynomials use (i, j, D) = (deg A, deg B, deg Q);
// f_k is written in (x, y, z) with the same positions. Region integrands use
// (a1, a2, a3, a4).
inline constexpr int kWeightVars = 3;
inline constexpr int kRegionVars = 4;

/// f_k(x, y, z) = x^k y^k + (z - x)^k (z - y)^k. Throws for k < 0.
RatPoly f_poly(int k);

struct OddWeights {
  RatPoly g;  // (D-i-1)^k (D-j-1)^k - (D-i)^k (D-j)^k
  RatPoly h;  // -(D-i-1)^k (D-j-1)^k, on the shell i + j = D - 1
};
OddWeights gh_odd(int k);

/**
 * Weights for the even-character reduction. With p(i,j) = i^k j^k +
 * (D-i)^k (D-j)^k and q = u^2, kernel = u^2 p(i+1,j+1) - u p(i,j+1)
 * - u p(i+1,j) + p(i,j), and f_k + g = kernel / (u-1)^2. The shells sit at
 * i + j = D - 2, D - 1, D (in that order) and are already divided by (u-1)^2.
 */
struct EvenWeights {
  RFPoly kernel;
  RFPoly g;
  std::array<RFPoly, 3> h;
};

/// Throws InternalError if kernel != (u-1)^2 (f_k + g) after the division.
EvenWeights gh_even(int k);

/// Lifts a rational-coefficient polynomial into Q(u) coefficients.
RFPoly to_rf(const RatPoly& p);

/// Evaluates a weight polynomial at integer degrees with u = sqrt(q).
double eval_weight(const RFPoly& p, double i, double j, double D, double u);
BigRational eval_weight(const RatPoly& p, long i, long j, long D);

/// Integral over a_i >= 0, 2a1 + a3 + a4 < 1, 2a2 + a3 + a4 < 1 of
/// a1^e1 a2^e2 a3^e3 a4^e4.
BigRational monomial_integral(int e1, int e2, int e3, int e4);

/// Throws std::invalid_argument unless P is in the four region variables.
BigRational region_integrate(const RatPoly& P);

/// f_k(a1+a3, a1+a4, 1) * f_l(a2+a4, a2+a3, 1).
RatPoly fourth_integrand(int k, int l);
BigRational fourth_main_coefficient(int k, int l);

/// D_m from its defining integrand (a separate construction from
/// fourth_main_coefficient(m, m)).
BigRational d_constant(int m);

/// Integral of (1-a1-a3)^m (1-a1-a4)^m (a2+a3)^m (a2+a4)^m over the region.
BigRational cross_term(int m);

inline constexpr int kMaxDmOrder = 16;

struct DmRow {
  int m = 0;
  BigRational dm;
  BigRational m4_dm;
  BigRational distance;     // |m^4 D_m - 1/16|
  BigRational cross;        // cross_term(m)
  BigRational cross_bound;  // 4^-m / 48
};

/// Throws ResourceError when m_max exceeds cap.
std::vector<DmRow> dm_asymptotic_table(int m_max, int cap = kMaxDmOrder);

struct ExpBoundReport {
  double lhs = 0.0;                    // (1 - x/m)^m
  double upper = 0.0;                  // e^-x
  std::optional<double> lower;         // e^-x e^(-4 / (m^(1/3) - 2 m^(-1/3))), when defined
  bool upper_holds = false;
  std::optional<bool> lower_holds;
};

/// Upper bound needs 0 <= x <= m; the lower bound is evaluated when m >= 3
/// and x <= 2 m^(1/3), and left empty otherwise. Throws std::domain_error
/// for m < 1 or x outside [0, m].
ExpBoundReport exp_bound_check(int m, double x);

struct ReferenceConstants {
  BigRational b1{1, 3};
  BigRational b2{61, 10080};
};

/// p_{k,i} as a polynomial in v with integer coefficients.
UPoly p_poly(int k, int i);

}  // namespace fqm

#endif  // FQM_MOMENTCALC_HPP
