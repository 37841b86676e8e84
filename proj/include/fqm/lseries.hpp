#ifndef FQM_LSERIES_HPP
#define FQM_LSERIES_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "fqm/characters.hpp"

namespace fqm {

using cd = std::complex<double>;

/**
 * Coefficients of L(s, chi) = sum_n L_n (q^-s)^n for a character mod Q.
 * L has length deg Q (L_n vanishes from n = deg Q on); M has length
 * deg Q + 1 with M_n = L_n - q L_{n-1}.
 */
struct LSeriesData {
  Character chi;
  std::vector<cd> L;
  std::vector<cd> M;

  const CharGroup& group() const { return chi.group(); }
  int degree() const { return chi.group().degree(); }
};

/// Builds M from L. L must have length deg Q.
LSeriesData make_lseries(const Character& chi, std::vector<cd> L);

/// c[a] = #{A monic, deg A = n, dlog A = a}. Throws std::invalid_argument
/// unless 0 <= n < deg Q.
std::vector<std::uint64_t> dlog_histogram(const CharGroup& group, int n);

/// L_n = sum_a c_n[a] omega^(j a), from the dlog histograms.
LSeriesData l_coeffs(const CharGroup& group, const Character& chi);

/// L_n = sum over monic A of degree n of char_eval(chi, A). Reference path.
LSeriesData l_coeffs_naive(const CharGroup& group, const Character& chi);

/// L_n(chi_j) for all j < phi and n < deg Q, stored row-major by j.
struct LMatrix {
  std::uint64_t phi = 0;
  int degree = 0;
  std::vector<cd> values;

  cd at(std::uint64_t j, int n) const { return values[j * static_cast<std::uint64_t>(degree) + static_cast<std::uint64_t>(n)]; }
  std::vector<cd> row(std::uint64_t j) const;
  LSeriesData series(const CharGroup& group, std::uint64_t j) const;
};

inline constexpr std::uint64_t kMaxMatrixEntries = 50'000'000;

/// All characters at once: one Bluestein DFT of length phi per degree n.
/// Throws ResourceError when phi * deg Q exceeds kMaxMatrixEntries.
LMatrix l_coeffs_all(const CharGroup& group, unsigned workers = 0);

/// Same matrix from O(phi^2) direct transforms of the histograms.
LMatrix l_coeffs_all_naive(const CharGroup& group);

/// (-log q)^k sum_n n^k q^(-n/2) L_n with 0^0 = 1. Throws for k < 0.
cd l_derivative_half(const LSeriesData& data, int k);

/// k-th derivative of (q^(1-s) - 1) L(s, chi) at s = 1/2.
/// Throws std::domain_error for odd or trivial chi.
cd lhat_derivative_half(const LSeriesData& data, int k);

struct RootNumberInfo {
  cd W;
  int pivot = 0;
  /// Largest |W_n - W| over the other pivots whose denominator clears the threshold.
  double max_pivot_spread = 0.0;
  int admissible_pivots = 0;
};

inline constexpr double kPivotThreshold = 1e-8;

/// Odd chi: W = L_n q^((d-1)/2 - n) / conj(L_{d-1-n}); even chi:
/// W = -M_n q^(d/2 - n) / conj(M_{d-n}); n is the smallest index whose
/// denominator exceeds kPivotThreshold. Uses L(conj chi) = conj(L(chi)).
/// Throws std::domain_error for trivial chi.
RootNumberInfo root_number_info(const LSeriesData& data);

/// W alone. Throws InternalError when the functional equation residual
/// with this W exceeds the tolerance.
cd root_number(const LSeriesData& data);

struct FunctionalEquationReport {
  cd W;
  double max_residual = 0.0;
  double tolerance = 0.0;  // 1e-8 q^(d/2)
  bool passed = false;
};

/// Coefficientwise residual of the functional equation; W from root_number_info.
FunctionalEquationReport verify_functional_equation(const LSeriesData& data);

/// p_{k,i}(v): p_{k,k} = 1, p_{k,i} = -v sum_{j=i}^{k-1} C(k,j) p_{j,i}.
double p_value(int k, int i, double v);

/// L^(k)(1/2) rebuilt from L-hat derivatives. Throws std::domain_error for odd chi.
cd l_from_lhat(const LSeriesData& data, int k);

struct TrivialLDiagnostic {
  /// sum over monic A coprime to Q with deg A <= max_degree of |A|^-s
  double direct = 0.0;
  /// (1 - |Q|^-s) zeta_A(s)
  double euler_factor_removed = 0.0;
  /// (1 + |Q|^-s) zeta_A(s)
  double euler_factor_inverted = 0.0;
};

/// Compares the truncated series of L(s, chi_0) against the two closed forms.
/// Needs s > 1 for the truncation to approximate the closed forms.
TrivialLDiagnostic trivial_l_diagnostic(const CharGroup& group, double s, int max_degree);

}  // namespace fqm

#endif  // FQM_LSERIES_HPP
