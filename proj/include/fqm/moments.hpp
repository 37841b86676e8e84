#ifndef FQM_MOMENTS_HPP
#define FQM_MOMENTS_HPP

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fqm/characters.hpp"
#include "fqm/lseries.hpp"
#include "fqm/momentcalc.hpp"
#include "fqm/sqrtq.hpp"

namespace fqm {

struct WeightedPowerSum {
  SqrtQNumber exact;   // sum_{n < degQ} n^k q^(n/2), 0^0 = 1
  double main_term;    // degQ^k q^(degQ/2) / (sqrt q - 1)
  double ratio;
};

/// Throws std::invalid_argument for k < 0 or degQ < 1.
WeightedPowerSum weighted_power_sum(std::uint64_t q, int degQ, int k);

/// Exact diagonal / off-diagonal / remainder split of the fourth-moment
/// character average with the odd-reduction weights.
struct FourthPieces {
  SqrtQNumber diagonal;
  SqrtQNumber offdiagonal;
  SqrtQNumber remainder;
  double combined = 0.0;  // diagonal + offdiagonal - remainder
  cd direct;              // character average computed from L coefficients
  double relative_error = 0.0;
  bool passed = false;
};

struct MomentReport {
  std::string kind;  // "first", "second", "fourth"
  std::uint64_t q = 0;
  int degQ = 0;
  std::string Q;
  int k = 0;
  std::optional<int> l;
  cd computed;
  /// Exact part of the oracle; the oracle value is oracle_factor * oracle_exact.
  std::optional<SqrtQNumber> oracle_exact;
  double oracle_factor = 1.0;
  std::optional<double> oracle;
  std::optional<double> relative_error;
  double predicted = 0.0;
  double ratio = 0.0;
  std::optional<cd> odd_part;
  std::optional<cd> even_part;
  std::optional<FourthPieces> pieces;
  bool passed = true;
  double seconds = 0.0;
};

inline constexpr double kIdentityTolerance = 1e-8;

/// Average of L^(k)(1/2, chi) over chi != chi_0. Throws for k < 1.
MomentReport first_moment(const CharGroup& group, const LMatrix& L, int k, unsigned workers = 0);
MomentReport first_moment(const CharGroup& group, int k, unsigned workers = 0);

/// Average of |L^(k)(1/2, chi)|^2. Throws for k < 0.
MomentReport second_moment(const CharGroup& group, const LMatrix& L, int k, unsigned workers = 0);
MomentReport second_moment(const CharGroup& group, int k, unsigned workers = 0);

/// Average of |L^(k)|^2 |L^(l)|^2 with the odd and even parts reported.
/// decompose adds the exact three-piece split (enumeration guard applies).
MomentReport fourth_moment(const CharGroup& group, const LMatrix& L, int k, int l, bool decompose = false,
                           unsigned workers = 0);
MomentReport fourth_moment(const CharGroup& group, int k, int l, bool decompose = false, unsigned workers = 0);

/// (1 - 1/q) degQ^(2k+2l+4) (log q)^(2k+2l) fourth_main_coefficient(k, l).
double fourth_predicted(std::uint64_t q, int degQ, int k, int l);

/// Tuple enumerations are refused when q^(2(degQ-1)) degQ^2 exceeds this.
inline constexpr double kMaxTuples = 1e7;
/// Throws ResourceError when the guard is exceeded.
void check_tuple_guard(std::uint64_t q, int degQ);

/// Integer weight of the odd reduction at deg A = i, deg B = j:
/// f_k + g_{O,k}, plus h_{O,k} on the shell i + j = D - 1.
BigInt reduction_weight(int k, int i, int j, int D);

/// S_k(chi) = sum_{i+j < D} reduction_weight(k,i,j,D) L_i conj(L_j) q^(-(i+j)/2),
/// which equals (log q)^(-2k) |L^(k)(1/2, chi)|^2 for odd chi.
cd reduced_sum(const LSeriesData& data, int k);

/// (1/phi) sum_{chi != chi_0} S_k(chi) S_l(chi).
cd reduced_fourth_average(const CharGroup& group, const LMatrix& L, int k, int l);

/**
 * Counts of monic 4-tuples (A, B, C, D) with deg A + deg B < D and
 * deg C + deg D < D, split by the four degrees, that satisfy AC = BD
 * (diagonal) or AC = BD mod Q (congruent, a superset).
 */
struct TupleCounts {
  int degree = 0;
  std::vector<std::uint64_t> congruent;
  std::vector<std::uint64_t> diagonal;

  std::size_t index(int a, int b, int c, int d) const;
  std::uint64_t congruent_at(int a, int b, int c, int d) const { return congruent[index(a, b, c, d)]; }
  std::uint64_t diagonal_at(int a, int b, int c, int d) const { return diagonal[index(a, b, c, d)]; }
};

TupleCounts count_fourth_tuples(const CharGroup& group);

FourthPieces decompose_fourth(const CharGroup& group, const LMatrix& L, int k, int l);
FourthPieces decompose_fourth(const CharGroup& group, int k, int l, unsigned workers = 0);

/// #{(A, B, C, D) : deg AB = z1, deg CD = z2, AC = BD mod Q, AC != BD}.
std::uint64_t offdiagonal_count(const CharGroup& group, int z1, int z2);

/// Weight in (deg A, deg B, deg C, deg D, deg Q).
inline constexpr int kTupleVars = 5;
/// f_k(deg A, deg B, deg Q) * f_l(deg C, deg D, deg Q).
RatPoly tuple_weight(int k, int l);

struct DiagonalOracle {
  SqrtQNumber enumeration;
  SqrtQNumber lattice;
  bool equal = false;
};

/// Sum over AC = BD, deg AB < degQ, deg CD < degQ of p / |ABCD|^(1/2), by
/// enumeration and by the lattice-point formula.
DiagonalOracle diagonal_sum_oracle(std::uint64_t q, int degQ, const RatPoly& p);

struct CoprimeCount {
  std::uint64_t brute = 0;
  std::uint64_t formula = 0;
};

/// #{(R, S) monic coprime, deg R = r, deg S = s}. Needs q^(r+s) <= 1e6.
CoprimeCount coprime_pair_count(std::uint64_t q, int r, int s);

struct ReductionReport {
  double lhs = 0.0;
  cd rhs;
  double mass = 0.0;  // sum of absolute values of the rhs terms
  double abs_error = 0.0;
  double relative_error = 0.0;
  bool passed = false;
};

/// include_shell = false drops the h_{O,k} shell (negative control).
/// Throws std::domain_error for even chi.
ReductionReport verify_odd_reduction(const LSeriesData& data, int k, bool include_shell = true);

enum class EvenMode { MSelection, Fgh };

/// Throws std::domain_error for odd or trivial chi.
ReductionReport verify_even_reduction(const LSeriesData& data, int k, EvenMode mode, bool include_shells = true);

}  // namespace fqm

#endif  // FQM_MOMENTS_HPP
