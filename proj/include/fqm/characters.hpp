#ifndef FQM_CHARACTERS_HPP
#define FQM_CHARACTERS_HPP

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "fqm/ffpoly.hpp"

namespace fqm {

/**
 * The cyclic group (F_q[t]/Q)^* for a monic irreducible Q, with a fixed
 * generator, a complete discrete-log table indexed by residue code and the
 * table of roots of unity exp(2 pi i e / phi).
 */
class CharGroup {
 public:
  static constexpr std::uint64_t kDefaultMaxPhi = 20'000'000;

  /// Throws std::invalid_argument for reducible or non-monic Q and
  /// ResourceError when phi exceeds max_phi.
  static CharGroup build(const FieldDesc& F, const PolyFq& Q,
                         std::uint64_t max_phi = kDefaultMaxPhi);

  const FieldDesc& field() const noexcept { return field_; }
  const PolyFq& modulus() const noexcept { return modulus_; }
  int degree() const noexcept { return degree_; }
  std::uint64_t phi() const noexcept { return phi_; }
  const PolyFq& generator() const noexcept { return generator_; }
  /// phi / (q - 1); the scalars F_q^* are the residues whose dlog is a multiple of it.
  std::uint64_t unit_subgroup_index() const noexcept { return phi_ / (field_.q() - 1); }

  /// Code of A mod Q, in [0, q^deg Q). Zero iff Q | A.
  std::uint64_t residue_code(const PolyFq& A) const;
  /// nullopt when Q | A.
  std::optional<std::uint32_t> dlog(const PolyFq& A) const;
  /// Direct table lookup; code must be a nonzero residue code.
  std::uint32_t dlog_of_code(std::uint64_t code) const { return dlog_[code]; }
  const std::vector<std::uint32_t>& dlog_table() const noexcept { return dlog_; }

  /// exp(2 pi i e / phi), any e.
  std::complex<double> root(std::uint64_t e) const { return roots_[e % phi_]; }
  const std::vector<std::complex<double>>& roots() const noexcept { return roots_; }

 private:
  CharGroup(const FieldDesc& F) : field_(F) {}

  FieldDesc field_;
  PolyFq modulus_;
  int degree_ = 0;
  std::uint64_t phi_ = 0;
  PolyFq generator_;
  std::vector<std::uint32_t> dlog_;
  std::vector<std::complex<double>> roots_;
};

/// chi_j(A) = omega^(j * dlog A). The group must outlive the character.
class Character {
 public:
  /// j is reduced mod phi.
  Character(const CharGroup& group, std::uint64_t j);

  const CharGroup& group() const noexcept { return *group_; }
  std::uint64_t index() const noexcept { return j_; }
  bool is_trivial() const noexcept { return j_ == 0; }
  /// Trivial on F_q^*, i.e. (q - 1) | j.
  bool is_even() const noexcept;
  Character conj() const;

 private:
  const CharGroup* group_;
  std::uint64_t j_;
};

std::complex<double> char_eval(const Character& chi, const PolyFq& A);
/// Exponent e with chi(A) = omega^e; nullopt when Q | A.
std::optional<std::uint64_t> char_exponent(const Character& chi, const PolyFq& A);
inline bool is_even(const Character& chi) { return chi.is_even(); }

/**
 * Exact value of sum_e h[e] omega^e for a histogram h of exponents mod phi,
 * when it can be decided by counting: the total when all mass sits at 0,
 * and 0 when h is periodic with a proper period dividing phi. Returns nullopt
 * otherwise.
 */
std::optional<std::int64_t> exact_root_sum(const std::vector<std::uint64_t>& histogram);

enum class SumFamily {
  Units,           // sum over residues A of chi_j(A), fixed j
  Characters,      // sum over all chi of chi(A), fixed A
  ConjugatePair,   // sum over all chi of chi(A) conj(chi(B))
  OddScalars,      // sum over a in F_q^* of chi_j(a), chi_j odd
  EvenCharacters,  // sum over even chi of chi(A)
};

struct SumSelector {
  SumFamily family = SumFamily::Units;
  std::uint64_t j = 0;
  PolyFq a;
  PolyFq b;
};

struct OrthogonalityResult {
  std::complex<double> floating;
  std::optional<std::int64_t> exact;
  /// Value predicted by the orthogonality relation.
  std::int64_t expected = 0;
  bool passed = false;
};

/// Throws std::domain_error for OddScalars with an even character.
OrthogonalityResult orthogonality_sum(const CharGroup& group, const SumSelector& sel);

struct OrthogonalitySummary {
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
  double max_residual = 0.0;  // max |floating - expected|
};

/// Runs every family over every admissible index, residue and residue pair.
/// Quadratic in phi; intended for small groups.
OrthogonalitySummary verify_orthogonality(const CharGroup& group, SumFamily family);

}  // namespace fqm

#endif  // FQM_CHARACTERS_HPP
