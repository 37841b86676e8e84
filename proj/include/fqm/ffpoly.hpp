#ifndef FQM_FFPOLY_HPP
#define FQM_FFPOLY_HPP

#include <cstdint>
#include <iterator>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fqm {

/// Element of F_q, encoded as an integer in [0, q). For q = p^e the code is
/// the base-p number whose digits are the coefficients of the residue in
/// F_p[x]/(m(x)), lowest degree first.
using Elem = std::uint32_t;

/**
 * The finite field F_q with q = p^e.
 *
 * Prime fields use modular arithmetic directly. Extension fields are
 * F_p[x]/(m(x)) where m is the first monic irreducible of degree e in the
 * deterministic enumeration order (coefficients read as base-p digits,
 * ascending), with precomputed multiplication and inverse tables.
 */
class FieldDesc {
 public:
  /// Throws std::invalid_argument when p is not prime or e < 1, and
  /// ResourceError when q exceeds the table cap for extension fields.
  static FieldDesc make(std::uint32_t p, int e);

  /// Splits a prime power q into (p, e). Throws if q is not a prime power.
  static FieldDesc from_order(std::uint64_t q);

  std::uint32_t p() const noexcept { return p_; }
  int e() const noexcept { return e_; }
  std::uint32_t q() const noexcept { return q_; }
  bool is_prime_field() const noexcept { return e_ == 1; }

  /// Coefficients of m(x) over F_p, lowest first, length e + 1. Empty when e == 1.
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  /// Throws std::domain_error for a == 0.
  Elem inv(Elem a) const;

  /// "c" for prime fields, "[a0,a1,...]" for extension fields.
  std::string format_elem(Elem a) const;
  Elem parse_elem(std::string_view text) const;

  static constexpr std::uint32_t kMaxExtensionOrder = 1024;

 private:
  FieldDesc() = default;

  std::uint32_t p_ = 0;
  int e_ = 0;
  std::uint32_t q_ = 0;
  std::vector<std::uint32_t> modulus_;
  std::vector<Elem> add_table_;
  std::vector<Elem> mul_table_;
  std::vector<Elem> inv_table_;
};

bool is_prime_u64(std::uint64_t n);
/// Distinct prime divisors, ascending. Empty for n < 2.
std::vector<std::uint64_t> prime_divisors(std::uint64_t n);

/**
 * Polynomial in F_q[t], coefficients lowest degree first with no trailing
 * zeros. The zero polynomial has no degree: degree() throws for it.
 */
class PolyFq {
 public:
  PolyFq() = default;
  explicit PolyFq(std::vector<Elem> coeffs);

  static PolyFq constant(Elem c) { return PolyFq(std::vector<Elem>{c}); }
  static PolyFq one() { return constant(1); }
  /// c * t^n
  static PolyFq monomial(Elem c, int n);

  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// Throws std::domain_error for the zero polynomial.
  int degree() const;
  std::optional<int> degree_if_nonzero() const noexcept;
  /// Throws std::domain_error for the zero polynomial.
  Elem leading() const;
  bool is_monic() const noexcept { return !coeffs_.empty() && coeffs_.back() == 1; }

  /// Coefficient of t^i, zero beyond the stored range.
  Elem coeff(std::size_t i) const noexcept { return i < coeffs_.size() ? coeffs_[i] : 0; }
  const std::vector<Elem>& coeffs() const noexcept { return coeffs_; }

  friend bool operator==(const PolyFq&, const PolyFq&) = default;

 private:
  std::vector<Elem> coeffs_;
};

PolyFq poly_add(const FieldDesc& F, const PolyFq& a, const PolyFq& b);
PolyFq poly_sub(const FieldDesc& F, const PolyFq& a, const PolyFq& b);
PolyFq poly_mul(const FieldDesc& F, const PolyFq& a, const PolyFq& b);
PolyFq poly_scale(const FieldDesc& F, const PolyFq& a, Elem c);

struct DivMod {
  PolyFq quotient;
  PolyFq remainder;
};

/// a = quotient * b + remainder, remainder zero or of smaller degree.
/// Throws std::domain_error when b is zero.
DivMod poly_divmod(const FieldDesc& F, const PolyFq& a, const PolyFq& b);
PolyFq poly_mod(const FieldDesc& F, const PolyFq& a, const PolyFq& b);

/// Monic gcd. Throws std::invalid_argument when both inputs are zero.
PolyFq poly_gcd(const FieldDesc& F, const PolyFq& a, const PolyFq& b);

/// Throws std::domain_error for zero.
PolyFq make_monic(const FieldDesc& F, const PolyFq& a);

/// base^exp mod m.
PolyFq poly_powmod(const FieldDesc& F, const PolyFq& base, std::uint64_t exp, const PolyFq& m);

/// |A| = q^deg A, |0| = 0.
std::uint64_t poly_norm(const FieldDesc& F, const PolyFq& a);

/// Rabin's test. Throws std::invalid_argument for zero or constant input.
bool is_irreducible(const FieldDesc& F, const PolyFq& f);

/// Exhaustive trial division by every monic polynomial of degree <= deg f / 2.
/// Independent of is_irreducible; exponential cost, desk scale only.
bool is_irreducible_by_trial_division(const FieldDesc& F, const PolyFq& f);

/// Integer code of a polynomial: sum of coeff_i * q^i.
std::uint64_t poly_code(const FieldDesc& F, const PolyFq& a);
PolyFq poly_from_code(const FieldDesc& F, std::uint64_t code);

/// Ascending-order stream of the q^n monic polynomials of degree n.
class MonicPolys {
 public:
  class iterator {
   public:
    using value_type = PolyFq;
    using difference_type = std::ptrdiff_t;
    using reference = const PolyFq&;
    using pointer = const PolyFq*;
    using iterator_category = std::input_iterator_tag;

    iterator() = default;
    reference operator*() const { return current_; }
    pointer operator->() const { return &current_; }
    iterator& operator++();
    iterator operator++(int) {
      iterator tmp = *this;
      ++*this;
      return tmp;
    }
    friend bool operator==(const iterator& a, const iterator& b) { return a.index_ == b.index_; }

   private:
    friend class MonicPolys;
    iterator(const FieldDesc* field, int n, std::uint64_t index);

    const FieldDesc* field_ = nullptr;
    std::uint64_t index_ = 0;
    std::vector<Elem> digits_;
    PolyFq current_;
  };

  MonicPolys(const FieldDesc& field, int n);

  iterator begin() const { return iterator(field_, n_, 0); }
  iterator end() const { return iterator(field_, n_, count_); }
  std::uint64_t size() const noexcept { return count_; }

 private:
  const FieldDesc* field_;
  int n_;
  std::uint64_t count_;
};

/// Throws std::invalid_argument for n < 0.
MonicPolys enumerate_monic(const FieldDesc& F, int n);

/// Deterministic for fixed (field, n, seed). Monic irreducible of degree n.
PolyFq random_prime(const FieldDesc& F, int n, std::uint64_t seed);

/// q^deg Q - 1. Throws std::invalid_argument unless Q is monic irreducible.
std::uint64_t euler_phi_prime(const FieldDesc& F, const PolyFq& Q);

/// Dense canonical text "c0+c1*t+c2*t^2"; "0" for the zero polynomial.
std::string format_poly(const FieldDesc& F, const PolyFq& a);

/// Accepts the canonical form and the usual shorthand ("t^2+1", "2*t", "t").
PolyFq parse_poly(const FieldDesc& F, std::string_view text);

/// zeta_A(s) = 1 / (1 - q^{1-s}), s real.
double zeta_closed_form(std::uint64_t q, double s);

/// Product over primes P with deg P <= max_degree of (1 - |P|^{-s})^{-1}.
/// Primes are counted by filtering enumerate_monic with is_irreducible.
double zeta_euler_product(const FieldDesc& F, int max_degree, double s);

}  // namespace fqm

#endif  // FQM_FFPOLY_HPP
