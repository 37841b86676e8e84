#ifndef FQM_SQRTQ_HPP
#define FQM_SQRTQ_HPP

#include <cstdint>
#include <string>

#include "fqm/bigrational.hpp"

namespace fqm {

/**
 * Exact element a + b*sqrt(q) of Q(sqrt q). When q is a perfect square the
 * value is folded into a and b stays zero, so componentwise equality is
 * value equality for every q.
 */
class SqrtQNumber {
 public:
  /// Throws std::invalid_argument for q < 2.
  explicit SqrtQNumber(std::uint64_t q, BigRational a = 0, BigRational b = 0);

  /// q^(n/2) for any integer n.
  static SqrtQNumber sqrt_power(std::uint64_t q, long n);

  std::uint64_t q() const noexcept { return q_; }
  const BigRational& a() const noexcept { return a_; }
  const BigRational& b() const noexcept { return b_; }
  bool is_rational() const { return b_ == 0; }

  double to_double() const;
  /// "a + b*sqrt(q)" with a, b as num/den.
  std::string to_string() const;

  SqrtQNumber& operator+=(const SqrtQNumber& o);
  SqrtQNumber& operator-=(const SqrtQNumber& o);
  SqrtQNumber& operator*=(const SqrtQNumber& o);
  SqrtQNumber& operator*=(const BigRational& r);

  friend SqrtQNumber operator+(SqrtQNumber x, const SqrtQNumber& y) { return x += y; }
  friend SqrtQNumber operator-(SqrtQNumber x, const SqrtQNumber& y) { return x -= y; }
  friend SqrtQNumber operator*(SqrtQNumber x, const SqrtQNumber& y) { return x *= y; }
  friend SqrtQNumber operator*(SqrtQNumber x, const BigRational& r) { return x *= r; }
  friend SqrtQNumber operator*(const BigRational& r, SqrtQNumber x) { return x *= r; }
  SqrtQNumber operator-() const { return SqrtQNumber(q_, -a_, -b_); }

  /// Requires equal q.
  friend bool operator==(const SqrtQNumber& x, const SqrtQNumber& y);

 private:
  void check_same(const SqrtQNumber& o) const;
  void normalize();

  std::uint64_t q_;
  std::uint64_t root_ = 0;  // integer sqrt when q is a square, else 0
  BigRational a_;
  BigRational b_;
};

}  // namespace fqm

#endif  // FQM_SQRTQ_HPP
