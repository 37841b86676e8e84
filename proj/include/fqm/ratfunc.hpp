#ifndef FQM_RATFUNC_HPP
#define FQM_RATFUNC_HPP

#include <string>
#include <vector>

#include "fqm/bigrational.hpp"

namespace fqm {

/// Univariate polynomial over Q, coefficients lowest first, no trailing zeros.
class UPoly {
 public:
  UPoly() = default;
  UPoly(const BigRational& c);  // NOLINT: constants convert implicitly
  explicit UPoly(std::vector<BigRational> coeffs);
  static UPoly variable();

  bool is_zero() const noexcept { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  BigRational coeff(int i) const;
  const BigRational& leading() const;
  const std::vector<BigRational>& coeffs() const noexcept { return c_; }

  double eval(double u) const;
  BigRational eval(const BigRational& u) const;
  std::string to_string(const std::string& var = "u") const;

  UPoly& operator+=(const UPoly& o);
  UPoly& operator-=(const UPoly& o);
  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  UPoly operator-() const;
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

 private:
  void trim();
  std::vector<BigRational> c_;
};

struct UPolyDivMod {
  UPoly quotient;
  UPoly remainder;
};

/// Throws std::domain_error for a zero divisor.
UPolyDivMod divmod(const UPoly& a, const UPoly& b);
/// Monic gcd; gcd(0, 0) = 0.
UPoly gcd(const UPoly& a, const UPoly& b);

/**
 * Element of Q(u): num/den with gcd(num, den) = 1 and den monic. Zero is 0/1.
 */
class RatFunc {
 public:
  RatFunc() : den_(BigRational(1)) {}
  explicit RatFunc(long c) : num_(BigRational(c)), den_(BigRational(1)) {}
  RatFunc(const BigRational& c) : num_(c), den_(BigRational(1)) {}  // NOLINT
  RatFunc(const UPoly& p) : num_(p), den_(BigRational(1)) {}  // NOLINT
  /// Throws std::domain_error for a zero denominator.
  RatFunc(const UPoly& num, const UPoly& den);

  static RatFunc variable() { return RatFunc(UPoly::variable()); }

  const UPoly& num() const noexcept { return num_; }
  const UPoly& den() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }
  /// deg num <= deg den, i.e. the value stays bounded as u grows.
  bool bounded_at_infinity() const { return num_.degree() <= den_.degree(); }

  double eval(double u) const { return num_.eval(u) / den_.eval(u); }
  std::string to_string(const std::string& var = "u") const;

  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator/=(const RatFunc& o);
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  RatFunc operator-() const;
  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

 private:
  void normalize();

  UPoly num_;
  UPoly den_;
};

}  // namespace fqm

#endif  // FQM_RATFUNC_HPP
