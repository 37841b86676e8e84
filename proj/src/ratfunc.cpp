#include "fqm/ratfunc.hpp"

#include <sstream>
#include <stdexcept>

namespace fqm {

UPoly::UPoly(const BigRational& c) : c_{c} { trim(); }

UPoly::UPoly(std::vector<BigRational> coeffs) : c_(std::move(coeffs)) { trim(); }

UPoly UPoly::variable() { return UPoly(std::vector<BigRational>{BigRational(0), BigRational(1)}); }

void UPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

BigRational UPoly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return BigRational(0);
  return c_[static_cast<std::size_t>(i)];
}

const BigRational& UPoly::leading() const {
  if (c_.empty()) throw std::domain_error("zero polynomial has no leading coefficient");
  return c_.back();
}

double UPoly::eval(double u) const {
  double r = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * u + it->get_d();
  return r;
}

BigRational UPoly::eval(const BigRational& u) const {
  BigRational r(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * u + *it;
  return r;
}

std::string UPoly::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    if (!first) os << " + ";
    os << "(" << c_[i].get_str() << ")";
    if (i > 0) os << "*" << var;
    if (i > 1) os << "^" << i;
    first = false;
  }
  return os.str();
}

UPoly& UPoly::operator+=(const UPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), BigRational(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

UPoly& UPoly::operator-=(const UPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), BigRational(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return UPoly();
  std::vector<BigRational> r(a.c_.size() + b.c_.size() - 1, BigRational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  }
  return UPoly(std::move(r));
}

UPoly UPoly::operator-() const {
  UPoly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

UPolyDivMod divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<BigRational> rem = a.coeffs();
  const int db = b.degree();
  const int da = a.degree();
  if (da < db) return {UPoly(), a};
  std::vector<BigRational> quo(static_cast<std::size_t>(da - db + 1), BigRational(0));
  const BigRational lead = b.leading();
  for (int k = da; k >= db; --k) {
    const BigRational c = rem[static_cast<std::size_t>(k)] / lead;
    quo[static_cast<std::size_t>(k - db)] = c;
    if (c == 0) continue;
    for (int i = 0; i <= db; ++i) rem[static_cast<std::size_t>(k - db + i)] -= c * b.coeff(i);
  }
  return {UPoly(std::move(quo)), UPoly(std::move(rem))};
}

UPoly gcd(const UPoly& a, const UPoly& b) {
  UPoly x = a;
  UPoly y = b;
  while (!y.is_zero()) {
    UPoly r = divmod(x, y).remainder;
    x = std::move(y);
    y = std::move(r);
  }
  if (x.is_zero()) return x;
  const BigRational inv = 1 / x.leading();
  return x * UPoly(inv);
}

RatFunc::RatFunc(const UPoly& num, const UPoly& den) : num_(num), den_(den) {
  if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
  normalize();
}

void RatFunc::normalize() {
  if (num_.is_zero()) {
    den_ = UPoly(BigRational(1));
    return;
  }
  const UPoly g = gcd(num_, den_);
  if (g.degree() > 0) {
    num_ = divmod(num_, g).quotient;
    den_ = divmod(den_, g).quotient;
  }
  const BigRational lead = den_.leading();
  if (lead != 1) {
    const UPoly inv(1 / lead);
    num_ = num_ * inv;
    den_ = den_ * inv;
  }
}

std::string RatFunc::to_string(const std::string& var) const {
  if (is_polynomial()) return num_.to_string(var);
  return "[" + num_.to_string(var) + "] / [" + den_.to_string(var) + "]";
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
  }
  normalize();
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  num_ = num_ * o.num_;
  den_ = den_ * o.den_;
  normalize();
  return *this;
}

RatFunc& RatFunc::operator/=(const RatFunc& o) {
  if (o.is_zero()) throw std::domain_error("rational function division by zero");
  num_ = num_ * o.den_;
  den_ = den_ * o.num_;
  normalize();
  return *this;
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

}  // namespace fqm
