#include "fqm/sqrtq.hpp"

#include <cmath>
#include <stdexcept>

namespace fqm {

namespace {

std::uint64_t exact_isqrt(std::uint64_t q) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(q)));
  while (r * r > q) --r;
  while ((r + 1) * (r + 1) <= q) ++r;
  return r * r == q ? r : 0;
}

}  // namespace

SqrtQNumber::SqrtQNumber(std::uint64_t q, BigRational a, BigRational b)
    : q_(q), a_(std::move(a)), b_(std::move(b)) {
  if (q < 2) throw std::invalid_argument("SqrtQNumber needs q >= 2");
  root_ = exact_isqrt(q);
  normalize();
}

SqrtQNumber SqrtQNumber::sqrt_power(std::uint64_t q, long n) {
  const BigInt Q(static_cast<unsigned long>(q));
  const unsigned long half = static_cast<unsigned long>(n >= 0 ? n / 2 : (-n + 1) / 2);
  if (n >= 0) {
    const BigRational p(ipow(Q, static_cast<unsigned>(half)));
    return n % 2 == 0 ? SqrtQNumber(q, p, 0) : SqrtQNumber(q, 0, p);
  }
  // q^(-m/2): even m gives q^(-m/2); odd m gives q^(-(m+1)/2) * sqrt(q)
  BigRational p(BigInt(1), ipow(Q, static_cast<unsigned>(half)));
  p.canonicalize();
  return (-n) % 2 == 0 ? SqrtQNumber(q, p, 0) : SqrtQNumber(q, 0, p);
}

void SqrtQNumber::normalize() {
  if (root_ != 0 && b_ != 0) {
    a_ += b_ * BigRational(static_cast<unsigned long>(root_));
    b_ = 0;
  }
}

void SqrtQNumber::check_same(const SqrtQNumber& o) const {
  if (o.q_ != q_) throw std::invalid_argument("SqrtQNumber operands have different q");
}

double SqrtQNumber::to_double() const {
  return a_.get_d() + b_.get_d() * std::sqrt(static_cast<double>(q_));
}

std::string SqrtQNumber::to_string() const {
  return to_fraction_string(a_) + " + " + to_fraction_string(b_) + "*sqrt(" + std::to_string(q_) + ")";
}

SqrtQNumber& SqrtQNumber::operator+=(const SqrtQNumber& o) {
  check_same(o);
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

SqrtQNumber& SqrtQNumber::operator-=(const SqrtQNumber& o) {
  check_same(o);
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

SqrtQNumber& SqrtQNumber::operator*=(const SqrtQNumber& o) {
  check_same(o);
  const BigRational qq(static_cast<unsigned long>(q_));
  BigRational a = a_ * o.a_ + b_ * o.b_ * qq;
  BigRational b = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  normalize();
  return *this;
}

SqrtQNumber& SqrtQNumber::operator*=(const BigRational& r) {
  a_ *= r;
  b_ *= r;
  return *this;
}

bool operator==(const SqrtQNumber& x, const SqrtQNumber& y) {
  x.check_same(y);
  return x.a_ == y.a_ && x.b_ == y.b_;
}

}  // namespace fqm
