#include "fqm/ffpoly.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

#include "fqm/errors.hpp"

namespace fqm {

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

namespace {

std::uint64_t checked_pow(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (r > UINT64_MAX / base) throw ResourceError("integer power overflows 64 bits");
    r *= base;
  }
  return r;
}

// Multiplies residues of F_p[x]/(m) given as digit vectors of length e.
std::vector<std::uint32_t> mul_mod_fp(const std::vector<std::uint32_t>& a,
                                      const std::vector<std::uint32_t>& b,
                                      const std::vector<std::uint32_t>& m, std::uint32_t p) {
  const std::size_t e = m.size() - 1;
  std::vector<std::uint64_t> prod(2 * e, 0);
  for (std::size_t i = 0; i < e; ++i) {
    for (std::size_t j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{a[i]} * b[j]) % p;
  }
  // m is monic: x^e = -(m_0 + ... + m_{e-1} x^{e-1})
  for (std::size_t d = 2 * e - 1; d >= e; --d) {
    const std::uint64_t c = prod[d];
    if (c != 0) {
      prod[d] = 0;
      for (std::size_t i = 0; i < e; ++i) {
        prod[d - e + i] = (prod[d - e + i] + (p - c) * m[i]) % p;
      }
    }
    if (d == e) break;
  }
  return std::vector<std::uint32_t>(prod.begin(), prod.begin() + static_cast<std::ptrdiff_t>(e));
}

}  // namespace

FieldDesc FieldDesc::make(std::uint32_t p, int e) {
  if (!is_prime_u64(p)) throw std::invalid_argument("p not prime: " + std::to_string(p));
  if (e < 1) throw std::invalid_argument("extension degree must be >= 1");
  if (p > 65521) throw ResourceError("characteristic too large for 32-bit element arithmetic");

  FieldDesc F;
  F.p_ = p;
  F.e_ = e;
  if (e == 1) {
    F.q_ = p;
    return F;
  }

  const std::uint64_t q = checked_pow(p, e);
  if (q > kMaxExtensionOrder) {
    throw ResourceError("extension field order " + std::to_string(q) + " exceeds table cap " +
                        std::to_string(kMaxExtensionOrder));
  }
  F.q_ = static_cast<std::uint32_t>(q);

  const FieldDesc base = make(p, 1);
  for (const PolyFq& cand : enumerate_monic(base, e)) {
    if (is_irreducible(base, cand)) {
      F.modulus_.assign(cand.coeffs().begin(), cand.coeffs().end());
      break;
    }
  }
  if (F.modulus_.empty()) throw InternalError("no irreducible modulus found");

  auto digits = [&](Elem a) {
    std::vector<std::uint32_t> d(static_cast<std::size_t>(e));
    for (int i = 0; i < e; ++i) {
      d[static_cast<std::size_t>(i)] = a % p;
      a /= p;
    }
    return d;
  };
  auto undigits = [&](const std::vector<std::uint32_t>& d) {
    Elem a = 0;
    for (int i = e - 1; i >= 0; --i) a = a * p + d[static_cast<std::size_t>(i)];
    return a;
  };

  const std::size_t qq = F.q_;
  F.add_table_.resize(qq * qq);
  F.mul_table_.resize(qq * qq);
  F.inv_table_.assign(qq, 0);
  std::vector<std::vector<std::uint32_t>> all(qq);
  for (Elem a = 0; a < F.q_; ++a) all[a] = digits(a);
  for (Elem a = 0; a < F.q_; ++a) {
    for (Elem b = 0; b < F.q_; ++b) {
      std::vector<std::uint32_t> s(static_cast<std::size_t>(e));
      for (int i = 0; i < e; ++i) {
        s[static_cast<std::size_t>(i)] = (all[a][static_cast<std::size_t>(i)] + all[b][static_cast<std::size_t>(i)]) % p;
      }
      F.add_table_[a * qq + b] = undigits(s);
      const Elem prod = undigits(mul_mod_fp(all[a], all[b], F.modulus_, p));
      F.mul_table_[a * qq + b] = prod;
      if (prod == 1) F.inv_table_[a] = b;
    }
  }
  return F;
}

FieldDesc FieldDesc::from_order(std::uint64_t q) {
  if (q < 2) throw std::invalid_argument("field order must be a prime power >= 2");
  std::uint64_t p = 0;
  for (std::uint64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) p = q;
  int e = 0;
  std::uint64_t r = q;
  while (r % p == 0) {
    r /= p;
    ++e;
  }
  if (r != 1) throw std::invalid_argument("field order " + std::to_string(q) + " is not a prime power");
  return make(static_cast<std::uint32_t>(p), e);
}

Elem FieldDesc::add(Elem a, Elem b) const {
  if (e_ == 1) {
    const Elem s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  return add_table_[std::size_t{a} * q_ + b];
}

Elem FieldDesc::neg(Elem a) const {
  if (e_ == 1) return a == 0 ? 0 : p_ - a;
  // negate every base-p digit
  Elem r = 0, scale = 1;
  for (int i = 0; i < e_; ++i) {
    const Elem d = a % p_;
    a /= p_;
    r += (d == 0 ? 0 : p_ - d) * scale;
    scale *= p_;
  }
  return r;
}

Elem FieldDesc::sub(Elem a, Elem b) const { return add(a, neg(b)); }

Elem FieldDesc::mul(Elem a, Elem b) const {
  if (e_ == 1) return static_cast<Elem>(std::uint64_t{a} * b % p_);
  return mul_table_[std::size_t{a} * q_ + b];
}

Elem FieldDesc::inv(Elem a) const {
  if (a == 0) throw std::domain_error("inverse of zero in F_q");
  if (e_ > 1) return inv_table_[a];
  // a^(p-2)
  std::uint64_t r = 1, base = a, exp = p_ - 2;
  while (exp != 0) {
    if (exp & 1U) r = r * base % p_;
    base = base * base % p_;
    exp >>= 1U;
  }
  return static_cast<Elem>(r);
}

std::string FieldDesc::format_elem(Elem a) const {
  if (e_ == 1) return std::to_string(a);
  std::string out = "[";
  for (int i = 0; i < e_; ++i) {
    if (i > 0) out += ',';
    out += std::to_string(a % p_);
    a /= p_;
  }
  return out + "]";
}

Elem FieldDesc::parse_elem(std::string_view text) const {
  auto parse_digit = [&](std::string_view s) -> std::uint32_t {
    if (s.empty()) throw std::invalid_argument("empty field element");
    std::uint64_t v = 0;
    for (char c : s) {
      if (!std::isdigit(static_cast<unsigned char>(c))) {
        throw std::invalid_argument("bad field element digit in '" + std::string(s) + "'");
      }
      v = v * 10 + static_cast<std::uint64_t>(c - '0');
      if (v > 1'000'000'000ULL) throw std::invalid_argument("field element out of range");
    }
    if (v >= p_) throw std::invalid_argument("coefficient " + std::to_string(v) + " not reduced mod p");
    return static_cast<std::uint32_t>(v);
  };
  if (!text.empty() && text.front() == '[') {
    if (text.back() != ']') throw std::invalid_argument("unterminated extension element");
    std::string_view body = text.substr(1, text.size() - 2);
    std::vector<std::uint32_t> digits;
    while (true) {
      const auto comma = body.find(',');
      digits.push_back(parse_digit(body.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      body.remove_prefix(comma + 1);
    }
    if (digits.size() > static_cast<std::size_t>(e_)) throw std::invalid_argument("too many extension digits");
    Elem a = 0;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) a = a * p_ + *it;
    return a;
  }
  // a bare integer names an element of the prime subfield
  return parse_digit(text);
}

// ---------------------------------------------------------------------------

PolyFq::PolyFq(std::vector<Elem> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

PolyFq PolyFq::monomial(Elem c, int n) {
  if (n < 0) throw std::invalid_argument("negative monomial degree");
  std::vector<Elem> v(static_cast<std::size_t>(n) + 1, 0);
  v.back() = c;
  return PolyFq(std::move(v));
}

int PolyFq::degree() const {
  if (coeffs_.empty()) throw std::domain_error("degree of the zero polynomial is undefined");
  return static_cast<int>(coeffs_.size()) - 1;
}

std::optional<int> PolyFq::degree_if_nonzero() const noexcept {
  if (coeffs_.empty()) return std::nullopt;
  return static_cast<int>(coeffs_.size()) - 1;
}

Elem PolyFq::leading() const {
  if (coeffs_.empty()) throw std::domain_error("leading coefficient of the zero polynomial");
  return coeffs_.back();
}

PolyFq poly_add(const FieldDesc& F, const PolyFq& a, const PolyFq& b) {
  const std::size_t n = std::max(a.coeffs().size(), b.coeffs().size());
  std::vector<Elem> r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = F.add(a.coeff(i), b.coeff(i));
  return PolyFq(std::move(r));
}

PolyFq poly_sub(const FieldDesc& F, const PolyFq& a, const PolyFq& b) {
  const std::size_t n = std::max(a.coeffs().size(), b.coeffs().size());
  std::vector<Elem> r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = F.sub(a.coeff(i), b.coeff(i));
  return PolyFq(std::move(r));
}

PolyFq poly_mul(const FieldDesc& F, const PolyFq& a, const PolyFq& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const auto& x = a.coeffs();
  const auto& y = b.coeffs();
  std::vector<Elem> r(x.size() + y.size() - 1, 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(x[i], y[j]));
  }
  return PolyFq(std::move(r));
}

PolyFq poly_scale(const FieldDesc& F, const PolyFq& a, Elem c) {
  std::vector<Elem> r(a.coeffs().size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.mul(a.coeffs()[i], c);
  return PolyFq(std::move(r));
}

DivMod poly_divmod(const FieldDesc& F, const PolyFq& a, const PolyFq& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (a.is_zero() || a.degree() < b.degree()) return {PolyFq{}, a};
  const int db = b.degree();
  const Elem lead_inv = F.inv(b.leading());
  std::vector<Elem> rem = a.coeffs();
  std::vector<Elem> quot(static_cast<std::size_t>(a.degree() - db) + 1, 0);
  for (int d = a.degree(); d >= db; --d) {
    const Elem c = F.mul(rem[static_cast<std::size_t>(d)], lead_inv);
    if (c == 0) continue;
    quot[static_cast<std::size_t>(d - db)] = c;
    for (int i = 0; i <= db; ++i) {
      auto& slot = rem[static_cast<std::size_t>(d - db + i)];
      slot = F.sub(slot, F.mul(c, b.coeffs()[static_cast<std::size_t>(i)]));
    }
  }
  return {PolyFq(std::move(quot)), PolyFq(std::move(rem))};
}

PolyFq poly_mod(const FieldDesc& F, const PolyFq& a, const PolyFq& b) { return poly_divmod(F, a, b).remainder; }

PolyFq make_monic(const FieldDesc& F, const PolyFq& a) { return poly_scale(F, a, F.inv(a.leading())); }

PolyFq poly_gcd(const FieldDesc& F, const PolyFq& a, const PolyFq& b) {
  if (a.is_zero() && b.is_zero()) throw std::invalid_argument("gcd(0, 0) is undefined");
  PolyFq x = a, y = b;
  while (!y.is_zero()) {
    PolyFq r = poly_mod(F, x, y);
    x = std::move(y);
    y = std::move(r);
  }
  return make_monic(F, x);
}

PolyFq poly_powmod(const FieldDesc& F, const PolyFq& base, std::uint64_t exp, const PolyFq& m) {
  PolyFq result = poly_mod(F, PolyFq::one(), m);
  PolyFq b = poly_mod(F, base, m);
  while (exp != 0) {
    if (exp & 1U) result = poly_mod(F, poly_mul(F, result, b), m);
    exp >>= 1U;
    if (exp != 0) b = poly_mod(F, poly_mul(F, b, b), m);
  }
  return result;
}

std::uint64_t poly_norm(const FieldDesc& F, const PolyFq& a) {
  if (a.is_zero()) return 0;
  return checked_pow(F.q(), a.degree());
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

namespace {

// t^(q^k) mod f
PolyFq frobenius_power(const FieldDesc& F, int k, const PolyFq& f) {
  PolyFq r = poly_mod(F, PolyFq::monomial(1, 1), f);
  for (int i = 0; i < k; ++i) r = poly_powmod(F, r, F.q(), f);
  return r;
}

}  // namespace

bool is_irreducible(const FieldDesc& F, const PolyFq& f) {
  if (f.is_zero() || f.degree() < 1) throw std::invalid_argument("irreducibility test needs degree >= 1");
  const int n = f.degree();
  if (n == 1) return true;
  const PolyFq g = make_monic(F, f);
  const PolyFq x = PolyFq::monomial(1, 1);
  if (frobenius_power(F, n, g) != poly_mod(F, x, g)) return false;
  for (std::uint64_t r : prime_divisors(static_cast<std::uint64_t>(n))) {
    const PolyFq h = poly_sub(F, frobenius_power(F, n / static_cast<int>(r), g), x);
    if (h.is_zero()) return false;
    if (poly_gcd(F, h, g) != PolyFq::one()) return false;
  }
  return true;
}

bool is_irreducible_by_trial_division(const FieldDesc& F, const PolyFq& f) {
  if (f.is_zero() || f.degree() < 1) throw std::invalid_argument("irreducibility test needs degree >= 1");
  const int n = f.degree();
  for (int d = 1; d <= n / 2; ++d) {
    for (const PolyFq& cand : enumerate_monic(F, d)) {
      if (poly_mod(F, f, cand).is_zero()) return false;
    }
  }
  return true;
}

std::uint64_t poly_code(const FieldDesc& F, const PolyFq& a) {
  std::uint64_t code = 0;
  const auto& c = a.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    if (code > (UINT64_MAX - *it) / F.q()) throw ResourceError("polynomial code overflows 64 bits");
    code = code * F.q() + *it;
  }
  return code;
}

PolyFq poly_from_code(const FieldDesc& F, std::uint64_t code) {
  std::vector<Elem> c;
  while (code != 0) {
    c.push_back(static_cast<Elem>(code % F.q()));
    code /= F.q();
  }
  return PolyFq(std::move(c));
}

// ---------------------------------------------------------------------------

MonicPolys::iterator::iterator(const FieldDesc* field, int n, std::uint64_t index)
    : field_(field), index_(index), digits_(static_cast<std::size_t>(n) + 1, 0) {
  digits_.back() = 1;
  current_ = PolyFq(digits_);
}

MonicPolys::iterator& MonicPolys::iterator::operator++() {
  ++index_;
  // odometer over the low coefficients, least significant first
  for (std::size_t i = 0; i + 1 < digits_.size(); ++i) {
    if (++digits_[i] < field_->q()) break;
    digits_[i] = 0;
  }
  current_ = PolyFq(digits_);
  return *this;
}

MonicPolys::MonicPolys(const FieldDesc& field, int n)
    : field_(&field), n_(n), count_(checked_pow(field.q(), n)) {}

MonicPolys enumerate_monic(const FieldDesc& F, int n) {
  if (n < 0) throw std::invalid_argument("degree must be non-negative");
  return MonicPolys(F, n);
}

PolyFq random_prime(const FieldDesc& F, int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("prime degree must be >= 1");
  std::mt19937_64 rng(seed);
  const std::uint64_t q = F.q();
  // rejection sampling keeps the draw identical across standard libraries
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % q;
  auto draw = [&]() -> Elem {
    while (true) {
      const std::uint64_t v = rng();
      if (v < limit) return static_cast<Elem>(v % q);
    }
  };
  while (true) {
    std::vector<Elem> c(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i < n; ++i) c[static_cast<std::size_t>(i)] = draw();
    c.back() = 1;
    PolyFq cand(std::move(c));
    if (is_irreducible(F, cand)) return cand;
  }
}

std::uint64_t euler_phi_prime(const FieldDesc& F, const PolyFq& Q) {
  if (Q.is_zero() || !Q.is_monic() || Q.degree() < 1 || !is_irreducible(F, Q)) {
    throw std::invalid_argument("euler_phi_prime requires a monic irreducible polynomial");
  }
  return poly_norm(F, Q) - 1;
}

std::string format_poly(const FieldDesc& F, const PolyFq& a) {
  if (a.is_zero()) return "0";
  std::string out;
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    if (i > 0) out += '+';
    out += F.format_elem(a.coeffs()[i]);
    if (i == 1) out += "*t";
    if (i > 1) out += "*t^" + std::to_string(i);
  }
  return out;
}

PolyFq parse_poly(const FieldDesc& F, std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  if (s.empty()) throw std::invalid_argument("empty polynomial text");

  std::vector<std::string> terms;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '[') ++depth;
    if (c == ']') --depth;
    if (c == '+' && depth == 0) {
      terms.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  terms.push_back(cur);

  std::map<int, Elem> acc;
  for (const std::string& term : terms) {
    if (term.empty()) throw std::invalid_argument("empty term in polynomial '" + std::string(text) + "'");
    Elem coeff = 1;
    int power = 0;
    std::string_view rest = term;
    const auto tpos = rest.find('t');
    if (tpos == std::string_view::npos) {
      coeff = F.parse_elem(rest);
    } else {
      std::string_view cpart = rest.substr(0, tpos);
      std::string_view ppart = rest.substr(tpos + 1);
      if (!cpart.empty()) {
        if (cpart.back() != '*') throw std::invalid_argument("expected '*' before t in '" + term + "'");
        cpart.remove_suffix(1);
        coeff = F.parse_elem(cpart);
      }
      if (ppart.empty()) {
        power = 1;
      } else {
        if (ppart.front() != '^' || ppart.size() < 2) throw std::invalid_argument("bad exponent in '" + term + "'");
        power = 0;
        for (char c : ppart.substr(1)) {
          if (!std::isdigit(static_cast<unsigned char>(c))) throw std::invalid_argument("bad exponent in '" + term + "'");
          power = power * 10 + (c - '0');
          if (power > 4096) throw std::invalid_argument("exponent too large");
        }
      }
    }
    acc[power] = F.add(acc[power], coeff);
  }
  std::vector<Elem> c(static_cast<std::size_t>(acc.rbegin()->first) + 1, 0);
  for (const auto& [pw, v] : acc) c[static_cast<std::size_t>(pw)] = v;
  return PolyFq(std::move(c));
}

double zeta_closed_form(std::uint64_t q, double s) { return 1.0 / (1.0 - std::pow(static_cast<double>(q), 1.0 - s)); }

double zeta_euler_product(const FieldDesc& F, int max_degree, double s) {
  double prod = 1.0;
  const double q = F.q();
  for (int d = 1; d <= max_degree; ++d) {
    std::uint64_t primes = 0;
    for (const PolyFq& P : enumerate_monic(F, d)) {
      if (is_irreducible(F, P)) ++primes;
    }
    const double local = 1.0 / (1.0 - std::pow(q, -s * d));
    prod *= std::pow(local, static_cast<double>(primes));
  }
  return prod;
}

}  // namespace fqm
