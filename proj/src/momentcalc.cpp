#include "fqm/momentcalc.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <string>

#include "fqm/errors.hpp"

namespace fqm {

namespace {

void require_order(int k) {
  if (k < 0) throw std::invalid_argument("order must be non-negative");
}

const BigInt& cached_factorial(unsigned n) {
  static std::mutex mu;
  static std::vector<BigInt> table{BigInt(1)};
  std::lock_guard<std::mutex> lock(mu);
  while (table.size() <= n) table.push_back(table.back() * static_cast<unsigned long>(table.size()));
  return table[n];
}

template <class C>
MultiPoly<C> var(int nvars, int i) {
  return MultiPoly<C>::variable(nvars, i);
}

template <class C>
MultiPoly<C> cst(int nvars, const C& c) {
  return MultiPoly<C>::constant(nvars, c);
}

// x^k y^k + (z - x)^k (z - y)^k for polynomial arguments.
template <class C>
MultiPoly<C> f_of(const MultiPoly<C>& x, const MultiPoly<C>& y, const MultiPoly<C>& z, int k) {
  const auto uk = static_cast<unsigned>(k);
  return x.pow(uk) * y.pow(uk) + (z - x).pow(uk) * (z - y).pow(uk);
}

}  // namespace

RatPoly f_poly(int k) {
  require_order(k);
  return f_of(var<BigRational>(kWeightVars, 0), var<BigRational>(kWeightVars, 1),
              var<BigRational>(kWeightVars, 2), k);
}

OddWeights gh_odd(int k) {
  require_order(k);
  const auto uk = static_cast<unsigned>(k);
  const RatPoly i = var<BigRational>(kWeightVars, 0);
  const RatPoly j = var<BigRational>(kWeightVars, 1);
  const RatPoly D = var<BigRational>(kWeightVars, 2);
  const RatPoly one = cst<BigRational>(kWeightVars, BigRational(1));
  const RatPoly shifted = (D - i - one).pow(uk) * (D - j - one).pow(uk);
  OddWeights w;
  w.g = shifted - (D - i).pow(uk) * (D - j).pow(uk);
  w.h = RatPoly(kWeightVars) - shifted;
  return w;
}

RFPoly to_rf(const RatPoly& p) {
  return p.map_coefficients<RatFunc>([](const BigRational& c) { return RatFunc(c); });
}

EvenWeights gh_even(int k) {
  require_order(k);
  const auto uk = static_cast<unsigned>(k);
  const RFPoly i = var<RatFunc>(kWeightVars, 0);
  const RFPoly j = var<RatFunc>(kWeightVars, 1);
  const RFPoly D = var<RatFunc>(kWeightVars, 2);
  const RFPoly one = cst<RatFunc>(kWeightVars, RatFunc(1L));
  const RatFunc u = RatFunc::variable();
  const RatFunc u2 = u * u;
  const RatFunc um1 = u - RatFunc(1L);
  const RatFunc w = RatFunc(1L) / (um1 * um1);

  // p(i + di, j + dj)
  auto p_at = [&](int di, int dj) {
    const RFPoly a = di ? i + one : i;
    const RFPoly b = dj ? j + one : j;
    return a.pow(uk) * b.pow(uk) + (D - a).pow(uk) * (D - b).pow(uk);
  };
  const RFPoly p11 = p_at(1, 1);

  EvenWeights out;
  out.kernel = u2 * p11 - u * p_at(0, 1) - u * p_at(1, 0) + p_at(0, 0);
  const RFPoly f = to_rf(f_poly(k));
  const RFPoly quotient = w * out.kernel;
  if ((um1 * um1) * quotient != out.kernel) {
    throw InternalError("(u-1)^2 division of the even kernel is not exact");
  }
  out.g = quotient - f;

  const RFPoly Di1 = (D - i - one).pow(uk);
  const RFPoly Dj1 = (D - j - one).pow(uk);
  out.h[0] = (RatFunc(0L) - u2 * w) * (Di1 * Dj1);
  out.h[1] = w * (u * ((D - i).pow(uk) * Dj1 + Di1 * (D - j).pow(uk)) - u2 * p11);
  out.h[2] = w * (i.pow(uk) * j.pow(uk));
  return out;
}

double eval_weight(const RFPoly& p, double i, double j, double D, double u) {
  return p.evaluate<double>({i, j, D}, [u](const RatFunc& c) { return c.eval(u); });
}

BigRational eval_weight(const RatPoly& p, long i, long j, long D) {
  return p.evaluate<BigRational>({BigRational(i), BigRational(j), BigRational(D)},
                                 [](const BigRational& c) { return c; });
}

// Integrating a1 and a2 first over [0, (1 - s)/2) with s = a3 + a4 leaves
// (1 - s)^(e1 + e2 + 2) / ((e1+1)(e2+1) 2^(e1+e2+2)) times a3^e3 a4^e4 over
// the triangle s < 1, which is a Dirichlet integral.
BigRational monomial_integral(int e1, int e2, int e3, int e4) {
  if (e1 < 0 || e2 < 0 || e3 < 0 || e4 < 0) throw std::invalid_argument("exponents must be non-negative");
  const auto u = [](int e) { return static_cast<unsigned>(e); };
  const int s = e1 + e2 + 2;
  BigInt num = cached_factorial(u(e3)) * cached_factorial(u(e4)) * cached_factorial(u(s));
  BigInt den = BigInt(e1 + 1) * BigInt(e2 + 1) * ipow(BigInt(2), u(s)) *
               cached_factorial(u(e1 + e2 + e3 + e4 + 4));
  BigRational r(num, den);
  r.canonicalize();
  return r;
}

BigRational region_integrate(const RatPoly& P) {
  if (P.num_vars() != kRegionVars) throw std::invalid_argument("region integrand must be in a1..a4");
  BigRational acc(0);
  for (const auto& [e, c] : P.terms()) acc += c * monomial_integral(e[0], e[1], e[2], e[3]);
  return acc;
}

namespace {

struct RegionVars {
  RatPoly a1 = var<BigRational>(kRegionVars, 0);
  RatPoly a2 = var<BigRational>(kRegionVars, 1);
  RatPoly a3 = var<BigRational>(kRegionVars, 2);
  RatPoly a4 = var<BigRational>(kRegionVars, 3);
  RatPoly one = cst<BigRational>(kRegionVars, BigRational(1));
};

}  // namespace

RatPoly fourth_integrand(int k, int l) {
  require_order(k);
  require_order(l);
  const RegionVars v;
  const RatPoly fk = f_poly(k).substitute({v.a1 + v.a3, v.a1 + v.a4, v.one});
  const RatPoly fl = f_poly(l).substitute({v.a2 + v.a4, v.a2 + v.a3, v.one});
  return fk * fl;
}

BigRational fourth_main_coefficient(int k, int l) { return region_integrate(fourth_integrand(k, l)); }

BigRational d_constant(int m) {
  require_order(m);
  const auto um = static_cast<unsigned>(m);
  const RegionVars v;
  const RatPoly first = ((v.a1 + v.a3) * (v.a1 + v.a4)).pow(um) +
                        ((v.one - v.a1 - v.a3) * (v.one - v.a1 - v.a4)).pow(um);
  const RatPoly second = ((v.a2 + v.a3) * (v.a2 + v.a4)).pow(um) +
                         ((v.one - v.a2 - v.a3) * (v.one - v.a2 - v.a4)).pow(um);
  return region_integrate(first * second);
}

BigRational cross_term(int m) {
  require_order(m);
  const auto um = static_cast<unsigned>(m);
  const RegionVars v;
  const RatPoly P = ((v.one - v.a1 - v.a3) * (v.one - v.a1 - v.a4) * (v.a2 + v.a3) * (v.a2 + v.a4)).pow(um);
  return region_integrate(P);
}

std::vector<DmRow> dm_asymptotic_table(int m_max, int cap) {
  require_order(m_max);
  if (m_max > cap) {
    throw ResourceError("m_max " + std::to_string(m_max) + " exceeds the cap " + std::to_string(cap));
  }
  const BigRational sixteenth(1, 16);
  std::vector<DmRow> rows;
  for (int m = 0; m <= m_max; ++m) {
    DmRow r;
    r.m = m;
    r.dm = d_constant(m);
    r.m4_dm = r.dm * BigRational(ipow(BigInt(m), 4));
    r.distance = abs(r.m4_dm - sixteenth);
    r.cross = cross_term(m);
    BigRational bound(BigInt(1), ipow(BigInt(4), static_cast<unsigned>(m)) * 48);
    bound.canonicalize();
    r.cross_bound = bound;
    rows.push_back(std::move(r));
  }
  return rows;
}

ExpBoundReport exp_bound_check(int m, double x) {
  if (m < 1) throw std::domain_error("exp_bound_check needs m >= 1");
  if (!(x >= 0.0) || x > m) throw std::domain_error("exp_bound_check needs 0 <= x <= m");
  ExpBoundReport r;
  r.lhs = std::pow(1.0 - x / m, m);
  r.upper = std::exp(-x);
  r.upper_holds = r.lhs <= r.upper;
  const double cbrt = std::cbrt(static_cast<double>(m));
  if (m >= 3 && x <= 2.0 * cbrt) {
    r.lower = std::exp(-x) * std::exp(-4.0 / (cbrt - 2.0 / cbrt));
    r.lower_holds = *r.lower <= r.lhs;
  }
  return r;
}

UPoly p_poly(int k, int i) {
  if (k < 0 || i < 0 || i > k) throw std::invalid_argument("p_poly needs 0 <= i <= k");
  std::vector<UPoly> table(static_cast<std::size_t>(k) + 1);
  table[static_cast<std::size_t>(i)] = UPoly(BigRational(1));
  const UPoly minus_v = -UPoly::variable();
  for (int kk = i + 1; kk <= k; ++kk) {
    UPoly s;
    for (int j = i; j < kk; ++j) {
      s += UPoly(BigRational(binomial(static_cast<unsigned>(kk), static_cast<unsigned>(j)))) *
           table[static_cast<std::size_t>(j)];
    }
    table[static_cast<std::size_t>(kk)] = minus_v * s;
  }
  return table[static_cast<std::size_t>(k)];
}

}  // namespace fqm
