#include "fqm/moments.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>

#include "fqm/errors.hpp"
#include "fqm/parallel.hpp"
#include "fqm/summation.hpp"

namespace fqm {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double qd(const CharGroup& g) { return static_cast<double>(g.field().q()); }

// Relative deviation with an exact zero reference handled as absolute.
double rel_dev(cd computed, double reference) {
  const double diff = std::abs(computed - reference);
  return reference == 0.0 ? diff : diff / std::abs(reference);
}

void fill_header(MomentReport& r, const CharGroup& group, const char* kind, int k) {
  r.kind = kind;
  r.q = group.field().q();
  r.degQ = group.degree();
  r.Q = format_poly(group.field(), group.modulus());
  r.k = k;
}

// vals[j] = fn(series j) for every non-trivial j, computed in parallel into
// fixed slots; slot 0 stays zero.
template <class Fn>
std::vector<cd> per_character(const CharGroup& group, const LMatrix& L, unsigned workers, Fn fn) {
  std::vector<cd> vals(group.phi());
  if (group.phi() > 1) {
    parallel_for(group.phi() - 1, workers, [&](std::size_t idx) {
      const std::uint64_t j = idx + 1;
      vals[j] = fn(L.series(group, j));
    });
  }
  return vals;
}

cd average(const std::vector<cd>& vals, std::uint64_t phi) {
  CompensatedComplexSum s;
  for (const cd& v : vals) s.add(v);
  return s.value() / static_cast<double>(phi);
}

// Tables of odd-reduction weights W[i * D + j], i + j < D.
std::vector<BigInt> weight_table(int k, int D) {
  std::vector<BigInt> t(static_cast<std::size_t>(D) * static_cast<std::size_t>(D), BigInt(0));
  for (int i = 0; i < D; ++i) {
    for (int j = 0; i + j < D; ++j) t[static_cast<std::size_t>(i * D + j)] = reduction_weight(k, i, j, D);
  }
  return t;
}

const EvenWeights& even_weights(int k) {
  static std::mutex mu;
  static std::map<int, EvenWeights> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(k);
  if (it == cache.end()) it = cache.emplace(k, gh_even(k)).first;
  return it->second;
}

struct OddPolys {
  RatPoly body;  // f_k + g_{O,k}
  RatPoly shell;
};

const OddPolys& odd_polys(int k) {
  static std::mutex mu;
  static std::map<int, OddPolys> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(k);
  if (it == cache.end()) {
    const OddWeights w = gh_odd(k);
    it = cache.emplace(k, OddPolys{f_poly(k) + w.g, w.h}).first;
  }
  return it->second;
}

std::uint64_t upow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

// Pairs (A, B) of monic polynomials with deg A + deg B < D, grouped by the
// reduced fraction (A/g, B/g), g = gcd(A, B). Counts are per degree pair,
// indexed a * D + b.
using FractionKey = std::pair<std::uint64_t, std::uint64_t>;
using FractionCounts = std::map<FractionKey, std::map<int, std::uint64_t>>;

template <class Visit>
void for_each_pair(const FieldDesc& F, int D, Visit visit) {
  for (int a = 0; a < D; ++a) {
    for (int b = 0; a + b < D; ++b) {
      for (const PolyFq& A : enumerate_monic(F, a)) {
        for (const PolyFq& B : enumerate_monic(F, b)) visit(a, b, A, B);
      }
    }
  }
}

FractionKey reduced_key(const FieldDesc& F, const PolyFq& A, const PolyFq& B) {
  const PolyFq g = poly_gcd(F, A, B);
  return {poly_code(F, poly_divmod(F, A, g).quotient), poly_code(F, poly_divmod(F, B, g).quotient)};
}

FractionCounts fraction_counts(const FieldDesc& F, int D) {
  FractionCounts out;
  for_each_pair(F, D, [&](int a, int b, const PolyFq& A, const PolyFq& B) {
    ++out[reduced_key(F, A, B)][a * D + b];
  });
  return out;
}

SqrtQNumber combine_by_total_degree(std::uint64_t q, const std::vector<BigRational>& by_z) {
  SqrtQNumber acc(q);
  for (std::size_t z = 0; z < by_z.size(); ++z) {
    if (by_z[z] != 0) acc += by_z[z] * SqrtQNumber::sqrt_power(q, -static_cast<long>(z));
  }
  return acc;
}

}  // namespace

WeightedPowerSum weighted_power_sum(std::uint64_t q, int degQ, int k) {
  if (k < 0) throw std::invalid_argument("k must be non-negative");
  if (degQ < 1) throw std::invalid_argument("degQ must be positive");
  SqrtQNumber s(q);
  for (int n = 0; n < degQ; ++n) {
    // 0^0 = 1
    const BigInt nk = ipow(BigInt(n), static_cast<unsigned>(k));
    s += BigRational(nk) * SqrtQNumber::sqrt_power(q, n);
  }
  const double sq = std::sqrt(static_cast<double>(q));
  const double main = std::pow(static_cast<double>(degQ), k) * std::pow(sq, degQ) / (sq - 1.0);
  return WeightedPowerSum{s, main, s.to_double() / main};
}

MomentReport first_moment(const CharGroup& group, const LMatrix& L, int k, unsigned workers) {
  if (k < 1) throw std::invalid_argument("first moment needs k >= 1");
  const auto t0 = Clock::now();
  MomentReport r;
  fill_header(r, group, "first", k);
  const auto vals = per_character(group, L, workers, [k](const LSeriesData& s) { return l_derivative_half(s, k); });
  r.computed = average(vals, group.phi());

  const double q = qd(group);
  const int d = group.degree();
  const BigRational inv_phi(BigInt(1), BigInt(static_cast<unsigned long>(group.phi())));
  r.oracle_exact = weighted_power_sum(group.field().q(), d, k).exact * inv_phi;
  r.oracle_factor = -std::pow(-std::log(q), k);
  r.oracle = r.oracle_factor * r.oracle_exact->to_double();
  r.relative_error = rel_dev(r.computed, *r.oracle);
  r.passed = *r.relative_error <= kIdentityTolerance;

  const double sq = std::sqrt(q);
  r.predicted = r.oracle_factor * std::pow(d, k) / ((sq - 1.0) * std::pow(sq, d));
  r.ratio = r.computed.real() / r.predicted;
  r.seconds = seconds_since(t0);
  return r;
}

MomentReport first_moment(const CharGroup& group, int k, unsigned workers) {
  return first_moment(group, l_coeffs_all(group, workers), k, workers);
}

MomentReport second_moment(const CharGroup& group, const LMatrix& L, int k, unsigned workers) {
  if (k < 0) throw std::invalid_argument("second moment needs k >= 0");
  const auto t0 = Clock::now();
  MomentReport r;
  fill_header(r, group, "second", k);
  const auto vals = per_character(group, L, workers, [k](const LSeriesData& s) {
    return cd(std::norm(l_derivative_half(s, k)), 0.0);
  });
  r.computed = average(vals, group.phi());

  const std::uint64_t qi = group.field().q();
  const double q = qd(group);
  const int d = group.degree();
  BigRational diag(0);
  for (int n = 0; n < d; ++n) diag += BigRational(ipow(BigInt(n), static_cast<unsigned>(2 * k)));
  const SqrtQNumber S = weighted_power_sum(qi, d, k).exact;
  const BigRational inv_phi(BigInt(1), BigInt(static_cast<unsigned long>(group.phi())));
  r.oracle_exact = SqrtQNumber(qi, diag) - (S * S) * inv_phi;
  r.oracle_factor = std::pow(std::log(q), 2 * k);
  r.oracle = r.oracle_factor * r.oracle_exact->to_double();
  r.relative_error = rel_dev(r.computed, *r.oracle);
  r.passed = *r.relative_error <= kIdentityTolerance;

  r.predicted = r.oracle_factor * std::pow(d, 2 * k + 1) / (2 * k + 1);
  r.ratio = r.computed.real() / r.predicted;
  r.seconds = seconds_since(t0);
  return r;
}

MomentReport second_moment(const CharGroup& group, int k, unsigned workers) {
  return second_moment(group, l_coeffs_all(group, workers), k, workers);
}

double fourth_predicted(std::uint64_t q, int degQ, int k, int l) {
  const double qq = static_cast<double>(q);
  return (1.0 - 1.0 / qq) * std::pow(degQ, 2 * k + 2 * l + 4) * std::pow(std::log(qq), 2 * k + 2 * l) *
         to_double(fourth_main_coefficient(k, l));
}

MomentReport fourth_moment(const CharGroup& group, const LMatrix& L, int k, int l, bool decompose,
                           unsigned workers) {
  if (k < 0 || l < 0) throw std::invalid_argument("fourth moment needs k, l >= 0");
  const auto t0 = Clock::now();
  MomentReport r;
  fill_header(r, group, "fourth", k);
  r.l = l;
  const auto vals = per_character(group, L, workers, [k, l](const LSeriesData& s) {
    return cd(std::norm(l_derivative_half(s, k)) * std::norm(l_derivative_half(s, l)), 0.0);
  });
  std::vector<cd> odd(vals.size());
  std::vector<cd> even(vals.size());
  for (std::uint64_t j = 1; j < vals.size(); ++j) {
    (Character(group, j).is_even() ? even : odd)[j] = vals[j];
  }
  r.computed = average(vals, group.phi());
  r.odd_part = average(odd, group.phi());
  r.even_part = average(even, group.phi());
  r.predicted = fourth_predicted(group.field().q(), group.degree(), k, l);
  r.ratio = r.computed.real() / r.predicted;
  if (decompose) {
    r.pieces = decompose_fourth(group, L, k, l);
    r.passed = r.pieces->passed;
  }
  r.seconds = seconds_since(t0);
  return r;
}

MomentReport fourth_moment(const CharGroup& group, int k, int l, bool decompose, unsigned workers) {
  return fourth_moment(group, l_coeffs_all(group, workers), k, l, decompose, workers);
}

void check_tuple_guard(std::uint64_t q, int degQ) {
  const double tuples = std::pow(static_cast<double>(q), 2.0 * (degQ - 1)) * degQ * degQ;
  if (tuples > kMaxTuples) {
    throw ResourceError("4-tuple enumeration for q=" + std::to_string(q) + ", degQ=" + std::to_string(degQ) +
                        " needs about " + std::to_string(static_cast<long long>(tuples)) +
                        " tuples; the cap is 1e7 (lower degQ)");
  }
}

BigInt reduction_weight(int k, int i, int j, int D) {
  if (i < 0 || j < 0 || i + j >= D) throw std::invalid_argument("weights are defined for i + j < D");
  const OddPolys& p = odd_polys(k);
  BigRational w = eval_weight(p.body, i, j, D);
  if (i + j == D - 1) w += eval_weight(p.shell, i, j, D);
  if (w.get_den() != 1) throw InternalError("odd-reduction weight is not an integer");
  return w.get_num();
}

cd reduced_sum(const LSeriesData& data, int k) {
  const int D = data.degree();
  const double sq = std::sqrt(static_cast<double>(data.group().field().q()));
  const std::vector<BigInt> W = weight_table(k, D);
  CompensatedComplexSum s;
  for (int i = 0; i < D; ++i) {
    for (int j = 0; i + j < D; ++j) {
      const double w = W[static_cast<std::size_t>(i * D + j)].get_d();
      s.add(w * data.L[static_cast<std::size_t>(i)] * std::conj(data.L[static_cast<std::size_t>(j)]) *
            std::pow(sq, -(i + j)));
    }
  }
  return s.value();
}

cd reduced_fourth_average(const CharGroup& group, const LMatrix& L, int k, int l) {
  const auto vals = per_character(group, L, 0, [k, l](const LSeriesData& s) {
    return reduced_sum(s, k) * reduced_sum(s, l);
  });
  return average(vals, group.phi());
}

std::size_t TupleCounts::index(int a, int b, int c, int d) const {
  const auto D = static_cast<std::size_t>(degree);
  return ((static_cast<std::size_t>(a) * D + static_cast<std::size_t>(b)) * D + static_cast<std::size_t>(c)) * D +
         static_cast<std::size_t>(d);
}

TupleCounts count_fourth_tuples(const CharGroup& group) {
  const FieldDesc& F = group.field();
  const int D = group.degree();
  check_tuple_guard(F.q(), D);
  const std::uint64_t phi = group.phi();
  const std::size_t DD = static_cast<std::size_t>(D) * static_cast<std::size_t>(D);

  TupleCounts out;
  out.degree = D;
  out.congruent.assign(DD * DD, 0);
  out.diagonal.assign(DD * DD, 0);

  // H[a * D + b][delta]: pairs with dlog A - dlog B = delta mod phi
  std::vector<std::vector<std::uint64_t>> H(DD);
  FractionCounts keys;
  for_each_pair(F, D, [&](int a, int b, const PolyFq& A, const PolyFq& B) {
    auto& h = H[static_cast<std::size_t>(a * D + b)];
    if (h.empty()) h.assign(phi, 0);
    const std::uint64_t la = group.dlog_of_code(poly_code(F, A));
    const std::uint64_t lb = group.dlog_of_code(poly_code(F, B));
    ++h[(la + phi - lb) % phi];
    ++keys[reduced_key(F, A, B)][a * D + b];
  });

  // AC = BD mod Q  <=>  dlog A - dlog B = dlog D - dlog C; the second pair is (D, C).
  for (int a = 0; a < D; ++a) {
    for (int b = 0; a + b < D; ++b) {
      const auto& h1 = H[static_cast<std::size_t>(a * D + b)];
      for (int x = 0; x < D; ++x) {
        for (int y = 0; x + y < D; ++y) {
          const auto& h2 = H[static_cast<std::size_t>(x * D + y)];
          std::uint64_t s = 0;
          for (std::uint64_t e = 0; e < phi; ++e) s += h1[e] * h2[e];
          out.congruent[out.index(a, b, y, x)] = s;
        }
      }
    }
  }
  // AC = BD  <=>  A/B = D/C as reduced fractions.
  for (const auto& [key, counts] : keys) {
    for (const auto& [ab, n1] : counts) {
      for (const auto& [xy, n2] : counts) {
        out.diagonal[out.index(ab / D, ab % D, xy % D, xy / D)] += n1 * n2;
      }
    }
  }
  return out;
}

FourthPieces decompose_fourth(const CharGroup& group, const LMatrix& L, int k, int l) {
  const std::uint64_t q = group.field().q();
  const int D = group.degree();
  const TupleCounts counts = count_fourth_tuples(group);
  const std::vector<BigInt> Wk = weight_table(k, D);
  const std::vector<BigInt> Wl = weight_table(l, D);
  auto w = [D](const std::vector<BigInt>& t, int i, int j) -> const BigInt& {
    return t[static_cast<std::size_t>(i * D + j)];
  };

  std::vector<BigRational> diag(static_cast<std::size_t>(2 * D), BigRational(0));
  std::vector<BigRational> off(static_cast<std::size_t>(2 * D), BigRational(0));
  for (int a = 0; a < D; ++a) {
    for (int b = 0; a + b < D; ++b) {
      for (int c = 0; c < D; ++c) {
        for (int d = 0; c + d < D; ++d) {
          const std::uint64_t nd = counts.diagonal_at(a, b, c, d);
          const std::uint64_t nc = counts.congruent_at(a, b, c, d);
          if (nc < nd) throw InternalError("diagonal tuples are not a subset of congruent tuples");
          if (nc == 0) continue;
          const BigInt weight = w(Wk, a, b) * w(Wl, c, d);
          const auto z = static_cast<std::size_t>(a + b + c + d);
          diag[z] += BigRational(weight * BigInt(static_cast<unsigned long>(nd)));
          off[z] += BigRational(weight * BigInt(static_cast<unsigned long>(nc - nd)));
        }
      }
    }
  }

  // Sum over all pairs of a degree pair (i, j): q^(i+j) pairs, weight q^(-(i+j)/2).
  auto full_sum = [&](const std::vector<BigInt>& W) {
    SqrtQNumber s(q);
    for (int i = 0; i < D; ++i) {
      for (int j = 0; i + j < D; ++j) s += BigRational(w(W, i, j)) * SqrtQNumber::sqrt_power(q, i + j);
    }
    return s;
  };

  FourthPieces p{combine_by_total_degree(q, diag), combine_by_total_degree(q, off), SqrtQNumber(q), 0.0, cd(), 0.0,
                 false};
  const BigRational inv_phi(BigInt(1), BigInt(static_cast<unsigned long>(group.phi())));
  p.remainder = full_sum(Wk) * full_sum(Wl) * inv_phi;
  p.combined = (p.diagonal + p.offdiagonal - p.remainder).to_double();
  p.direct = reduced_fourth_average(group, L, k, l);
  p.relative_error = rel_dev(p.direct, p.combined);
  p.passed = p.relative_error <= kIdentityTolerance;
  return p;
}

FourthPieces decompose_fourth(const CharGroup& group, int k, int l, unsigned workers) {
  return decompose_fourth(group, l_coeffs_all(group, workers), k, l);
}

std::uint64_t offdiagonal_count(const CharGroup& group, int z1, int z2) {
  const int D = group.degree();
  if (z1 < 0 || z2 < 0 || z1 >= D || z2 >= D) throw std::invalid_argument("degree sums must lie in [0, deg Q)");
  const TupleCounts counts = count_fourth_tuples(group);
  std::uint64_t total = 0;
  for (int a = 0; a <= z1; ++a) {
    for (int c = 0; c <= z2; ++c) {
      total += counts.congruent_at(a, z1 - a, c, z2 - c) - counts.diagonal_at(a, z1 - a, c, z2 - c);
    }
  }
  return total;
}

RatPoly tuple_weight(int k, int l) {
  std::vector<RatPoly> v;
  for (int i = 0; i < kTupleVars; ++i) v.push_back(RatPoly::variable(kTupleVars, i));
  return f_poly(k).substitute({v[0], v[1], v[4]}) * f_poly(l).substitute({v[2], v[3], v[4]});
}

DiagonalOracle diagonal_sum_oracle(std::uint64_t q, int degQ, const RatPoly& p) {
  if (p.num_vars() != kTupleVars) throw std::invalid_argument("weight must be in (degA, degB, degC, degD, degQ)");
  if (degQ < 1) throw std::invalid_argument("degQ must be positive");
  check_tuple_guard(q, degQ);
  const FieldDesc F = FieldDesc::from_order(q);
  const int D = degQ;
  auto pv = [&](long a, long b, long c, long d) {
    return p.evaluate<BigRational>({BigRational(a), BigRational(b), BigRational(c), BigRational(d), BigRational(D)},
                                   [](const BigRational& x) { return x; });
  };

  std::vector<BigRational> by_z(static_cast<std::size_t>(2 * D), BigRational(0));
  const FractionCounts keys = fraction_counts(F, D);
  for (const auto& [key, counts] : keys) {
    for (const auto& [ab, n1] : counts) {
      for (const auto& [xy, n2] : counts) {
        // first pair is (A, B), second is (D, C)
        const int a = ab / D, b = ab % D, dd = xy / D, c = xy % D;
        by_z[static_cast<std::size_t>(a + b + c + dd)] +=
            BigRational(BigInt(static_cast<unsigned long>(n1)) * BigInt(static_cast<unsigned long>(n2))) *
            pv(a, b, c, dd);
      }
    }
  }

  BigRational full(0);
  BigRational boundary(0);
  for (int a1 = 0; 2 * a1 < D; ++a1) {
    for (int a2 = 0; 2 * a2 < D; ++a2) {
      for (int a3 = 0; a3 < D; ++a3) {
        for (int a4 = 0; a4 < D; ++a4) {
          if (2 * a1 + a3 + a4 >= D || 2 * a2 + a3 + a4 >= D) continue;
          const BigRational v = pv(a1 + a3, a1 + a4, a2 + a4, a2 + a3);
          full += v;
          // the q^-1 correction lives on lattice points with a1 = 0 or a2 = 0
          if (a1 == 0 || a2 == 0) boundary += v;
        }
      }
    }
  }
  const BigRational inv_q(BigInt(1), BigInt(static_cast<unsigned long>(q)));
  DiagonalOracle out{combine_by_total_degree(q, by_z), SqrtQNumber(q, (1 - inv_q) * full + inv_q * boundary)};
  out.equal = out.enumeration == out.lattice;
  return out;
}

CoprimeCount coprime_pair_count(std::uint64_t q, int r, int s) {
  if (r < 0 || s < 0) throw std::invalid_argument("degrees must be non-negative");
  if (std::pow(static_cast<double>(q), r + s) > 1e6) throw ResourceError("coprime census limited to q^(r+s) <= 1e6");
  const FieldDesc F = FieldDesc::from_order(q);
  CoprimeCount out;
  for (const PolyFq& R : enumerate_monic(F, r)) {
    for (const PolyFq& S : enumerate_monic(F, s)) {
      if (poly_gcd(F, R, S) == PolyFq::one()) ++out.brute;
    }
  }
  const std::uint64_t all = upow(q, r + s);
  out.formula = (r == 0 || s == 0) ? all : all / q * (q - 1);
  return out;
}

namespace {

void finish(ReductionReport& r) {
  r.abs_error = std::abs(r.rhs - r.lhs);
  r.relative_error = r.lhs == 0.0 ? r.abs_error : r.abs_error / std::abs(r.lhs);
  // tolerance scales with the absolute mass of the sum that produced rhs
  r.passed = r.abs_error <= kIdentityTolerance * std::max(std::abs(r.lhs), r.mass);
}

}  // namespace

ReductionReport verify_odd_reduction(const LSeriesData& data, int k, bool include_shell) {
  if (data.chi.is_even()) throw std::domain_error("odd reduction needs an odd character");
  const int D = data.degree();
  const double q = qd(data.group());
  const double sq = std::sqrt(q);
  const OddPolys& p = odd_polys(k);
  ReductionReport r;
  r.lhs = std::norm(l_derivative_half(data, k)) / std::pow(std::log(q), 2 * k);
  CompensatedComplexSum s;
  CompensatedSum mass;
  for (int i = 0; i < D; ++i) {
    for (int j = 0; i + j < D; ++j) {
      BigRational w = eval_weight(p.body, i, j, D);
      if (include_shell && i + j == D - 1) w += eval_weight(p.shell, i, j, D);
      const cd term = to_double(w) * data.L[static_cast<std::size_t>(i)] *
                      std::conj(data.L[static_cast<std::size_t>(j)]) * std::pow(sq, -(i + j));
      s.add(term);
      mass.add(std::abs(term));
    }
  }
  r.rhs = s.value();
  r.mass = mass.value();
  finish(r);
  return r;
}

ReductionReport verify_even_reduction(const LSeriesData& data, int k, EvenMode mode, bool include_shells) {
  if (data.chi.is_trivial() || !data.chi.is_even()) {
    throw std::domain_error("even reduction needs an even non-trivial character");
  }
  const int D = data.degree();
  const double q = qd(data.group());
  const double sq = std::sqrt(q);
  const double logk = std::pow(std::log(q), 2 * k);
  const double lhat = std::norm(lhat_derivative_half(data, k));
  ReductionReport r;
  CompensatedComplexSum s;
  CompensatedSum mass;
  auto add = [&](double w, cd x, cd y, int n) {
    const cd term = w * x * std::conj(y) * std::pow(sq, -n);
    s.add(term);
    mass.add(std::abs(term));
  };

  if (mode == EvenMode::MSelection) {
    r.lhs = lhat / logk;
    const auto& M = data.M;
    for (int i = 0; i <= D; ++i) {
      for (int j = 0; j <= D && i + j <= D; ++j) {
        if (i + j == D && !include_shells) continue;
        add(std::pow(i, k) * std::pow(j, k), M[static_cast<std::size_t>(i)], M[static_cast<std::size_t>(j)], i + j);
        if (i + j < D) {
          add(std::pow(D - i, k) * std::pow(D - j, k), M[static_cast<std::size_t>(i)],
              M[static_cast<std::size_t>(j)], i + j);
        }
      }
    }
  } else {
    r.lhs = lhat / (logk * (sq - 1.0) * (sq - 1.0));
    const EvenWeights& w = even_weights(k);
    const RFPoly body = to_rf(f_poly(k)) + w.g;
    const auto& L = data.L;
    for (int i = 0; i < D; ++i) {
      for (int j = 0; j < D; ++j) {
        const int n = i + j;
        if (n < D) add(eval_weight(body, i, j, D, sq), L[static_cast<std::size_t>(i)], L[static_cast<std::size_t>(j)], n);
        if (include_shells && n >= D - 2 && n <= D) {
          const RFPoly& h = w.h[static_cast<std::size_t>(n - (D - 2))];
          add(eval_weight(h, i, j, D, sq), L[static_cast<std::size_t>(i)], L[static_cast<std::size_t>(j)], n);
        }
      }
    }
  }
  r.rhs = s.value();
  r.mass = mass.value();
  finish(r);
  return r;
}

}  // namespace fqm
