// Acceptance run: one PASS/FAIL line per criterion, with detail lines below
// each. Exit status is nonzero when any criterion fails.

#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fqm/characters.hpp"
#include "fqm/dft.hpp"
#include "fqm/errors.hpp"
#include "fqm/lseries.hpp"
#include "fqm/momentcalc.hpp"
#include "fqm/moments.hpp"

using namespace fqm;

namespace {

// Tolerances and budgets, fixed here.
constexpr double kIdentityRel = 1e-8;
constexpr double kOrthoResidual = 1e-10;  // times phi
constexpr double kRootNumberTol = 1e-9;
constexpr double kFeResidual = 1e-8;  // times q^(degQ/2)
constexpr double kReconstructRel = 1e-8;
constexpr double kBluesteinTol = 1e-9;
constexpr double kVolumeRel = 5e-5;  // 4 significant digits
constexpr double kFirstBand[2] = {0.5, 1.5};
constexpr double kSecondWithin = 0.35;
constexpr double kFourthWithin = 0.45;
constexpr double kOrthoSeconds = 5.0;
constexpr double kDecompSeconds = 60.0;
constexpr double kFourthTrendSeconds = 120.0;
constexpr double kMatrixSeconds = 10.0;
constexpr std::uint64_t kPrimeSeed = 20240611;

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Criterion {
  int id;
  std::string name;
  bool passed = true;
  std::vector<std::string> lines;

  void check(bool ok, const std::string& what) {
    passed = passed && ok;
    lines.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
  void note(const std::string& what) { lines.push_back("     " + what); }
};

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

CharGroup group_of(std::uint32_t p, const char* Q) {
  const FieldDesc F = FieldDesc::make(p, 1);
  return CharGroup::build(F, parse_poly(F, Q));
}

CharGroup group_of(std::uint32_t p, int degQ) {
  const FieldDesc F = FieldDesc::make(p, 1);
  return CharGroup::build(F, random_prime(F, degQ, kPrimeSeed));
}

std::string modulus_text(const CharGroup& G) { return format_poly(G.field(), G.modulus()); }

double rel(cd a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// sum_{n < d} n^k q^(n/2), 0^0 = 1, in long double
long double power_sum(double q, int d, int k) {
  long double s = 0;
  for (int n = 0; n < d; ++n) s += std::pow(static_cast<long double>(n), k) * std::pow(static_cast<long double>(q), n / 2.0L);
  return s;
}

// |x_i - 1| strictly decreasing along the list
bool approaches_one(const std::vector<double>& r) {
  for (std::size_t i = 1; i < r.size(); ++i) {
    if (!(std::abs(r[i] - 1.0) < std::abs(r[i - 1] - 1.0))) return false;
  }
  return true;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (double x : v) s += (s.empty() ? "" : ", ") + fmt("%.4f", x);
  return s;
}

void orthogonality(Criterion& c) {
  const auto t0 = Clock::now();
  const std::vector<std::pair<std::uint32_t, int>> cases{{2, 3}, {3, 2}, {3, 3}, {5, 2}};
  for (auto [p, d] : cases) {
    const CharGroup G = group_of(p, d);
    for (auto [fam, name] : {std::pair{SumFamily::Units, "units"}, std::pair{SumFamily::Characters, "characters"},
                             std::pair{SumFamily::ConjugatePair, "conjugate-pair"},
                             std::pair{SumFamily::OddScalars, "odd-scalars"},
                             std::pair{SumFamily::EvenCharacters, "even-characters"}}) {
      const OrthogonalitySummary s = verify_orthogonality(G, fam);
      const double bound = kOrthoResidual * static_cast<double>(G.phi());
      // over F_2 there are no odd characters, so that family is empty
      const bool empty_ok = p == 2 && fam == SumFamily::OddScalars;
      c.check(s.failures == 0 && s.max_residual < bound && (s.checks > 0 || empty_ok),
              fmt("q=%u Q=%s %s: %llu sums, %llu failures, residual %.2e", p, modulus_text(G).c_str(), name,
                  static_cast<unsigned long long>(s.checks), static_cast<unsigned long long>(s.failures),
                  s.max_residual));
    }
  }
  const double secs = since(t0);
  c.check(secs < kOrthoSeconds, fmt("runtime %.2f s (budget %.0f s)", secs, kOrthoSeconds));
}

void first_moment_identity(Criterion& c) {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    std::vector<CharGroup> groups;
    std::vector<LMatrix> mats;
    for (int d = 1; d <= 5; ++d) {
      groups.push_back(group_of(p, d));
      mats.push_back(l_coeffs_all(groups.back()));
    }
    for (int k = 1; k <= 3; ++k) {
      std::vector<double> ratios;
      for (int d = 1; d <= 5; ++d) {
        const CharGroup& G = groups[static_cast<std::size_t>(d - 1)];
        const double q = p;
        const MomentReport r = first_moment(G, mats[static_cast<std::size_t>(d - 1)], k);
        const double oracle = static_cast<double>(-std::pow(-std::log(q), k) / static_cast<double>(G.phi()) *
                                                  power_sum(q, d, k));
        const double err = std::abs(r.computed - oracle) / std::max(std::abs(oracle), 1e-300);
        const bool ok = oracle == 0.0 ? std::abs(r.computed) < 1e-12 : err <= kIdentityRel;
        c.check(ok, fmt("q=%u degQ=%d k=%d: computed %.10e oracle %.10e rel %.1e", p, d, k, r.computed.real(),
                        oracle, oracle == 0.0 ? 0.0 : err));
        if (d >= 3) ratios.push_back(r.ratio);
      }
      const double at5 = ratios.back();
      c.check(at5 >= kFirstBand[0] && at5 <= kFirstBand[1],
              fmt("q=%u k=%d ratio at degQ=5 is %.4f (band [%.1f, %.1f])", p, k, at5, kFirstBand[0], kFirstBand[1]));
      c.check(approaches_one(ratios), fmt("q=%u k=%d ratio over degQ 3,4,5: %s (toward 1)", p, k, join(ratios).c_str()));
    }
  }
}

void second_moment_identity(Criterion& c) {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (int d = 1; d <= 5; ++d) {
      const CharGroup G = group_of(p, d);
      const LMatrix L = l_coeffs_all(G);
      const double q = p;
      const double phi = static_cast<double>(G.phi());
      for (int k = 0; k <= 3; ++k) {
        const MomentReport r = second_moment(G, L, k);
        long double diag = 0;
        for (int n = 0; n < d; ++n) diag += std::pow(static_cast<long double>(n), 2 * k);
        const long double S = power_sum(q, d, k);
        const double oracle = static_cast<double>(std::pow(std::log(q), 2 * k) * (diag - S * S / phi));
        c.check(rel(r.computed, oracle) <= kIdentityRel || std::abs(r.computed - oracle) < 1e-12,
                fmt("q=%u degQ=%d k=%d: computed %.10e oracle %.10e rel %.1e", p, d, k, r.computed.real(), oracle,
                    rel(r.computed, oracle)));
      }
    }
  }
  for (int k = 0; k <= 1; ++k) {
    std::vector<double> ratios;
    for (int d : {4, 6, 8}) {
      const CharGroup G = group_of(3, d);
      ratios.push_back(second_moment(G, k).ratio);
    }
    c.check(approaches_one(ratios), fmt("q=3 k=%d ratio over degQ 4,6,8: %s (toward 1)", k, join(ratios).c_str()));
    c.check(std::abs(ratios.back() - 1.0) <= kSecondWithin,
            fmt("q=3 k=%d ratio at degQ=8 is %.4f (within %.0f%%)", k, ratios.back(), 100 * kSecondWithin));
  }
}

void fourth_decomposition(Criterion& c) {
  for (auto [p, Q] : {std::pair{2u, "1+t+t^3"}, std::pair{3u, "1+2*t+t^3"}}) {
    const CharGroup G = group_of(p, Q);
    for (int k = 0; k <= 1; ++k) {
      const auto t0 = Clock::now();
      const FourthPieces f = decompose_fourth(G, k, k);
      const double secs = since(t0);
      const double err = rel(f.direct, f.combined);
      c.check(err <= kIdentityRel && secs < kDecompSeconds,
              fmt("q=%u Q=%s k=l=%d: diag %.8f + off %.8f - rem %.8f = %.10e, direct %.10e, rel %.1e, %.2f s", p,
                  modulus_text(G).c_str(), k, f.diagonal.to_double(), f.offdiagonal.to_double(),
                  f.remainder.to_double(), f.combined, f.direct.real(), err, secs));
    }
  }
}

void diagonal_two_path(Criterion& c) {
  for (std::uint64_t q : {2u, 3u}) {
    for (int d = 1; d <= 4; ++d) {
      for (int k = 0; k <= 2; ++k) {
        for (int l = 0; l <= 2; ++l) {
          const DiagonalOracle o = diagonal_sum_oracle(q, d, tuple_weight(k, l));
          c.check(o.equal && o.enumeration == o.lattice,
                  fmt("q=%llu degQ=%d k=%d l=%d: %s", static_cast<unsigned long long>(q), d, k, l,
                      o.enumeration.to_string().c_str()));
        }
      }
    }
  }
  const DiagonalOracle w = diagonal_sum_oracle(2, 2, RatPoly::constant(kTupleVars, BigRational(1)));
  c.check(w.equal && w.enumeration == SqrtQNumber(2, 3),
          fmt("worked value q=2 degQ=2 weight 1: enumeration %s, lattice %s (expect 3)",
              w.enumeration.to_string().c_str(), w.lattice.to_string().c_str()));
}

void reductions(Criterion& c) {
  {
    const CharGroup G = group_of(3, "1+t^2");
    const LMatrix L = l_coeffs_all(G);
    for (std::uint64_t j = 1; j < G.phi(); ++j) {
      const LSeriesData s = L.series(G, j);
      for (int k = 0; k <= 2; ++k) {
        if (s.chi.is_even()) {
          for (auto [mode, name] : {std::pair{EvenMode::MSelection, "M-selection"}, std::pair{EvenMode::Fgh, "fgh"}}) {
            const ReductionReport r = verify_even_reduction(s, k, mode);
            c.check(r.passed, fmt("q=3 Q=1+t^2 j=%llu even %s k=%d: rel %.1e", static_cast<unsigned long long>(j),
                                  name, k, r.relative_error));
          }
        } else {
          const ReductionReport r = verify_odd_reduction(s, k);
          c.check(r.passed && r.relative_error <= kIdentityRel,
                  fmt("q=3 Q=1+t^2 j=%llu odd k=%d: rel %.1e", static_cast<unsigned long long>(j), k,
                      r.relative_error));
        }
      }
    }
  }
  const CharGroup G = group_of(2, "1+t+t^3");
  const LMatrix L = l_coeffs_all(G);
  for (std::uint64_t j = 1; j < G.phi(); ++j) {
    const LSeriesData s = L.series(G, j);
    for (int k = 0; k <= 2; ++k) {
      for (auto [mode, name] : {std::pair{EvenMode::MSelection, "M-selection"}, std::pair{EvenMode::Fgh, "fgh"}}) {
        const ReductionReport r = verify_even_reduction(s, k, mode);
        c.check(r.passed, fmt("q=2 Q=1+t+t^3 j=%llu even %s k=%d: rel %.1e", static_cast<unsigned long long>(j), name,
                              k, r.relative_error));
      }
    }
  }
}

void functional_equations(Criterion& c) {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (int d = 1; d <= 4; ++d) {
      const CharGroup G = group_of(p, d);
      if (G.phi() < 2) {
        c.note(fmt("q=%u degQ=%d: no nontrivial characters", p, d));
        continue;
      }
      const LMatrix L = l_coeffs_all(G);
      double worst_w = 0.0;
      double worst_res = 0.0;
      double worst_rec = 0.0;
      bool ok = true;
      std::uint64_t even = 0;
      for (std::uint64_t j = 1; j < G.phi(); ++j) {
        const LSeriesData s = L.series(G, j);
        const FunctionalEquationReport fe = verify_functional_equation(s);
        worst_w = std::max(worst_w, std::abs(std::abs(fe.W) - 1.0));
        worst_res = std::max(worst_res, fe.max_residual);
        if (s.chi.is_even()) {
          ++even;
          for (int k = 0; k <= 4; ++k) {
            const cd direct = l_derivative_half(s, k);
            const cd rebuilt = l_from_lhat(s, k);
            // derivatives that vanish identically are compared absolutely
            const double e = std::abs(rebuilt - direct) / std::max(std::abs(direct), 1e-12);
            worst_rec = std::max(worst_rec, e);
          }
        }
      }
      const double bound = kFeResidual * std::pow(static_cast<double>(p), d / 2.0);
      ok = worst_w <= kRootNumberTol && worst_res < bound && worst_rec <= kReconstructRel;
      c.check(ok, fmt("q=%u Q=%s: max ||W|-1| %.1e, max FE residual %.1e (bound %.1e), reconstruction k<=4 over %llu "
                      "even chi rel %.1e",
                      p, modulus_text(G).c_str(), worst_w, worst_res, bound, static_cast<unsigned long long>(even),
                      worst_rec));
    }
  }
}

void exact_constants(Criterion& c) {
  const BigRational c00 = fourth_main_coefficient(0, 0);
  c.check(c00 == BigRational(1, 12), "fourth_main_coefficient(0,0) = " + to_fraction_string(c00) + " (expect 1/12)");
  const BigRational d1 = d_constant(1);
  const BigRational b2(61, 2 * 2 * 2 * 2 * 2 * 3 * 3 * 5 * 7);
  c.check(d1 == b2, "d_constant(1) = " + to_fraction_string(d1) + " (expect 61/10080)");
  const BigRational vol = monomial_integral(0, 0, 0, 0);
  c.check(vol == BigRational(1, 48), "region volume exact = " + to_fraction_string(vol));

  // Conditional Monte Carlo: for fixed (a3, a4) with s = a3 + a4 < 1 the
  // admissible (a1, a2) form a square of side (1 - s)/2, so only (a3, a4)
  // is sampled, one jittered point per cell of an n x n grid.
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int n = 1000;
  long double acc = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double a3 = (i + u(rng)) / n;
      const double a4 = (j + u(rng)) / n;
      const double s = a3 + a4;
      if (s < 1.0) acc += 0.25 * (1.0 - s) * (1.0 - s);
    }
  }
  const double cmc = static_cast<double>(acc / (static_cast<long double>(n) * n));
  const double exact = 1.0 / 48.0;
  c.check(std::abs(cmc - exact) / exact < kVolumeRel,
          fmt("volume by conditional stratified Monte Carlo (1e6 points): %.8f vs %.8f, rel %.1e", cmc, exact,
              std::abs(cmc - exact) / exact));

  // Plain hit-or-miss on [0,1/2]^2 x [0,1]^2, checked against its own error bar.
  const std::size_t m = 1'000'000;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const double a1 = 0.5 * u(rng), a2 = 0.5 * u(rng), a3 = u(rng), a4 = u(rng);
    if (2 * a1 + a3 + a4 < 1 && 2 * a2 + a3 + a4 < 1) ++hits;
  }
  const double frac = static_cast<double>(hits) / static_cast<double>(m);
  const double plain = 0.25 * frac;
  const double sigma = 0.25 * std::sqrt(frac * (1 - frac) / static_cast<double>(m));
  c.check(std::abs(plain - exact) <= 3 * sigma,
          fmt("volume by plain Monte Carlo (1e6 points): %.6f +- %.6f, within 3 sigma", plain, sigma));
}

void dm_behavior(Criterion& c) {
  const std::vector<DmRow> rows = dm_asymptotic_table(8);
  for (const DmRow& r : rows) {
    c.note(fmt("m=%d D_m=%s m^4 D_m=%.8f |m^4 D_m - 1/16|=%.8f", r.m, to_fraction_string(r.dm).c_str(),
               to_double(r.m4_dm), to_double(r.distance)));
  }
  for (int m = 3; m <= 8; ++m) {
    c.check(rows[static_cast<std::size_t>(m)].distance < rows[static_cast<std::size_t>(m - 1)].distance,
            fmt("distance at m=%d below m=%d", m, m - 1));
  }
  for (const DmRow& r : rows) {
    c.check(r.cross <= r.cross_bound, fmt("m=%d cross term %s <= 4^-m/48 = %s", r.m,
                                          to_fraction_string(r.cross).c_str(),
                                          to_fraction_string(r.cross_bound).c_str()));
  }
}

void fourth_trend(Criterion& c) {
  const auto t0 = Clock::now();
  std::vector<double> ratios;
  for (int d : {3, 4, 5}) {
    const CharGroup G = group_of(5, d);
    const MomentReport r = fourth_moment(G, 0, 0);
    ratios.push_back(r.ratio);
    c.note(fmt("q=5 Q=%s: computed %.6f predicted %.6f ratio %.4f", modulus_text(G).c_str(), r.computed.real(),
               r.predicted, r.ratio));
  }
  const double secs = since(t0);
  c.check(approaches_one(ratios), "ratio over degQ 3,4,5: " + join(ratios) + " (toward 1)");
  c.check(std::abs(ratios.back() - 1.0) <= kFourthWithin,
          fmt("ratio at degQ=5 is %.4f (within %.0f%%)", ratios.back(), 100 * kFourthWithin));
  c.check(secs < kFourthTrendSeconds, fmt("runtime %.2f s (budget %.0f s)", secs, kFourthTrendSeconds));
}

void performance(Criterion& c) {
  {
    const CharGroup G = group_of(3, 8);
    const auto t0 = Clock::now();
    const LMatrix L = l_coeffs_all(G);
    const double secs = since(t0);
    c.check(secs < kMatrixSeconds && L.values.size() == G.phi() * 8,
            fmt("q=3 degQ=8 phi=%llu: full matrix in %.2f s (budget %.0f s)",
                static_cast<unsigned long long>(G.phi()), secs, kMatrixSeconds));
  }
  const std::vector<std::pair<std::uint32_t, int>> cases{{2, 12}, {3, 7}, {5, 5}, {7, 4}};
  for (auto [p, d] : cases) {
    const CharGroup G = group_of(p, d);
    const LMatrix fast = l_coeffs_all(G);
    const LMatrix slow = l_coeffs_all_naive(G);
    double worst = 0.0;
    for (std::size_t i = 0; i < fast.values.size(); ++i) worst = std::max(worst, std::abs(fast.values[i] - slow.values[i]));
    c.check(worst <= kBluesteinTol, fmt("q=%u degQ=%d phi=%llu: max entrywise |fast - naive| %.1e", p, d,
                                        static_cast<unsigned long long>(G.phi()), worst));
  }
  // per-character sums straight over the monic polynomials, every character
  const CharGroup G = group_of(3, 6);
  const LMatrix fast = l_coeffs_all(G);
  double worst = 0.0;
  for (std::uint64_t j = 0; j < G.phi(); ++j) {
    const LSeriesData s = l_coeffs_naive(G, Character(G, j));
    for (int n = 0; n < G.degree(); ++n) worst = std::max(worst, std::abs(fast.at(j, n) - s.L[static_cast<std::size_t>(n)]));
  }
  c.check(worst <= kBluesteinTol, fmt("q=3 degQ=6 phi=%llu: max |fast - polynomial sums| %.1e",
                                      static_cast<unsigned long long>(G.phi()), worst));
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Criterion&)>>> plan{
      {"orthogonality relations", orthogonality},
      {"first moment identity and main-term trend", first_moment_identity},
      {"second moment identity and main-term trend", second_moment_identity},
      {"fourth moment three-piece decomposition", fourth_decomposition},
      {"diagonal sum, enumeration vs lattice formula", diagonal_two_path},
      {"odd and even reduction identities", reductions},
      {"functional equations, root numbers, reconstruction", functional_equations},
      {"exact constants and region volume", exact_constants},
      {"D_m table behavior", dm_behavior},
      {"fourth moment main-term trend (q=5)", fourth_trend},
      {"coefficient matrix performance and accuracy", performance},
  };
  int failed = 0;
  for (std::size_t i = 0; i < plan.size(); ++i) {
    Criterion c{static_cast<int>(i + 1), plan[i].first, true, {}};
    const auto t0 = Clock::now();
    try {
      plan[i].second(c);
    } catch (const std::exception& e) {
      c.check(false, std::string("exception: ") + e.what());
    }
    const double secs = since(t0);
    std::printf("[%s] %2d %s (%.2f s)\n", c.passed ? "PASS" : "FAIL", c.id, c.name.c_str(), secs);
    for (const std::string& line : c.lines) std::printf("       %s\n", line.c_str());
    std::fflush(stdout);
    if (!c.passed) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(plan.size()) - failed, plan.size());
  return failed == 0 ? 0 : 1;
}
