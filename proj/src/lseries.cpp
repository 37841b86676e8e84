#include "fqm/lseries.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "fqm/dft.hpp"
#include "fqm/errors.hpp"
#include "fqm/parallel.hpp"
#include "fqm/summation.hpp"

namespace fqm {

namespace {

double qd(const CharGroup& g) { return static_cast<double>(g.field().q()); }

std::uint64_t upow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

void require_k(int k) {
  if (k < 0) throw std::invalid_argument("derivative order must be non-negative");
}

}  // namespace

LSeriesData make_lseries(const Character& chi, std::vector<cd> L) {
  const int d = chi.group().degree();
  if (L.size() != static_cast<std::size_t>(d)) throw std::invalid_argument("coefficient vector must have length deg Q");
  const double q = qd(chi.group());
  std::vector<cd> M(static_cast<std::size_t>(d) + 1);
  for (int n = 0; n <= d; ++n) {
    const cd cur = n < d ? L[static_cast<std::size_t>(n)] : cd{};
    const cd prev = n > 0 ? L[static_cast<std::size_t>(n - 1)] : cd{};
    M[static_cast<std::size_t>(n)] = cur - q * prev;
  }
  return LSeriesData{chi, std::move(L), std::move(M)};
}

std::vector<std::uint64_t> dlog_histogram(const CharGroup& group, int n) {
  if (n < 0 || n >= group.degree()) {
    throw std::invalid_argument("histogram degree must lie in [0, deg Q)");
  }
  std::vector<std::uint64_t> hist(group.phi(), 0);
  // monic polynomials of degree n have codes q^n .. 2 q^n - 1
  const std::uint64_t lo = upow(group.field().q(), n);
  for (std::uint64_t code = lo; code < 2 * lo; ++code) ++hist[group.dlog_of_code(code)];
  return hist;
}

LSeriesData l_coeffs(const CharGroup& group, const Character& chi) {
  const int d = group.degree();
  std::vector<cd> L(static_cast<std::size_t>(d));
  for (int n = 0; n < d; ++n) {
    const auto hist = dlog_histogram(group, n);
    CompensatedComplexSum s;
    for (std::uint64_t a = 0; a < hist.size(); ++a) {
      if (hist[a] != 0) s.add(static_cast<double>(hist[a]) * group.root(chi.index() * a));
    }
    L[static_cast<std::size_t>(n)] = s.value();
  }
  return make_lseries(chi, std::move(L));
}

LSeriesData l_coeffs_naive(const CharGroup& group, const Character& chi) {
  const int d = group.degree();
  std::vector<cd> L(static_cast<std::size_t>(d));
  for (int n = 0; n < d; ++n) {
    CompensatedComplexSum s;
    for (const PolyFq& A : enumerate_monic(group.field(), n)) s.add(char_eval(chi, A));
    L[static_cast<std::size_t>(n)] = s.value();
  }
  return make_lseries(chi, std::move(L));
}

std::vector<cd> LMatrix::row(std::uint64_t j) const {
  const auto begin = values.begin() + static_cast<std::ptrdiff_t>(j * static_cast<std::uint64_t>(degree));
  return std::vector<cd>(begin, begin + degree);
}

LSeriesData LMatrix::series(const CharGroup& group, std::uint64_t j) const {
  return make_lseries(Character(group, j), row(j));
}

namespace {

LMatrix empty_matrix(const CharGroup& group) {
  LMatrix m;
  m.phi = group.phi();
  m.degree = group.degree();
  const std::uint64_t entries = m.phi * static_cast<std::uint64_t>(m.degree);
  if (entries > kMaxMatrixEntries) {
    throw ResourceError("coefficient matrix would hold " + std::to_string(entries) + " entries (cap " +
                        std::to_string(kMaxMatrixEntries) + ")");
  }
  m.values.assign(entries, cd{});
  return m;
}

std::vector<cd> histogram_signal(const CharGroup& group, int n) {
  const auto hist = dlog_histogram(group, n);
  return std::vector<cd>(hist.begin(), hist.end());
}

}  // namespace

LMatrix l_coeffs_all(const CharGroup& group, unsigned workers) {
  LMatrix m = empty_matrix(group);
  const BluesteinPlan plan(group.phi());
  const auto d = static_cast<std::uint64_t>(m.degree);
  parallel_for(d, workers, [&](std::size_t n) {
    const std::vector<cd> col = plan.transform(histogram_signal(group, static_cast<int>(n)));
    for (std::uint64_t j = 0; j < m.phi; ++j) m.values[j * d + n] = col[j];
  });
  return m;
}

LMatrix l_coeffs_all_naive(const CharGroup& group) {
  LMatrix m = empty_matrix(group);
  const auto d = static_cast<std::uint64_t>(m.degree);
  for (std::uint64_t n = 0; n < d; ++n) {
    const std::vector<cd> col = dft_naive(histogram_signal(group, static_cast<int>(n)));
    for (std::uint64_t j = 0; j < m.phi; ++j) m.values[j * d + n] = col[j];
  }
  return m;
}

cd l_derivative_half(const LSeriesData& data, int k) {
  require_k(k);
  const double q = qd(data.group());
  const double sqrt_q = std::sqrt(q);
  CompensatedComplexSum s;
  double inv_pow = 1.0;  // q^(-n/2)
  for (std::size_t n = 0; n < data.L.size(); ++n) {
    // std::pow(0.0, 0) is 1, which is the convention needed for k = 0
    s.add(std::pow(static_cast<double>(n), k) * inv_pow * data.L[n]);
    inv_pow /= sqrt_q;
  }
  return std::pow(-std::log(q), k) * s.value();
}

cd lhat_derivative_half(const LSeriesData& data, int k) {
  require_k(k);
  if (data.chi.is_trivial() || !data.chi.is_even()) {
    throw std::domain_error("the completed L-function is defined here for even non-trivial characters");
  }
  const double q = qd(data.group());
  const double sqrt_q = std::sqrt(q);
  const double mlog = -std::log(q);
  // d^i/ds^i q^(1-s) = (-log q)^i q^(1-s)
  cd acc = (sqrt_q - 1.0) * l_derivative_half(data, k);
  double binom = 1.0;
  for (int i = 1; i <= k; ++i) {
    binom = binom * (k - i + 1) / i;
    acc += sqrt_q * binom * std::pow(mlog, i) * l_derivative_half(data, k - i);
  }
  return acc;
}

RootNumberInfo root_number_info(const LSeriesData& data) {
  if (data.chi.is_trivial()) throw std::domain_error("root number is defined for non-trivial characters");
  const int d = data.degree();
  const double q = qd(data.group());
  const bool even = data.chi.is_even();
  RootNumberInfo info;
  bool have = false;
  const int last = even ? d : d - 1;
  for (int n = 0; n <= last; ++n) {
    cd num;
    cd den;
    if (even) {
      num = -data.M[static_cast<std::size_t>(n)] * std::pow(q, d / 2.0 - n);
      den = std::conj(data.M[static_cast<std::size_t>(d - n)]);
    } else {
      num = data.L[static_cast<std::size_t>(n)] * std::pow(q, (d - 1) / 2.0 - n);
      den = std::conj(data.L[static_cast<std::size_t>(d - 1 - n)]);
    }
    if (std::abs(den) <= kPivotThreshold) continue;
    const cd Wn = num / den;
    ++info.admissible_pivots;
    if (!have) {
      info.W = Wn;
      info.pivot = n;
      have = true;
    } else {
      info.max_pivot_spread = std::max(info.max_pivot_spread, std::abs(Wn - info.W));
    }
  }
  if (!have) throw InternalError("no admissible pivot for the root number");
  return info;
}

FunctionalEquationReport verify_functional_equation(const LSeriesData& data) {
  const RootNumberInfo info = root_number_info(data);
  const int d = data.degree();
  const double q = qd(data.group());
  FunctionalEquationReport rep;
  rep.W = info.W;
  rep.tolerance = 1e-8 * std::pow(q, d / 2.0);
  if (data.chi.is_even()) {
    for (int n = 0; n <= d; ++n) {
      const cd r = data.M[static_cast<std::size_t>(n)] +
                   info.W * std::pow(q, n - d / 2.0) * std::conj(data.M[static_cast<std::size_t>(d - n)]);
      rep.max_residual = std::max(rep.max_residual, std::abs(r));
    }
  } else {
    for (int n = 0; n < d; ++n) {
      const cd r = data.L[static_cast<std::size_t>(n)] -
                   info.W * std::pow(q, n - (d - 1) / 2.0) * std::conj(data.L[static_cast<std::size_t>(d - 1 - n)]);
      rep.max_residual = std::max(rep.max_residual, std::abs(r));
    }
  }
  rep.passed = rep.max_residual < rep.tolerance;
  return rep;
}

cd root_number(const LSeriesData& data) {
  const FunctionalEquationReport rep = verify_functional_equation(data);
  if (!rep.passed) {
    throw InternalError("functional equation residual " + std::to_string(rep.max_residual) +
                        " exceeds tolerance " + std::to_string(rep.tolerance));
  }
  return rep.W;
}

double p_value(int k, int i, double v) {
  if (k < 0 || i < 0 || i > k) throw std::invalid_argument("p_value needs 0 <= i <= k");
  // table[j] = p_{j,i} for j = i..k
  std::vector<double> table(static_cast<std::size_t>(k) + 1, 0.0);
  table[static_cast<std::size_t>(i)] = 1.0;
  for (int kk = i + 1; kk <= k; ++kk) {
    double s = 0.0;
    double binom = 1.0;  // C(kk, j), starting from j = 0
    for (int j = 0; j < kk; ++j) {
      if (j >= i) s += binom * table[static_cast<std::size_t>(j)];
      binom = binom * (kk - j) / (j + 1);
    }
    table[static_cast<std::size_t>(kk)] = -v * s;
  }
  return table[static_cast<std::size_t>(k)];
}

cd l_from_lhat(const LSeriesData& data, int k) {
  require_k(k);
  if (!data.chi.is_even()) throw std::domain_error("reconstruction from L-hat needs an even character");
  const double q = qd(data.group());
  const double sqrt_q = std::sqrt(q);
  const double v = sqrt_q / (sqrt_q - 1.0);
  const double mlog = -std::log(q);
  cd acc;
  for (int i = 0; i <= k; ++i) {
    acc += std::pow(mlog, k - i) * p_value(k, i, v) * lhat_derivative_half(data, i);
  }
  return acc / (sqrt_q - 1.0);
}

TrivialLDiagnostic trivial_l_diagnostic(const CharGroup& group, double s, int max_degree) {
  if (max_degree < 0) throw std::invalid_argument("max_degree must be non-negative");
  const FieldDesc& F = group.field();
  const double q = qd(group);
  if (std::pow(q, max_degree) > 1e6) throw ResourceError("trivial-character diagnostic limited to q^N <= 1e6");
  CompensatedSum direct;
  for (int n = 0; n <= max_degree; ++n) {
    std::uint64_t coprime = 0;
    for (const PolyFq& A : enumerate_monic(F, n)) {
      if (group.residue_code(A) != 0) ++coprime;
    }
    direct.add(static_cast<double>(coprime) * std::pow(q, -s * n));
  }
  TrivialLDiagnostic out;
  out.direct = direct.value();
  const double zeta = zeta_closed_form(F.q(), s);
  const double qs = std::pow(q, -s * group.degree());
  out.euler_factor_removed = (1.0 - qs) * zeta;
  out.euler_factor_inverted = (1.0 + qs) * zeta;
  return out;
}

}  // namespace fqm
