#include "fqm/characters.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fqm/errors.hpp"
#include "fqm/summation.hpp"

namespace fqm {

namespace {

constexpr std::uint32_t kUnset = UINT32_MAX;

bool has_order(const FieldDesc& F, const PolyFq& g, const PolyFq& Q, std::uint64_t phi,
               const std::vector<std::uint64_t>& primes) {
  if (g.is_zero()) return false;
  const PolyFq one = PolyFq::one();
  if (poly_powmod(F, g, phi, Q) != one) return false;
  for (std::uint64_t l : primes) {
    if (poly_powmod(F, g, phi / l, Q) == one) return false;
  }
  return true;
}

// cur <- cur * g mod Q, all as dense coefficient vectors of length d.
void mul_residue(const FieldDesc& F, std::vector<Elem>& cur, const std::vector<Elem>& g,
                 const std::vector<Elem>& Q, std::vector<Elem>& scratch) {
  const std::size_t d = cur.size();
  std::fill(scratch.begin(), scratch.end(), 0);
  for (std::size_t i = 0; i < d; ++i) {
    if (cur[i] == 0) continue;
    for (std::size_t k = 0; k < g.size(); ++k) {
      if (g[k] != 0) scratch[i + k] = F.add(scratch[i + k], F.mul(cur[i], g[k]));
    }
  }
  for (std::size_t top = scratch.size(); top-- > d;) {
    const Elem c = scratch[top];
    if (c == 0) continue;
    scratch[top] = 0;
    for (std::size_t i = 0; i < d; ++i) {
      scratch[top - d + i] = F.sub(scratch[top - d + i], F.mul(c, Q[i]));
    }
  }
  std::copy(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(d), cur.begin());
}

}  // namespace

CharGroup CharGroup::build(const FieldDesc& F, const PolyFq& Q, std::uint64_t max_phi) {
  if (Q.is_zero() || !Q.is_monic() || Q.degree() < 1 || !is_irreducible(F, Q)) {
    throw std::invalid_argument("modulus must be a monic irreducible polynomial of degree >= 1");
  }
  const int d = Q.degree();
  const std::uint64_t size = poly_norm(F, Q);
  const std::uint64_t phi = size - 1;
  if (phi > max_phi) {
    throw ResourceError("group order " + std::to_string(phi) + " exceeds the cap " + std::to_string(max_phi));
  }

  CharGroup G(F);
  G.modulus_ = Q;
  G.degree_ = d;
  G.phi_ = phi;

  const auto primes = prime_divisors(phi);
  for (std::uint64_t code = 1; code < size; ++code) {
    PolyFq g = poly_from_code(F, code);
    if (has_order(F, g, Q, phi, primes)) {
      G.generator_ = std::move(g);
      break;
    }
  }
  if (G.generator_.is_zero()) throw InternalError("no generator found for a prime modulus");

  G.dlog_.assign(size, kUnset);
  std::vector<Elem> cur(static_cast<std::size_t>(d), 0);
  cur[0] = 1;
  const std::vector<Elem>& gen = G.generator_.coeffs();
  std::vector<Elem> scratch(static_cast<std::size_t>(d) + gen.size(), 0);
  for (std::uint64_t e = 0; e < phi; ++e) {
    std::uint64_t code = 0;
    for (std::size_t i = cur.size(); i-- > 0;) code = code * F.q() + cur[i];
    if (code == 0 || G.dlog_[code] != kUnset) throw InternalError("generator powers repeat before phi");
    G.dlog_[code] = static_cast<std::uint32_t>(e);
    mul_residue(F, cur, gen, Q.coeffs(), scratch);
  }

  G.roots_.resize(phi);
  const double step = 2.0 * std::numbers::pi / static_cast<double>(phi);
  for (std::uint64_t e = 0; e < phi; ++e) {
    G.roots_[e] = std::polar(1.0, step * static_cast<double>(e));
  }
  return G;
}

std::uint64_t CharGroup::residue_code(const PolyFq& A) const {
  return poly_code(field_, poly_mod(field_, A, modulus_));
}

std::optional<std::uint32_t> CharGroup::dlog(const PolyFq& A) const {
  const std::uint64_t code = residue_code(A);
  if (code == 0) return std::nullopt;
  return dlog_[code];
}

Character::Character(const CharGroup& group, std::uint64_t j) : group_(&group), j_(j % group.phi()) {}

bool Character::is_even() const noexcept { return j_ % (group_->field().q() - 1) == 0; }

Character Character::conj() const { return Character(*group_, group_->phi() - j_); }

std::optional<std::uint64_t> char_exponent(const Character& chi, const PolyFq& A) {
  const auto a = chi.group().dlog(A);
  if (!a) return std::nullopt;
  return (chi.index() * *a) % chi.group().phi();
}

std::complex<double> char_eval(const Character& chi, const PolyFq& A) {
  const auto e = char_exponent(chi, A);
  if (!e) return {0.0, 0.0};
  return chi.group().root(*e);
}

std::optional<std::int64_t> exact_root_sum(const std::vector<std::uint64_t>& histogram) {
  const std::uint64_t phi = histogram.size();
  if (phi == 0) return 0;
  std::uint64_t total = 0;
  bool concentrated = true;
  for (std::uint64_t e = 0; e < phi; ++e) {
    total += histogram[e];
    if (e != 0 && histogram[e] != 0) concentrated = false;
  }
  if (concentrated) return static_cast<std::int64_t>(total);
  // A histogram with period s | phi, s < phi, pairs each class with a full
  // set of (phi/s)-th roots of unity. Every proper period divides some phi/l.
  for (std::uint64_t l : prime_divisors(phi)) {
    const std::uint64_t s = phi / l;
    bool periodic = true;
    for (std::uint64_t e = 0; e < phi && periodic; ++e) {
      periodic = histogram[e] == histogram[(e + s) % phi];
    }
    if (periodic) return 0;
  }
  return std::nullopt;
}

OrthogonalityResult orthogonality_sum(const CharGroup& group, const SumSelector& sel) {
  const std::uint64_t phi = group.phi();
  const std::uint64_t q = group.field().q();
  std::vector<std::uint64_t> hist(phi, 0);
  CompensatedComplexSum fsum;
  OrthogonalityResult res;

  auto add = [&](std::uint64_t exponent) {
    exponent %= phi;
    ++hist[exponent];
    fsum.add(group.root(exponent));
  };

  switch (sel.family) {
    case SumFamily::Units: {
      const std::uint64_t j = sel.j % phi;
      for (std::uint64_t code = 1; code <= phi; ++code) add(j * group.dlog_of_code(code));
      res.expected = j == 0 ? static_cast<std::int64_t>(phi) : 0;
      break;
    }
    case SumFamily::Characters: {
      const auto a = group.dlog(sel.a);
      if (a) {
        for (std::uint64_t j = 0; j < phi; ++j) add(j * *a);
      }
      res.expected = (a && *a == 0) ? static_cast<std::int64_t>(phi) : 0;
      break;
    }
    case SumFamily::ConjugatePair: {
      const auto a = group.dlog(sel.a);
      const auto b = group.dlog(sel.b);
      if (a && b) {
        const std::uint64_t diff = (*a + phi - *b) % phi;
        for (std::uint64_t j = 0; j < phi; ++j) add(j * diff);
      }
      res.expected = (a && b && *a == *b) ? static_cast<std::int64_t>(phi) : 0;
      break;
    }
    case SumFamily::OddScalars: {
      const Character chi(group, sel.j);
      if (chi.is_even()) throw std::domain_error("OddScalars needs an odd character");
      for (std::uint64_t c = 1; c < q; ++c) add(chi.index() * group.dlog_of_code(c));
      res.expected = 0;
      break;
    }
    case SumFamily::EvenCharacters: {
      const auto a = group.dlog(sel.a);
      const std::uint64_t m = group.unit_subgroup_index();
      if (a) {
        for (std::uint64_t j = 0; j < phi; j += q - 1) add(j * *a);
      }
      res.expected = (a && *a % m == 0) ? static_cast<std::int64_t>(m) : 0;
      break;
    }
  }

  res.floating = fsum.value();
  res.exact = exact_root_sum(hist);
  const double residual = std::abs(res.floating - static_cast<double>(res.expected));
  res.passed = res.exact && *res.exact == res.expected && residual < 1e-10 * static_cast<double>(phi);
  return res;
}

OrthogonalitySummary verify_orthogonality(const CharGroup& group, SumFamily family) {
  const FieldDesc& F = group.field();
  const std::uint64_t phi = group.phi();
  const std::uint64_t size = phi + 1;
  OrthogonalitySummary out;

  auto record = [&](const SumSelector& sel) {
    const OrthogonalityResult r = orthogonality_sum(group, sel);
    ++out.checks;
    if (!r.passed) ++out.failures;
    out.max_residual = std::max(out.max_residual, std::abs(r.floating - static_cast<double>(r.expected)));
  };

  SumSelector sel;
  sel.family = family;
  switch (family) {
    case SumFamily::Units:
      for (std::uint64_t j = 0; j < phi; ++j) {
        sel.j = j;
        record(sel);
      }
      break;
    case SumFamily::OddScalars:
      for (std::uint64_t j = 0; j < phi; ++j) {
        if (Character(group, j).is_even()) continue;
        sel.j = j;
        record(sel);
      }
      break;
    case SumFamily::Characters:
    case SumFamily::EvenCharacters:
      for (std::uint64_t code = 0; code < size; ++code) {
        sel.a = poly_from_code(F, code);
        record(sel);
      }
      break;
    case SumFamily::ConjugatePair:
      for (std::uint64_t ca = 0; ca < size; ++ca) {
        sel.a = poly_from_code(F, ca);
        for (std::uint64_t cb = 0; cb < size; ++cb) {
          sel.b = poly_from_code(F, cb);
          record(sel);
        }
      }
      break;
  }
  return out;
}

}  // namespace fqm
