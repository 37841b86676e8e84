#ifndef FQM_BIGRATIONAL_HPP
#define FQM_BIGRATIONAL_HPP

#include <gmpxx.h>

#include <string>

namespace fqm {

// gmpxx operators keep results canonical; the two-argument constructor does
// not, so values built that way are canonicalized before printing.
using BigInt = mpz_class;
using BigRational = mpq_class;

/// "num/den", also for integers ("3/1").
inline std::string to_fraction_string(BigRational r) {
  r.canonicalize();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline double to_double(const BigRational& r) { return r.get_d(); }

inline BigInt factorial(unsigned n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

inline BigInt binomial(unsigned n, unsigned k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline BigInt ipow(const BigInt& base, unsigned exp) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

inline BigRational rpow(const BigRational& base, unsigned exp) {
  BigRational r(ipow(base.get_num(), exp), ipow(base.get_den(), exp));
  r.canonicalize();
  return r;
}

}  // namespace fqm

#endif  // FQM_BIGRATIONAL_HPP
