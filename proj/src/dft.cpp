#include "fqm/dft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fqm/summation.hpp"

namespace fqm {

namespace {

// exp(i pi k^2 / n) with k^2 reduced mod 2n in integers first.
cd chirp(std::size_t k, std::size_t n) {
  const unsigned __int128 kk = static_cast<unsigned __int128>(k) * k;
  const auto r = static_cast<std::uint64_t>(kk % (2 * static_cast<unsigned __int128>(n)));
  return std::polar(1.0, std::numbers::pi * static_cast<double>(r) / static_cast<double>(n));
}

}  // namespace

std::vector<cd> dft_naive(const std::vector<cd>& in) {
  const std::size_t n = in.size();
  std::vector<cd> roots(n);
  for (std::size_t e = 0; e < n; ++e) {
    roots[e] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(n));
  }
  std::vector<cd> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    CompensatedComplexSum s;
    std::size_t e = 0;
    for (std::size_t a = 0; a < n; ++a) {
      s.add(in[a] * roots[e]);
      e += j;
      if (e >= n) e -= n;
    }
    out[j] = s.value();
  }
  return out;
}

void fft_pow2(std::vector<cd>& a, int sign) {
  const std::size_t n = a.size();
  if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("fft_pow2 needs a power-of-two length");
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    // twiddles computed directly per level, not by repeated multiplication
    std::vector<cd> w(half);
    for (std::size_t k = 0; k < half; ++k) {
      w[k] = std::polar(1.0, sign * 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(len));
    }
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const cd u = a[i + k];
        const cd v = a[i + k + half] * w[k];
        a[i + k] = u + v;
        a[i + k + half] = u - v;
      }
    }
  }
}

BluesteinPlan::BluesteinPlan(std::size_t n) : n_(n), m_(1) {
  if (n == 0) throw std::invalid_argument("DFT length must be positive");
  while (m_ < 2 * n - 1) m_ <<= 1;
  chirp_.resize(n);
  for (std::size_t k = 0; k < n; ++k) chirp_[k] = chirp(k, n);
  kernel_fft_.assign(m_, cd{});
  kernel_fft_[0] = std::conj(chirp_[0]);
  for (std::size_t k = 1; k < n; ++k) {
    kernel_fft_[k] = std::conj(chirp_[k]);
    kernel_fft_[m_ - k] = std::conj(chirp_[k]);
  }
  fft_pow2(kernel_fft_, -1);
}

// j*a = (j^2 + a^2 - (j-a)^2) / 2 turns the transform into a convolution
// of x_a * c_a with conj(c_k), c_k = exp(i pi k^2 / n).
std::vector<cd> BluesteinPlan::transform(const std::vector<cd>& in) const {
  if (in.size() != n_) throw std::invalid_argument("input length does not match the plan");
  std::vector<cd> y(m_, cd{});
  for (std::size_t a = 0; a < n_; ++a) y[a] = in[a] * chirp_[a];
  fft_pow2(y, -1);
  for (std::size_t i = 0; i < m_; ++i) y[i] *= kernel_fft_[i];
  fft_pow2(y, +1);
  std::vector<cd> out(n_);
  const double scale = 1.0 / static_cast<double>(m_);
  for (std::size_t j = 0; j < n_; ++j) out[j] = y[j] * chirp_[j] * scale;
  return out;
}

}  // namespace fqm
