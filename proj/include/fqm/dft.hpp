#ifndef FQM_DFT_HPP
#define FQM_DFT_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace fqm {

using cd = std::complex<double>;

// Both transforms use the positive sign: out[j] = sum_a in[a] exp(+2 pi i j a / N),
// which is how L_n(chi_j) is assembled from a dlog histogram.

/// O(N^2) reference transform with compensated accumulation.
std::vector<cd> dft_naive(const std::vector<cd>& in);

/**
 * Arbitrary-length DFT via Bluestein's chirp-z reduction to a power-of-two
 * cyclic convolution. The chirp and its transform are computed once per
 * length, so one plan serves many inputs.
 */
class BluesteinPlan {
 public:
  explicit BluesteinPlan(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  std::vector<cd> transform(const std::vector<cd>& in) const;

 private:
  std::size_t n_;
  std::size_t m_;
  std::vector<cd> chirp_;          // exp(+pi i k^2 / n), k < n
  std::vector<cd> kernel_fft_;     // FFT of the conjugate chirp, wrapped to length m
};

/// In-place radix-2 FFT, exp(sign * 2 pi i jk / n). n must be a power of two.
void fft_pow2(std::vector<cd>& a, int sign);

}  // namespace fqm

#endif  // FQM_DFT_HPP
