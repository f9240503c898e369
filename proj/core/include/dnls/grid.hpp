#pragma once
#include <complex>
#include <cstddef>
#include <vector>

#include "dnls/errors.hpp"

namespace dnls {

using cd = std::complex<double>;

// Uniform periodic grid on [-half_length, half_length) with n (power of two)
// nodes: x_m = -half_length + m*dx, dx = 2*half_length/n.
struct GridSpec {
  double half_length = 0.0;
  std::size_t n = 0;

  double dx() const { return 2.0 * half_length / static_cast<double>(n); }
  double node(std::size_t m) const { return -half_length + static_cast<double>(m) * dx(); }
  // Signed wavenumber of spectral bin j (FFT ordering): pi*j'/half_length,
  // j' = j for j < n/2, j - n otherwise.
  double wavenumber(std::size_t j) const;
  bool operator==(const GridSpec&) const = default;
};

GridSpec make_grid(double half_length, std::size_t n);

struct Field {
  GridSpec grid;
  std::vector<cd> v;

  std::size_t size() const { return v.size(); }
  cd& operator[](std::size_t m) { return v[m]; }
  const cd& operator[](std::size_t m) const { return v[m]; }
};

Field make_field(const GridSpec& g);  // zero field
void require_same_grid(const Field& a, const Field& b);
void require_finite(const Field& f, const char* where);

// Unnormalized forward / 1/n-normalized inverse DFT, FFTW ordering.
std::vector<cd> spectrum(const Field& f);
Field from_spectrum(const GridSpec& g, const std::vector<cd>& hat);

// In-place plan pair for one grid size; reuses FFTW plans across calls.
// A Stepper owns a private instance; free functions share a global cache.
class Fft {
 public:
  explicit Fft(std::size_t n);
  ~Fft();
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  std::size_t size() const { return n_; }
  void forward(const cd* in, cd* out);  // unnormalized
  void inverse(const cd* in, cd* out);  // normalized by 1/n

 private:
  std::size_t n_;
  void* plan_fwd_;
  void* plan_bwd_;
  cd* buf_;
};

// order 1 or 2; order 1 zeroes the Nyquist mode.
Field spectral_derivative(const Field& f, int order);

// Rectangle rule, exact for band-limited periodic integrands.
cd integrate(const Field& f);
double integrate_real(const std::vector<double>& w, const GridSpec& g);

enum class NormKind { l2, h1, sup };
double norm(const Field& f, NormKind kind);
double inner_re(const Field& a, const Field& b);  // Re \int a conj(b)

}  // namespace dnls
