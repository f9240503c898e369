#include "dnls/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>

namespace dnls {

const char* errc_name(errc c) {
  switch (c) {
    case errc::not_power_of_two: return "NotPowerOfTwo";
    case errc::bad_domain: return "BadDomain";
    case errc::regime_unsupported: return "RegimeUnsupported";
    case errc::tail_too_fat: return "TailTooFat";
    case errc::left_tail_not_decayed: return "LeftTailNotDecayed";
    case errc::step_breaks_regime: return "StepBreaksRegime";
    case errc::grid_mismatch: return "GridMismatch";
    case errc::non_finite: return "NonFinite";
    case errc::no_convergence: return "NoConvergence";
    case errc::regime_lost: return "RegimeLost";
    case errc::separation_too_small: return "SeparationTooSmall";
    case errc::rank_deficient: return "RankDeficient";
    case errc::io_failure: return "IoFailure";
    case errc::bad_config: return "BadConfig";
  }
  return "UnknownError";
}

double GridSpec::wavenumber(std::size_t j) const {
  const double base = M_PI / half_length;
  const auto half = n / 2;
  const double jj = (j < half) ? static_cast<double>(j)
                               : static_cast<double>(j) - static_cast<double>(n);
  return base * jj;
}

GridSpec make_grid(double half_length, std::size_t n) {
  if (!(half_length > 0.0) || !std::isfinite(half_length))
    fail(errc::bad_domain, "half_length must be positive, got " + std::to_string(half_length));
  if (n < 2 || (n & (n - 1)) != 0)
    fail(errc::not_power_of_two, "grid size must be a power of two >= 2, got " + std::to_string(n));
  return GridSpec{half_length, n};
}

Field make_field(const GridSpec& g) { return Field{g, std::vector<cd>(g.n, cd{0.0, 0.0})}; }

void require_same_grid(const Field& a, const Field& b) {
  if (!(a.grid == b.grid) || a.v.size() != b.v.size())
    fail(errc::grid_mismatch, "fields live on different grids");
}

void require_finite(const Field& f, const char* where) {
  for (const cd& z : f.v)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      fail(errc::non_finite, std::string("non-finite value in ") + where);
}

Fft::Fft(std::size_t n) : n_(n) {
  if (n < 2 || (n & (n - 1)) != 0)
    fail(errc::not_power_of_two, "fft size must be a power of two, got " + std::to_string(n));
  buf_ = static_cast<cd*>(fftw_malloc(sizeof(fftw_complex) * n));
  auto* b = reinterpret_cast<fftw_complex*>(buf_);
  // FFTW_ESTIMATE keeps plan creation deterministic (same algorithm every run).
  plan_fwd_ = fftw_plan_dft_1d(static_cast<int>(n), b, b, FFTW_FORWARD, FFTW_ESTIMATE);
  plan_bwd_ = fftw_plan_dft_1d(static_cast<int>(n), b, b, FFTW_BACKWARD, FFTW_ESTIMATE);
}

Fft::~Fft() {
  fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
  fftw_free(buf_);
}

void Fft::forward(const cd* in, cd* out) {
  std::copy(in, in + n_, buf_);
  fftw_execute(static_cast<fftw_plan>(plan_fwd_));
  std::copy(buf_, buf_ + n_, out);
}

void Fft::inverse(const cd* in, cd* out) {
  std::copy(in, in + n_, buf_);
  fftw_execute(static_cast<fftw_plan>(plan_bwd_));
  const double s = 1.0 / static_cast<double>(n_);
  for (std::size_t m = 0; m < n_; ++m) out[m] = buf_[m] * s;
}

namespace {
std::mutex g_fft_mutex;
Fft& shared_fft(std::size_t n) {
  static std::map<std::size_t, std::unique_ptr<Fft>> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, std::make_unique<Fft>(n)).first;
  return *it->second;
}
}  // namespace

std::vector<cd> spectrum(const Field& f) {
  std::vector<cd> hat(f.size());
  std::lock_guard<std::mutex> lock(g_fft_mutex);
  shared_fft(f.size()).forward(f.v.data(), hat.data());
  return hat;
}

Field from_spectrum(const GridSpec& g, const std::vector<cd>& hat) {
  if (hat.size() != g.n) fail(errc::grid_mismatch, "spectrum length does not match grid");
  Field f = make_field(g);
  std::lock_guard<std::mutex> lock(g_fft_mutex);
  shared_fft(g.n).inverse(hat.data(), f.v.data());
  return f;
}

Field spectral_derivative(const Field& f, int order) {
  if (order != 1 && order != 2) fail(errc::bad_domain, "derivative order must be 1 or 2");
  std::vector<cd> hat = spectrum(f);
  const std::size_t n = f.size();
  for (std::size_t j = 0; j < n; ++j) {
    const double k = f.grid.wavenumber(j);
    if (order == 1) {
      hat[j] *= cd{0.0, k};
      if (j == n / 2) hat[j] = 0.0;  // drop the unmatched Nyquist mode
    } else {
      hat[j] *= -k * k;
    }
  }
  return from_spectrum(f.grid, hat);
}

cd integrate(const Field& f) {
  cd s{0.0, 0.0};
  for (const cd& z : f.v) s += z;
  return s * f.grid.dx();
}

double integrate_real(const std::vector<double>& w, const GridSpec& g) {
  if (w.size() != g.n) fail(errc::grid_mismatch, "weight length does not match grid");
  double s = 0.0;
  for (double x : w) s += x;
  return s * g.dx();
}

double norm(const Field& f, NormKind kind) {
  switch (kind) {
    case NormKind::sup: {
      double m = 0.0;
      for (const cd& z : f.v) m = std::max(m, std::abs(z));
      return m;
    }
    case NormKind::l2: {
      double s = 0.0;
      for (const cd& z : f.v) s += std::norm(z);
      return std::sqrt(s * f.grid.dx());
    }
    case NormKind::h1: {
      const std::vector<cd> hat = spectrum(f);
      const std::size_t n = f.size();
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double k = f.grid.wavenumber(j);
        s += (1.0 + k * k) * std::norm(hat[j]);
      }
      return std::sqrt(s * f.grid.dx() / static_cast<double>(n));
    }
  }
  return 0.0;
}

double inner_re(const Field& a, const Field& b) {
  require_same_grid(a, b);
  double s = 0.0;
  for (std::size_t m = 0; m < a.size(); ++m)
    s += a.v[m].real() * b.v[m].real() + a.v[m].imag() * b.v[m].imag();
  return s * a.grid.dx();
}

}  // namespace dnls
