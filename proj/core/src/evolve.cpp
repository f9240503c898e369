#include "dnls/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace dnls {

double suggest_dt(const GridSpec& g, double umax) {
  const double kmax = M_PI * static_cast<double>(g.n) / (2.0 * g.half_length);
  const double lin = 0.5 / (kmax * kmax);
  const double nl = 0.1 / (kmax * std::max(umax * umax, 1e-6));
  return std::min(lin, nl);
}

struct Stepper::Impl {
  GridSpec g;
  double dt;
  bool dealias;
  bool linear_only;
  Fft fft;
  std::vector<cd> e1, e2;      // integrating factors exp(-i k^2 dt/2), squared
  std::vector<double> kv;      // wavenumbers (Nyquist zeroed for d/dx)
  std::vector<char> keep;      // 2/3 mask
  std::vector<cd> vhat;        // state spectrum
  std::vector<cd> k1, k2, k3, k4, tmp, w, wx, nl;

  Impl(const GridSpec& grid, double step, bool de, bool lin)
      : g(grid), dt(step), dealias(de), linear_only(lin), fft(grid.n) {
    if (!(step > 0.0) || !std::isfinite(step)) fail(errc::bad_domain, "dt must be positive");
    const std::size_t n = g.n;
    e1.resize(n);
    e2.resize(n);
    kv.resize(n);
    keep.resize(n);
    const double kcut = M_PI * static_cast<double>(n) / (2.0 * g.half_length) * (2.0 / 3.0);
    for (std::size_t j = 0; j < n; ++j) {
      const double k = g.wavenumber(j);
      e1[j] = std::polar(1.0, -k * k * dt / 2.0);
      e2[j] = e1[j] * e1[j];
      kv[j] = (j == n / 2) ? 0.0 : k;
      keep[j] = (std::abs(k) <= kcut + 1e-12) ? 1 : 0;
    }
    for (auto* v : {&vhat, &k1, &k2, &k3, &k4, &tmp, &w, &wx, &nl})
      v->assign(n, cd{0.0, 0.0});
  }

  void mask(std::vector<cd>& a) const {
    if (!dealias) return;
    for (std::size_t j = 0; j < g.n; ++j)
      if (!keep[j]) a[j] = cd{0.0, 0.0};
  }

  // out = fft(N(ifft(in))) with the 2/3 mask applied to the output.
  void nonlinear_hat(const std::vector<cd>& in, std::vector<cd>& out) {
    if (linear_only) {
      std::fill(out.begin(), out.end(), cd{0.0, 0.0});
      return;
    }
    const std::size_t n = g.n;
    fft.inverse(in.data(), w.data());
    for (std::size_t j = 0; j < n; ++j) tmp[j] = in[j] * cd{0.0, kv[j]};
    fft.inverse(tmp.data(), wx.data());
    for (std::size_t m = 0; m < n; ++m) {
      const cd u = w[m], ux = wx[m];
      const double a2 = std::norm(u);
      nl[m] = -0.5 * a2 * ux + 0.5 * u * u * std::conj(ux) +
              cd{0.0, 3.0 / 16.0} * (a2 * a2) * u;
    }
    fft.forward(nl.data(), out.data());
    mask(out);
  }

  void advance() {
    const std::size_t n = g.n;
    nonlinear_hat(vhat, k1);
    for (std::size_t j = 0; j < n; ++j) tmp[j] = e1[j] * (vhat[j] + 0.5 * dt * k1[j]);
    nonlinear_hat(tmp, k2);
    for (std::size_t j = 0; j < n; ++j) tmp[j] = e1[j] * vhat[j] + 0.5 * dt * k2[j];
    nonlinear_hat(tmp, k3);
    for (std::size_t j = 0; j < n; ++j) tmp[j] = e2[j] * vhat[j] + dt * e1[j] * k3[j];
    nonlinear_hat(tmp, k4);
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      vhat[j] = e2[j] * vhat[j] +
                (dt / 6.0) * (e2[j] * k1[j] + 2.0 * e1[j] * k2[j] + 2.0 * e1[j] * k3[j] + k4[j]);
      s += std::norm(vhat[j]);
    }
    if (!std::isfinite(s)) fail(errc::non_finite, "state blew up during a step");
  }
};

Stepper::Stepper(const GridSpec& g, double dt, bool dealias, bool linear_only)
    : impl_(std::make_unique<Impl>(g, dt, dealias, linear_only)) {}
Stepper::~Stepper() = default;

double Stepper::dt() const { return impl_->dt; }

void Stepper::load(const Field& u) {
  if (!(u.grid == impl_->g)) fail(errc::grid_mismatch, "stepper grid mismatch");
  require_finite(u, "stepper input");
  impl_->fft.forward(u.v.data(), impl_->vhat.data());
  impl_->mask(impl_->vhat);
}

void Stepper::advance() { impl_->advance(); }

void Stepper::store(Field& u) const {
  if (!(u.grid == impl_->g)) fail(errc::grid_mismatch, "stepper grid mismatch");
  impl_->fft.inverse(impl_->vhat.data(), u.v.data());
}

Field Stepper::step(const Field& u) {
  load(u);
  advance();
  Field out = make_field(impl_->g);
  store(out);
  return out;
}

Field rhs(const Field& u, bool dealias) {
  Field uxx = spectral_derivative(u, 2);
  Field ux = spectral_derivative(u, 1);
  Field out = make_field(u.grid);
  const std::size_t n = u.size();
  const double kcut = M_PI * static_cast<double>(n) / (2.0 * u.grid.half_length) * (2.0 / 3.0);
  std::vector<cd> nl(n);
  for (std::size_t m = 0; m < n; ++m) {
    const cd z = u.v[m], zx = ux.v[m];
    const double a2 = std::norm(z);
    nl[m] = -0.5 * a2 * zx + 0.5 * z * z * std::conj(zx) + cd{0.0, 3.0 / 16.0} * (a2 * a2) * z;
  }
  Field nlf{u.grid, nl};
  std::vector<cd> nlhat = spectrum(nlf);
  if (dealias) {
    for (std::size_t j = 0; j < n; ++j)
      if (std::abs(u.grid.wavenumber(j)) > kcut + 1e-12) nlhat[j] = cd{0.0, 0.0};
  }
  Field nlp = from_spectrum(u.grid, nlhat);
  for (std::size_t m = 0; m < n; ++m)
    out.v[m] = cd{0.0, 1.0} * uxx.v[m] + nlp.v[m];
  return out;
}

EvolveResult evolve(const Field& u0, const EvolveConfig& cfg, const Observer& obs) {
  if (!(cfg.t_end > 0.0)) fail(errc::bad_domain, "t_end must be positive");
  double dt = cfg.dt;
  if (dt <= 0.0) dt = suggest_dt(u0.grid, norm(u0, NormKind::sup));
  const auto n_steps = static_cast<std::size_t>(std::max<long long>(1, std::llround(cfg.t_end / dt)));
  dt = cfg.t_end / static_cast<double>(n_steps);

  Stepper st(u0.grid, dt, cfg.dealias);
  st.load(u0);
  Field u = make_field(u0.grid);
  st.store(u);
  if (obs) obs(0.0, u);
  const std::size_t stride = std::max<std::size_t>(1, cfg.observer_stride);
  for (std::size_t s = 1; s <= n_steps; ++s) {
    try {
      st.advance();
    } catch (const error& e) {
      if (e.code() == errc::non_finite)
        fail(errc::non_finite, "blow-up at t = " + std::to_string(static_cast<double>(s) * dt));
      throw;
    }
    if (s % stride == 0 || s == n_steps) {
      st.store(u);
      require_finite(u, "evolution frame");
      if (obs) obs(static_cast<double>(s) * dt, u);
    }
  }
  st.store(u);
  return EvolveResult{u, cfg.t_end, n_steps, dt};
}

Field step_ifrk4(const Field& u, double dt, bool dealias) {
  Stepper st(u.grid, dt, dealias);
  return st.step(u);
}

}  // namespace dnls
