#include "dnls/rng.hpp"

#include <cmath>

namespace dnls {

Field random_smooth_field(const GridSpec& g, Xorshift64s& rng, std::size_t kmodes) {
  if (kmodes == 0 || kmodes >= g.n / 2)
    fail(errc::bad_domain, "kmodes must lie in [1, n/2)");
  std::vector<cd> hat(g.n, cd{0.0, 0.0});
  const double k0 = static_cast<double>(kmodes) / 2.0;
  auto draw = [&](double j) {
    const double a = rng.symmetric();
    const double b = rng.symmetric();
    const double env = std::exp(-(j * j) / (2.0 * k0 * k0));
    return cd{a * env, b * env};
  };
  hat[0] = draw(0.0);
  for (std::size_t j = 1; j <= kmodes; ++j) {
    hat[j] = draw(static_cast<double>(j));
    hat[g.n - j] = draw(static_cast<double>(j));
  }
  // Scale so coefficient magnitudes are O(1) in physical space.
  for (cd& z : hat) z *= static_cast<double>(g.n) / (2.0 * static_cast<double>(kmodes));
  return from_spectrum(g, hat);
}

Field gaussian_bump(const GridSpec& g, double center, double width) {
  if (!(width > 0.0)) fail(errc::bad_domain, "bump width must be positive");
  Field f = make_field(g);
  for (std::size_t m = 0; m < g.n; ++m) {
    const double z = (g.node(m) - center) / width;
    f.v[m] = cd{std::exp(-z * z), 0.0};
  }
  return f;
}

}  // namespace dnls
