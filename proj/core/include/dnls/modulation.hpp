#pragma once
#include <Eigen/Dense>
#include <vector>

#include "dnls/grid.hpp"
#include "dnls/waves.hpp"

namespace dnls {

// Orthogonality residuals of eps = u - R(p) against the four pairing fields
// {R, i R_x + |R|^2 R / 2, R_x, i R}, each as Re int W conj(eps) dx.
Eigen::Vector4d residuals_single(const Field& u, const WaveParams& p);

// Finite-difference Jacobian of residuals_single in p = (omega, c, x0, gamma),
// step 1e-5 * max(1, |p_k|). Throws StepBreaksRegime if a stencil point
// leaves the subcritical cone.
Eigen::Matrix4d modulation_jacobian(const Field& u, const WaveParams& p);

struct SingleFit {
  WaveParams p;
  Field eps;      // u - R(p) at the fitted parameters
  double resid;   // Euclidean norm of the four residuals
  int iters;
};

// Damped Newton solve of residuals_single(u, p) = 0 from the given guess.
// Converges when the residual norm drops below `tol`; at most 50 iterations
// (NoConvergence) with up to 8 step halvings per iteration. A step that
// cannot be damped back into the subcritical cone throws RegimeLost.
SingleFit fit_single(const Field& u, const WaveParams& guess, double tol = 1e-10);

// Two-soliton decomposition: eps = u - R(p1) - R(p2) shared by both residual
// blocks (eight conditions in the eight parameters). Requires the fitted
// centers to stay ordered with x0_2 - x0_1 >= 10 (SeparationTooSmall).
struct PairFit {
  WaveParams p1, p2;
  Field eps;
  double resid;
  int iters;
};

Eigen::Matrix<double, 8, 1> residuals_pair(const Field& u, const WaveParams& p1,
                                           const WaveParams& p2);

PairFit fit_pair(const Field& u, const WaveParams& guess1, const WaveParams& guess2,
                 double tol = 1e-10);

// ---- time tracks ----------------------------------------------------------

struct TrackFrame {
  double t = 0.0;
  WaveParams p;
  double resid = 0.0;
  double eps_h1 = 0.0;
};

// Fit history along an evolution; append() warm-starts from the caller's fit
// and keeps gamma and x0 continuous (increments folded into (-pi, pi] and
// (-L, L] respectively, L the half-length).
struct ModulationTrack {
  std::vector<TrackFrame> frames;
  void append(double t, const SingleFit& fit);
};

struct PairTrackFrame {
  double t = 0.0;
  WaveParams p1, p2;
  double resid = 0.0;
  double eps_h1 = 0.0;
};

struct PairTrack {
  std::vector<PairTrackFrame> frames;
  void append(double t, const PairFit& fit);
};

// ---- orbital distance -----------------------------------------------------

// inf over shifts y and phases gamma of || u - e^{i gamma} R_{omega,c}(. - y) ||_{H^1},
// computed by an FFT cross-correlation over all grid shifts followed by a
// local refinement; the optimal phase is analytic in the correlation.
struct OrbitDistance {
  double dist = 0.0;
  double x0 = 0.0;
  double gamma = 0.0;
};

OrbitDistance orbit_distance(const Field& u, double omega, double c);

}  // namespace dnls
