#include "dnls/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dnls {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

Eigen::MatrixXd derivative_matrix(const GridSpec& g, int order) {
  const std::size_t n = g.n;
  Mat d(n, n);
  Field e = make_field(g);
  for (std::size_t j = 0; j < n; ++j) {
    e.v[j] = cd{1.0, 0.0};
    Field col = spectral_derivative(e, order);
    for (std::size_t i = 0; i < n; ++i) d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = col.v[i].real();
    e.v[j] = cd{0.0, 0.0};
  }
  // Enforce the exact (anti)symmetry of the continuous operator.
  if (order == 1)
    d = 0.5 * (d - d.transpose()).eval();
  else
    d = 0.5 * (d + d.transpose()).eval();
  return d;
}

LinOp linearized_op(double omega, double c, const GridSpec& g, OperatorKind kind) {
  if (classify_regime(omega, c) != Regime::subcritical)
    fail(errc::regime_unsupported, "linearized operators need a subcritical wave");
  LinOp op{g, omega, c, kind, Mat()};
  op.mat = -0.5 * derivative_matrix(g, 2);
  const Field phi = phi_profile(omega, c, g);
  const double floor = 0.5 * (omega - 0.25 * c * c);
  for (std::size_t m = 0; m < g.n; ++m) {
    const double p2 = phi.v[m].real() * phi.v[m].real();
    const double pot = (kind == OperatorKind::plus)
                           ? floor + 0.75 * c * p2 - (15.0 / 32.0) * p2 * p2
                           : floor + 0.25 * c * p2 - (3.0 / 32.0) * p2 * p2;
    op.mat(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m)) += pot;
  }
  return op;
}

namespace {
Field column_to_field(const GridSpec& g, const Vec& col) {
  Field f = make_field(g);
  const double scale = 1.0 / std::sqrt(g.dx());
  Eigen::Index imax = 0;
  col.cwiseAbs().maxCoeff(&imax);
  const double sign = col(imax) >= 0.0 ? 1.0 : -1.0;
  for (std::size_t m = 0; m < g.n; ++m)
    f.v[m] = cd{sign * scale * col(static_cast<Eigen::Index>(m)), 0.0};
  return f;
}
}  // namespace

std::vector<EigenPair> eigen_bottom(const LinOp& op, int k) {
  if (k < 1) fail(errc::bad_domain, "need k >= 1 eigenpairs");
  Eigen::SelfAdjointEigenSolver<Mat> es(op.mat);
  if (es.info() != Eigen::Success) fail(errc::no_convergence, "dense eigensolve failed");
  std::vector<EigenPair> out;
  const int kk = std::min<int>(k, static_cast<int>(op.grid.n));
  out.reserve(static_cast<std::size_t>(kk));
  for (int i = 0; i < kk; ++i)
    out.push_back(EigenPair{es.eigenvalues()(i), column_to_field(op.grid, es.eigenvectors().col(i))});
  return out;
}

int negative_count(const LinOp& op) {
  Eigen::SelfAdjointEigenSolver<Mat> es(op.mat, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) fail(errc::no_convergence, "dense eigensolve failed");
  int count = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) < -1e-8) ++count;
  return count;
}

double ess_floor(double omega, double c) { return 0.5 * (omega - 0.25 * c * c); }

namespace {
// Orthonormal basis of the complement of the span of the columns of C.
Mat complement_basis(const Mat& c_mat) {
  const Eigen::Index n = c_mat.rows(), m = c_mat.cols();
  Eigen::HouseholderQR<Mat> qr(c_mat);
  const Vec diag = qr.matrixQR().diagonal().cwiseAbs();
  const double scale = std::max(1.0, c_mat.cwiseAbs().maxCoeff() * std::sqrt(double(n)));
  for (Eigen::Index j = 0; j < m; ++j)
    if (diag(j) < 1e-12 * scale)
      fail(errc::rank_deficient, "constraint vectors are numerically dependent");
  Mat q = qr.householderQ();
  return q.rightCols(n - m);
}
}  // namespace

double constrained_min(const LinOp& op, const std::vector<Field>& constraints) {
  const Eigen::Index n = static_cast<Eigen::Index>(op.grid.n);
  if (constraints.empty()) {
    Eigen::SelfAdjointEigenSolver<Mat> es(op.mat, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
  }
  Mat c_mat(n, static_cast<Eigen::Index>(constraints.size()));
  for (std::size_t j = 0; j < constraints.size(); ++j) {
    if (!(constraints[j].grid == op.grid)) fail(errc::grid_mismatch, "constraint grid mismatch");
    for (Eigen::Index i = 0; i < n; ++i)
      c_mat(i, static_cast<Eigen::Index>(j)) = constraints[j].v[static_cast<std::size_t>(i)].real();
  }
  const Mat q2 = complement_basis(c_mat);
  Mat b = q2.transpose() * op.mat * q2;
  b = 0.5 * (b + b.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Mat> es(b, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) fail(errc::no_convergence, "constrained eigensolve failed");
  return es.eigenvalues()(0);
}

// ---- quadratic forms ------------------------------------------------------

double form_Htilde(double omega, double c, const Field& eta) {
  const GridSpec& g = eta.grid;
  const Field phi = phi_profile(omega, c, g);
  const Field etax = spectral_derivative(eta, 1);
  const double floor2 = 0.5 * (omega - 0.25 * c * c);
  double s = 0.0;
  for (std::size_t m = 0; m < g.n; ++m) {
    const double e1 = eta.v[m].real(), e2 = eta.v[m].imag();
    const double a2 = e1 * e1 + e2 * e2;
    const double p2 = phi.v[m].real() * phi.v[m].real();
    const double p4 = p2 * p2;
    s += 0.5 * std::norm(etax.v[m]) + floor2 * a2 - (3.0 / 32.0) * p4 * a2 -
         (3.0 / 8.0) * p4 * e1 * e1 + 0.25 * c * p2 * a2 + 0.5 * c * p2 * e1 * e1;
  }
  return s * g.dx();
}

double form_H(const WaveParams& p, const Field& eps) {
  const GridSpec& g = eps.grid;
  const Field R = wave_field(p, g);
  const Field ex = spectral_derivative(eps, 1);
  double s = 0.0;
  for (std::size_t m = 0; m < g.n; ++m) {
    const cd r = R.v[m], e = eps.v[m];
    const double r2 = std::norm(r), a2 = std::norm(e);
    const double re = std::real(std::conj(r) * e);
    s += 0.5 * std::norm(ex.v[m]) - (3.0 / 32.0) * r2 * r2 * a2 - (3.0 / 8.0) * r2 * re * re +
         0.5 * p.omega * a2 - 0.5 * p.c * std::imag(std::conj(e) * ex.v[m]) +
         0.25 * p.c * r2 * a2 + 0.5 * p.c * re * re;
  }
  return s * g.dx();
}

double form_H_two(const Field& R1, double w1, double c1, const Field& R2, double w2, double c2,
                  const std::vector<double>& gw, const std::vector<double>& hw, const Field& eps) {
  const GridSpec& g = eps.grid;
  require_same_grid(R1, eps);
  require_same_grid(R2, eps);
  if (gw.size() != g.n || hw.size() != g.n) fail(errc::grid_mismatch, "weight length mismatch");
  const Field ex = spectral_derivative(eps, 1);
  double s = 0.0;
  for (std::size_t m = 0; m < g.n; ++m) {
    const cd e = eps.v[m];
    const double a2 = std::norm(e);
    const double imm = std::imag(std::conj(e) * ex.v[m]);
    s += 0.5 * std::norm(ex.v[m]) + 0.5 * (w1 * gw[m] + w2 * hw[m]) * a2 -
         0.5 * (c1 * gw[m] + c2 * hw[m]) * imm;
    const cd rs[2] = {R1.v[m], R2.v[m]};
    const double cs[2] = {c1, c2};
    for (int k = 0; k < 2; ++k) {
      const double r2 = std::norm(rs[k]);
      const double re = std::real(std::conj(rs[k]) * e);
      s += -(3.0 / 32.0) * r2 * r2 * a2 - (3.0 / 8.0) * r2 * re * re + 0.25 * cs[k] * r2 * a2 +
           0.5 * cs[k] * re * re;
    }
  }
  return s * g.dx();
}

double form_H_weighted(const Field& R, double omega, double c, const std::vector<double>& Phi,
                       const Field& eps) {
  const GridSpec& g = eps.grid;
  require_same_grid(R, eps);
  if (Phi.size() != g.n) fail(errc::grid_mismatch, "weight length mismatch");
  const Field ex = spectral_derivative(eps, 1);
  double s = 0.0;
  for (std::size_t m = 0; m < g.n; ++m) {
    const cd r = R.v[m], e = eps.v[m];
    const double r2 = std::norm(r), a2 = std::norm(e);
    const double re = std::real(std::conj(r) * e);
    s += Phi[m] * (0.5 * std::norm(ex.v[m]) + 0.5 * omega * a2 -
                   0.5 * c * std::imag(std::conj(e) * ex.v[m]) + 0.25 * c * r2 * a2 +
                   0.5 * c * re * re - (3.0 / 32.0) * r2 * r2 * a2 - (3.0 / 8.0) * r2 * re * re);
  }
  return s * g.dx();
}

// ---- real-coordinate assembly ---------------------------------------------

Eigen::VectorXd real_coords(const Field& f) {
  const Eigen::Index n = static_cast<Eigen::Index>(f.size());
  Vec z(2 * n);
  for (Eigen::Index m = 0; m < n; ++m) {
    z(m) = f.v[static_cast<std::size_t>(m)].real();
    z(n + m) = f.v[static_cast<std::size_t>(m)].imag();
  }
  return z;
}

Field from_real_coords(const GridSpec& g, const Eigen::VectorXd& z) {
  const Eigen::Index n = static_cast<Eigen::Index>(g.n);
  if (z.size() != 2 * n) fail(errc::grid_mismatch, "coordinate length mismatch");
  Field f = make_field(g);
  for (Eigen::Index m = 0; m < n; ++m)
    f.v[static_cast<std::size_t>(m)] = cd{z(m), z(n + m)};
  return f;
}

namespace {
struct FormAccum {
  // M = [[A, C], [C^T, B]] with A, B symmetric.
  Mat a, b, c;
  explicit FormAccum(Eigen::Index n) : a(Mat::Zero(n, n)), b(Mat::Zero(n, n)), c(Mat::Zero(n, n)) {}

  void add_kinetic(const Mat& d1, double coeff, double dx) {
    const Mat k = (coeff * dx) * (d1.transpose() * d1);
    a += k;
    b += k;
  }
  void add_kinetic_weighted(const Mat& d1, const std::vector<double>& w, double coeff, double dx) {
    Mat wd = d1;
    for (Eigen::Index i = 0; i < wd.rows(); ++i) wd.row(i) *= w[static_cast<std::size_t>(i)];
    const Mat k = (coeff * dx) * (d1.transpose() * wd);
    a += 0.5 * (k + k.transpose());
    b += 0.5 * (k + k.transpose());
  }
  void add_potential(const std::vector<double>& v, double dx) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      a(i, i) += dx * v[static_cast<std::size_t>(i)];
      b(i, i) += dx * v[static_cast<std::size_t>(i)];
    }
  }
  // w(x) * (Re(conj(r) eps))^2
  void add_projector(const Field& r, const std::vector<double>& w, double dx) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      const double rr = r.v[static_cast<std::size_t>(i)].real();
      const double ri = r.v[static_cast<std::size_t>(i)].imag();
      const double s = dx * w[static_cast<std::size_t>(i)];
      a(i, i) += s * rr * rr;
      b(i, i) += s * ri * ri;
      c(i, i) += s * rr * ri;
    }
  }
  // coeff * int w(x) Im(conj(eps) eps_x): contributes 2 a^T C b with
  // C = (coeff*dx/2) (W D - (W D)^T), W = diag(w).
  void add_momentum(const Mat& d1, const std::vector<double>& w, double coeff, double dx) {
    Mat wd = d1;
    for (Eigen::Index i = 0; i < wd.rows(); ++i) wd.row(i) *= w[static_cast<std::size_t>(i)];
    c += (0.5 * coeff * dx) * (wd - wd.transpose());
  }
  Mat assemble() const {
    const Eigen::Index n = a.rows();
    Mat m(2 * n, 2 * n);
    m.topLeftCorner(n, n) = 0.5 * (a + a.transpose());
    m.bottomRightCorner(n, n) = 0.5 * (b + b.transpose());
    m.topRightCorner(n, n) = c;
    m.bottomLeftCorner(n, n) = c.transpose();
    return m;
  }
};
}  // namespace

Eigen::MatrixXd form_H_matrix(const WaveParams& p, const GridSpec& g) {
  const Eigen::Index n = static_cast<Eigen::Index>(g.n);
  const double dx = g.dx();
  const Mat d1 = derivative_matrix(g, 1);
  const Field R = wave_field(p, g);
  FormAccum f(n);
  f.add_kinetic(d1, 0.5, dx);
  std::vector<double> ones(g.n, 1.0), v(g.n), w(g.n);
  for (std::size_t m = 0; m < g.n; ++m) {
    const double r2 = std::norm(R.v[m]);
    v[m] = 0.5 * p.omega + 0.25 * p.c * r2 - (3.0 / 32.0) * r2 * r2;
    w[m] = 0.5 * p.c - (3.0 / 8.0) * r2;
  }
  f.add_potential(v, dx);
  f.add_projector(R, w, dx);
  f.add_momentum(d1, ones, -0.5 * p.c, dx);
  return f.assemble();
}

Eigen::MatrixXd form_H_two_matrix(const Field& R1, double w1, double c1, const Field& R2,
                                  double w2, double c2, const std::vector<double>& gw,
                                  const std::vector<double>& hw) {
  require_same_grid(R1, R2);
  const GridSpec& g = R1.grid;
  const Eigen::Index n = static_cast<Eigen::Index>(g.n);
  const double dx = g.dx();
  const Mat d1 = derivative_matrix(g, 1);
  FormAccum f(n);
  f.add_kinetic(d1, 0.5, dx);
  std::vector<double> v(g.n), wc(g.n), wk1(g.n), wk2(g.n);
  for (std::size_t m = 0; m < g.n; ++m) {
    const double r21 = std::norm(R1.v[m]), r22 = std::norm(R2.v[m]);
    v[m] = 0.5 * (w1 * gw[m] + w2 * hw[m]) + 0.25 * (c1 * r21 + c2 * r22) -
           (3.0 / 32.0) * (r21 * r21 + r22 * r22);
    wc[m] = c1 * gw[m] + c2 * hw[m];
    wk1[m] = 0.5 * c1 - (3.0 / 8.0) * r21;
    wk2[m] = 0.5 * c2 - (3.0 / 8.0) * r22;
  }
  f.add_potential(v, dx);
  f.add_projector(R1, wk1, dx);
  f.add_projector(R2, wk2, dx);
  f.add_momentum(d1, wc, -0.5, dx);
  return f.assemble();
}

Eigen::MatrixXd form_H_weighted_matrix(const Field& R, double omega, double c,
                                       const std::vector<double>& Phi) {
  const GridSpec& g = R.grid;
  const Eigen::Index n = static_cast<Eigen::Index>(g.n);
  const double dx = g.dx();
  const Mat d1 = derivative_matrix(g, 1);
  FormAccum f(n);
  f.add_kinetic_weighted(d1, Phi, 0.5, dx);
  std::vector<double> v(g.n), w(g.n);
  for (std::size_t m = 0; m < g.n; ++m) {
    const double r2 = std::norm(R.v[m]);
    v[m] = Phi[m] * (0.5 * omega + 0.25 * c * r2 - (3.0 / 32.0) * r2 * r2);
    w[m] = Phi[m] * (0.5 * c - (3.0 / 8.0) * r2);
  }
  f.add_potential(v, dx);
  f.add_projector(R, w, dx);
  f.add_momentum(d1, Phi, -0.5 * c, dx);
  return f.assemble();
}

Eigen::MatrixXd h1_gram_matrix(const GridSpec& g) {
  const Eigen::Index n = static_cast<Eigen::Index>(g.n);
  const Mat d1 = derivative_matrix(g, 1);
  Mat block = g.dx() * (Mat::Identity(n, n) + d1.transpose() * d1);
  block = 0.5 * (block + block.transpose()).eval();
  Mat m = Mat::Zero(2 * n, 2 * n);
  m.topLeftCorner(n, n) = block;
  m.bottomRightCorner(n, n) = block;
  return m;
}

Eigen::MatrixXd h1_gram_weighted_matrix(const GridSpec& g, const std::vector<double>& Phi) {
  const Eigen::Index n = static_cast<Eigen::Index>(g.n);
  const Mat d1 = derivative_matrix(g, 1);
  Mat wd = d1;
  for (Eigen::Index i = 0; i < n; ++i) wd.row(i) *= Phi[static_cast<std::size_t>(i)];
  Mat block = g.dx() * (d1.transpose() * wd);
  block = 0.5 * (block + block.transpose()).eval();
  for (Eigen::Index i = 0; i < n; ++i) block(i, i) += g.dx() * Phi[static_cast<std::size_t>(i)];
  Mat m = Mat::Zero(2 * n, 2 * n);
  m.topLeftCorner(n, n) = block;
  m.bottomRightCorner(n, n) = block;
  return m;
}

std::vector<Eigen::VectorXd> soliton_constraint_vectors(const Field& R) {
  const Field Rx = spectral_derivative(R, 1);
  const std::size_t n = R.size();
  Field w2 = make_field(R.grid);
  for (std::size_t m = 0; m < n; ++m)
    w2.v[m] = cd{0.0, 1.0} * Rx.v[m] + 0.5 * std::norm(R.v[m]) * R.v[m];
  Field w4 = make_field(R.grid);
  for (std::size_t m = 0; m < n; ++m) w4.v[m] = cd{0.0, 1.0} * R.v[m];
  std::vector<Eigen::VectorXd> out;
  for (const Field* w : std::initializer_list<const Field*>{&R, &w2, &Rx, &w4})
    out.push_back(real_coords(*w));
  return out;
}

double constrained_form_min(const Eigen::MatrixXd& M, const Eigen::MatrixXd& G,
                            const std::vector<Eigen::VectorXd>& constraints) {
  const Eigen::Index n2 = M.rows();
  Mat ae, ge;
  if (constraints.empty()) {
    ae = M;
    ge = G;
  } else {
    Mat c_mat(n2, static_cast<Eigen::Index>(constraints.size()));
    for (std::size_t j = 0; j < constraints.size(); ++j) {
      if (constraints[j].size() != n2) fail(errc::grid_mismatch, "constraint length mismatch");
      c_mat.col(static_cast<Eigen::Index>(j)) = constraints[j];
    }
    const Mat q2 = complement_basis(c_mat);
    ae = q2.transpose() * M * q2;
    ge = q2.transpose() * G * q2;
  }
  ae = 0.5 * (ae + ae.transpose()).eval();
  ge = 0.5 * (ge + ge.transpose()).eval();
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> es(ae, ge, Eigen::EigenvaluesOnly | Eigen::Ax_lBx);
  if (es.info() != Eigen::Success) fail(errc::no_convergence, "generalized eigensolve failed");
  return es.eigenvalues()(0);
}

Field project_out(const Field& f, const std::vector<Eigen::VectorXd>& constraints) {
  if (constraints.empty()) return f;
  const Eigen::Index n2 = static_cast<Eigen::Index>(2 * f.size());
  Mat c_mat(n2, static_cast<Eigen::Index>(constraints.size()));
  for (std::size_t j = 0; j < constraints.size(); ++j)
    c_mat.col(static_cast<Eigen::Index>(j)) = constraints[j];
  Eigen::HouseholderQR<Mat> qr(c_mat);
  Mat q = qr.householderQ() * Mat::Identity(n2, static_cast<Eigen::Index>(constraints.size()));
  Vec z = real_coords(f);
  z -= q * (q.transpose() * z);
  return from_real_coords(f.grid, z);
}

// ---- per-point audit ------------------------------------------------------

SpectralReport spectral_report(double omega, double c, const GridSpec& g) {
  SpectralReport rep;
  rep.omega = omega;
  rep.c = c;
  rep.ess = ess_floor(omega, c);

  const LinOp lp = linearized_op(omega, c, g, OperatorKind::plus);
  const LinOp lm = linearized_op(omega, c, g, OperatorKind::minus);
  const Field phi = phi_profile(omega, c, g);
  const Field dphi = phi_profile_deriv(omega, c, g);

  const Eigen::Index n = static_cast<Eigen::Index>(g.n);
  Vec phiv(n), dphiv(n), phi3(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double p = phi.v[static_cast<std::size_t>(i)].real();
    phiv(i) = p;
    phi3(i) = p * p * p;
    dphiv(i) = dphi.v[static_cast<std::size_t>(i)].real();
  }

  Eigen::SelfAdjointEigenSolver<Mat> esp(lp.mat);
  if (esp.info() != Eigen::Success) fail(errc::no_convergence, "L+ eigensolve failed");
  rep.lambda1_sq = -esp.eigenvalues()(0);
  rep.lambda2 = esp.eigenvalues()(1);
  rep.neg_plus = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    if (esp.eigenvalues()(i) < -1e-8) ++rep.neg_plus;
  rep.neg_minus = negative_count(lm);

  const Vec chi = esp.eigenvectors().col(0);
  rep.chi_overlap = std::abs(chi.dot(dphiv)) / dphiv.norm();  // normalized L2 overlap

  rep.ker_plus_res = (lp.mat * dphiv).norm() / dphiv.norm();
  rep.ker_minus_res = (lm.mat * phiv).norm() / phiv.norm();

  // Constrained minima: L- on {phi}^perp, L+ on {phi, phi^3, phi_x}^perp.
  Field phi3_f = make_field(g);
  for (std::size_t m = 0; m < g.n; ++m) {
    const double p = phi.v[m].real();
    phi3_f.v[m] = cd{p * p * p, 0.0};
  }
  rep.mu_minus = constrained_min(lm, {phi});
  rep.mu_plus = constrained_min(lp, {phi, phi3_f, dphi});

  // Parameter-derivative structure relations.
  auto step = [](double v) { return 1e-5 * std::max(1.0, std::abs(v)); };
  const double hw = step(omega), hc = step(c);
  if (classify_regime(omega + hw, c) != Regime::subcritical ||
      classify_regime(omega - hw, c) != Regime::subcritical ||
      classify_regime(omega, c + hc) != Regime::subcritical ||
      classify_regime(omega, c - hc) != Regime::subcritical)
    fail(errc::step_breaks_regime, "structure stencil leaves the subcritical cone");
  const Field pp = phi_profile(omega + hw, c, g), pm = phi_profile(omega - hw, c, g);
  const Field cp = phi_profile(omega, c + hc, g), cm = phi_profile(omega, c - hc, g);
  Vec dphi_dw(n), dphi_dc(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const std::size_t m = static_cast<std::size_t>(i);
    dphi_dw(i) = (pp.v[m].real() - pm.v[m].real()) / (2.0 * hw);
    dphi_dc(i) = (cp.v[m].real() - cm.v[m].real()) / (2.0 * hc);
  }
  const Vec rhs_w = -0.5 * phiv;
  const Vec rhs_c = 0.25 * (c * phiv - phi3);
  rep.struct_res_omega = (lp.mat * dphi_dw - rhs_w).norm() / rhs_w.norm();
  rep.struct_res_c = (lp.mat * dphi_dc - rhs_c).norm() / rhs_c.norm();
  return rep;
}

}  // namespace dnls
