#pragma once
#include <Eigen/Dense>
#include <vector>

#include "dnls/grid.hpp"
#include "dnls/waves.hpp"

namespace dnls {

// Scalar linearized operators about the profile phi = phi_{omega,c}:
//   L+ = -(1/2) d^2/dx^2 + (1/2)(omega - c^2/4) + (3c/4) phi^2 - (15/32) phi^4
//   L- = -(1/2) d^2/dx^2 + (1/2)(omega - c^2/4) + (c/4) phi^2 - (3/32) phi^4
// discretized densely with the spectral Laplacian; the matrix is symmetric,
// and plain-dot eigenpairs coincide with L2 eigenpairs on the uniform grid.
enum class OperatorKind { plus, minus };

struct LinOp {
  GridSpec grid;
  double omega = 0.0;
  double c = 0.0;
  OperatorKind kind = OperatorKind::plus;
  Eigen::MatrixXd mat;
};

LinOp linearized_op(double omega, double c, const GridSpec& g, OperatorKind kind);

// Dense spectral differentiation matrix (order 1 or 2), same conventions as
// spectral_derivative.
Eigen::MatrixXd derivative_matrix(const GridSpec& g, int order);

struct EigenPair {
  double value;
  Field vec;  // real data, L2-normalized, sign fixed at the largest entry
};

// k lowest eigenpairs (ascending).
std::vector<EigenPair> eigen_bottom(const LinOp& op, int k);

// Number of eigenvalues below -1e-8 (definitely negative).
int negative_count(const LinOp& op);

// Bottom of the essential spectrum, (omega - c^2/4)/2.
double ess_floor(double omega, double c);

// Smallest eigenvalue of op restricted to the L2-orthogonal complement of the
// given (real) constraint fields. Throws RankDeficient if the constraints are
// numerically dependent.
double constrained_min(const LinOp& op, const std::vector<Field>& constraints);

// ---- quadratic forms ------------------------------------------------------

// <L+ Re eta, Re eta> + <L- Im eta, Im eta> evaluated as a single integral.
double form_Htilde(double omega, double c, const Field& eta);

// Moving-frame energy form about R = wave_field(p); equals form_Htilde under
// the unitary pullback eta(x) = eps(x + x0) e^{-i gamma} e^{-i(c/2)x}.
double form_H(const WaveParams& p, const Field& eps);

// Two-soliton localized form: frozen parameters (w_k, c_k), fields R_k, and a
// smooth partition gw + hw = 1 selecting each soliton's neighborhood.
double form_H_two(const Field& R1, double w1, double c1, const Field& R2, double w2, double c2,
                  const std::vector<double>& gw, const std::vector<double>& hw, const Field& eps);

// Exponentially localized single-soliton form with weight Phi.
double form_H_weighted(const Field& R, double omega, double c, const std::vector<double>& Phi,
                       const Field& eps);

// ---- real-coordinate assembly (z = [Re eps; Im eps], forms = z^T M z) -----

Eigen::VectorXd real_coords(const Field& f);
Field from_real_coords(const GridSpec& g, const Eigen::VectorXd& z);

Eigen::MatrixXd form_H_matrix(const WaveParams& p, const GridSpec& g);
Eigen::MatrixXd form_H_two_matrix(const Field& R1, double w1, double c1, const Field& R2,
                                  double w2, double c2, const std::vector<double>& gw,
                                  const std::vector<double>& hw);
Eigen::MatrixXd form_H_weighted_matrix(const Field& R, double omega, double c,
                                       const std::vector<double>& Phi);
Eigen::MatrixXd h1_gram_matrix(const GridSpec& g);
Eigen::MatrixXd h1_gram_weighted_matrix(const GridSpec& g, const std::vector<double>& Phi);

// Pairing vectors v such that dx * v.dot(z) realizes the four orthogonality
// conditions Re int W conj(eps) for W = R, iR_x + |R|^2 R / 2, R_x, iR.
std::vector<Eigen::VectorXd> soliton_constraint_vectors(const Field& R);

// min z^T M z / z^T G z over the complement of the constraint span.
double constrained_form_min(const Eigen::MatrixXd& M, const Eigen::MatrixXd& G,
                            const std::vector<Eigen::VectorXd>& constraints);

// Remove the constraint components from f (L2 projection).
Field project_out(const Field& f, const std::vector<Eigen::VectorXd>& constraints);

// ---- per-point audit ------------------------------------------------------

struct SpectralReport {
  double omega = 0.0, c = 0.0;
  double lambda1_sq = 0.0;   // -(bottom eigenvalue of L+), positive when present
  double lambda2 = 0.0;      // next L+ eigenvalue (the kernel direction)
  int neg_plus = 0;
  int neg_minus = 0;
  double mu_minus = 0.0;     // min of L- on {phi}^perp
  double mu_plus = 0.0;      // min of L+ on {phi, phi^3, phi_x}^perp
  double ess = 0.0;
  double ker_plus_res = 0.0;   // ||L+ phi_x|| / ||phi_x||
  double ker_minus_res = 0.0;  // ||L- phi|| / ||phi||
  double chi_overlap = 0.0;    // |<chi, phi_x>| (distinct-eigenvalue orthogonality)
  double struct_res_omega = 0.0;  // rel. residual of L+ dphi/dw = -phi/2
  double struct_res_c = 0.0;      // rel. residual of L+ dphi/dc = (c phi - phi^3)/4
};

SpectralReport spectral_report(double omega, double c, const GridSpec& g);

}  // namespace dnls
