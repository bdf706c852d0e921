#pragma once

#include <memory>
#include <vector>

#include "json.hpp"
#include "decaylab/models/model.hpp"

namespace decaylab::mild {

using models::ModelSpec;
using spectral::SpectralField;

struct Trajectory {
  std::vector<double> times;  // 0 = t_0 < t_1 < ... < t_M
  std::vector<SpectralField> fields;
  double gamma = 0.0;
  double beta_c = 0.0;
  double theta = 1.0;

  Trajectory operator-(const Trajectory& o) const;
};

// M intervals on [0, T]: `geometric` points halving toward 0 below the first
// uniform step, uniform afterwards.
std::vector<double> make_mesh(double T, int M = 64, int geometric = 16);

// sup over the mesh of max{|u|_{beta_c}, t^{(gamma - beta_c)/(2 theta)} |u|_gamma};
// t = 0 contributes only the first norm. The k = 0 mode is not part of either
// norm.
double v_norm(const Trajectory& traj);
// The second entry alone: sup t^{(gamma - beta_c)/(2 theta)} |u|_gamma.
double v_norm_gamma_part(const Trajectory& traj);

Trajectory semigroup_trajectory(const SpectralField& u0, const std::vector<double>& times, double theta,
                                double gamma, double beta_c);

struct QuadratureOptions {
  int gauss_points = 8;
  // Subpanels per mesh interval: at least this many, more when
  // max|k|^{2 theta} * h is large.
  int min_subpanels = 2;
  double max_grading = 4.0;
};

// S(u, v)(t_i) = integral_0^{t_i} e^{-(t_i - s)A} B(u(s), v(s)) ds on the shared
// mesh. Between mesh points u and v are interpolated as
// e^{-(s - t_j)A} u_j + ((s - t_j)/h) (u_{j+1} - e^{-hA} u_j).
Trajectory duhamel_apply(const Trajectory& u, const Trajectory& v, const models::BilinearOperator& op,
                         const QuadratureOptions& q = {});
Trajectory duhamel_apply(const Trajectory& u, const Trajectory& v, const ModelSpec& spec,
                         const QuadratureOptions& q = {});

// Same quadrature for a caller-supplied forcing F(s) (as a function of the
// interpolated pair).
using Forcing = std::function<SpectralField(const SpectralField& u, const SpectralField& v)>;
Trajectory duhamel_apply(const Trajectory& u, const Trajectory& v, const Forcing& forcing,
                         const QuadratureOptions& q = {});

struct PicardReport {
  bool converged = false;
  bool diverged = false;
  int iterations = 0;
  std::vector<double> deltas;  // v_norm(u^{k+1} - u^k)
  std::vector<double> ratios;  // deltas[k] / deltas[k-1]
  double bilinear_constant = 0.0;  // max_k v_norm(S(u^k,u^k)) / v_norm(u^k)^2
  double M = 0.0;                  // v_norm of the semigroup trajectory
  double M_gamma = 0.0;
  double u0_norm = 0.0;            // |u_0|_{beta_c}
  double final_v_norm = 0.0;
  bool bound_ok = false;           // final_v_norm <= 2 M + tol
  double gamma = 0.0;

  nlohmann::json to_json() const;
};

struct PicardResult {
  Trajectory trajectory;
  PicardReport report;
};

struct PicardOptions {
  double tol = 1e-10;
  int max_iters = 50;
  int mesh_points = 64;
  QuadratureOptions quadrature;
};

PicardResult picard_solve(const SpectralField& u0, const ModelSpec& spec, double T, double gamma,
                          const PicardOptions& opt = {});

// Largest amplitude factor a (within `steps` bisections on a log scale between
// lo and hi) for which picard_solve(a * shape) converges.
double contraction_threshold(const SpectralField& shape, const ModelSpec& spec, double T, double gamma,
                             double lo, double hi, int steps = 12, const PicardOptions& opt = {});

}  // namespace decaylab::mild
