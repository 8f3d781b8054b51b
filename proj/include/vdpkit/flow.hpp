#pragma once

// Numeric spot checks for flows of algebraic vector fields on X_n:
// classical RK4 for z' = xi(z) together with the variational equation
// V' = D xi(z) V for a tangent frame, used to track the volume form.

#include <complex>
#include <span>
#include <vector>

#include "vdpkit/forms.hpp"

namespace vdp::forms {

using Point = std::vector<std::complex<double>>;

struct FlowOptions {
  double tol_on = 1e-12;
  // Integration stops once |z| exceeds this bound.
  double blowup_norm = 1e8;
  // Record a trace sample every this many steps (0: endpoints only).
  std::size_t trace_every = 0;
};

struct FlowSample {
  double t = 0;
  Point z;
  double abs_p = 0;
  // omega(V(t)) / omega(V(0)); 1 for a volume-preserving flow.
  std::complex<double> volume_ratio{1, 0};
};

struct FlowResult {
  Point endpoint;
  // max |p(z(t))| along the computed trajectory
  double drift = 0;
  // max |omega(V(t)) / omega(V(0)) - 1|
  double volume_distortion = 0;
  bool blew_up = false;
  std::size_t steps_taken = 0;
  std::vector<FlowSample> trace;
};

FlowResult flow_rk4(const Surface& s, const VectorField& v, std::span<const std::complex<double>> start,
                    double t_final, std::size_t steps, const FlowOptions& options = {});

struct ConvergenceEstimate {
  std::vector<std::size_t> steps;
  // Endpoint error against a run with reference_steps.
  std::vector<double> endpoint_errors;
  std::vector<double> drifts;
  std::size_t reference_steps = 0;
  // Least-squares slope of log(error) against log(h); NaN when every error
  // sits at the rounding floor (the scheme is exact for this start).
  double order = 0;
  double drift_order = 0;
};

ConvergenceEstimate convergence_order(const Surface& s, const VectorField& v,
                                      std::span<const std::complex<double>> start, double t_final,
                                      std::size_t base_steps = 8, std::size_t levels = 4,
                                      const FlowOptions& options = {});

// omega at z applied to the columns of frame (n x (n-1), column-major),
// computed chart-free as det[N, frame] / dp(N) with N = conj(grad p).
std::complex<double> volume_form_value(const Surface& s, const Point& z,
                                       const std::vector<Point>& frame);

}  // namespace vdp::forms
