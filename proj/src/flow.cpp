#include "vdpkit/flow.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace vdp::forms {

namespace {

using cd = std::complex<double>;

cd determinant(std::vector<std::vector<cd>> a) {
  const std::size_t n = a.size();
  cd det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    if (a[pivot][col] == cd(0)) return 0;
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      const cd f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  return det;
}

double norm(const Point& z) {
  double s = 0;
  for (const auto& x : z) s += std::norm(x);
  return std::sqrt(s);
}

// State: z followed by the n-1 frame columns, all of length n.
struct System {
  const Surface& s;
  std::vector<Polynomial> field;
  std::vector<std::vector<Polynomial>> jacobian;  // [a][b] = d xi_a / d z_b
  std::size_t n;

  System(const Surface& surface, const VectorField& v) : s(surface), field(v.c), n(surface.n) {
    jacobian.assign(n, std::vector<Polynomial>(n, Polynomial(n)));
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) jacobian[a][b] = partial_derivative(field[a], b + 1);
    }
  }

  std::vector<Point> rhs(const std::vector<Point>& state) const {
    const Point& z = state[0];
    std::vector<Point> out(state.size(), Point(n));
    for (std::size_t a = 0; a < n; ++a) out[0][a] = eval(field[a], z);
    std::vector<std::vector<cd>> j(n, std::vector<cd>(n));
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        j[a][b] = jacobian[a][b].is_zero() ? cd(0) : eval(jacobian[a][b], z);
      }
    }
    for (std::size_t col = 1; col < state.size(); ++col) {
      for (std::size_t a = 0; a < n; ++a) {
        cd acc = 0;
        for (std::size_t b = 0; b < n; ++b) acc += j[a][b] * state[col][b];
        out[col][a] = acc;
      }
    }
    return out;
  }
};

std::vector<Point> axpy(const std::vector<Point>& x, double h, const std::vector<Point>& k) {
  std::vector<Point> out = x;
  for (std::size_t c = 0; c < x.size(); ++c) {
    for (std::size_t a = 0; a < x[c].size(); ++a) out[c][a] += h * k[c][a];
  }
  return out;
}

}  // namespace

cd volume_form_value(const Surface& s, const Point& z, const std::vector<Point>& frame) {
  const std::size_t n = s.n;
  Point grad(n);
  for (std::size_t k = 0; k < n; ++k) grad[k] = eval(s.grad[k], z);
  cd dp_n = 0;
  std::vector<std::vector<cd>> m(n, std::vector<cd>(n));
  for (std::size_t r = 0; r < n; ++r) {
    const cd normal = std::conj(grad[r]);
    dp_n += grad[r] * normal;
    m[r][0] = normal;
    for (std::size_t c = 0; c + 1 < n; ++c) m[r][c + 1] = frame[c][r];
  }
  return determinant(std::move(m)) / dp_n;
}

FlowResult flow_rk4(const Surface& s, const VectorField& v, std::span<const cd> start, double t_final,
                    std::size_t steps, const FlowOptions& options) {
  if (v.n != s.n || start.size() != s.n) throw std::invalid_argument("flow_rk4: dimension mismatch");
  if (steps < 1) throw std::invalid_argument("flow_rk4: steps must be at least 1");
  Point z0(start.begin(), start.end());
  const double p0 = std::abs(eval(s.p, z0));
  if (!(p0 < options.tol_on)) {
    throw std::invalid_argument("flow_rk4: start point is off the hypersurface (|p| = " +
                                std::to_string(p0) + ")");
  }
  const std::size_t n = s.n;

  // Tangent frame from the chart with the largest partial derivative.
  std::size_t chart = 0;
  double best = -1;
  for (std::size_t k = 0; k < n; ++k) {
    double g = std::abs(eval(s.grad[k], z0));
    if (g > best) {
      best = g;
      chart = k;
    }
  }
  const cd g_chart = eval(s.grad[chart], z0);
  std::vector<Point> state{z0};
  for (std::size_t k = 0; k < n; ++k) {
    if (k == chart) continue;
    Point col(n, 0);
    col[k] = 1;
    col[chart] = -eval(s.grad[k], z0) / g_chart;
    state.push_back(std::move(col));
  }
  auto frame_of = [](const std::vector<Point>& st) { return std::vector<Point>(st.begin() + 1, st.end()); };
  const cd omega0 = volume_form_value(s, z0, frame_of(state));

  System sys(s, v);
  FlowResult r;
  r.drift = p0;
  auto sample = [&](double t, const std::vector<Point>& st) {
    FlowSample smp;
    smp.t = t;
    smp.z = st[0];
    smp.abs_p = std::abs(eval(s.p, st[0]));
    smp.volume_ratio = volume_form_value(s, st[0], frame_of(st)) / omega0;
    return smp;
  };
  if (options.trace_every > 0) r.trace.push_back(sample(0, state));

  const double h = t_final / static_cast<double>(steps);
  for (std::size_t step = 1; step <= steps; ++step) {
    auto k1 = sys.rhs(state);
    auto k2 = sys.rhs(axpy(state, h / 2, k1));
    auto k3 = sys.rhs(axpy(state, h / 2, k2));
    auto k4 = sys.rhs(axpy(state, h, k3));
    for (std::size_t c = 0; c < state.size(); ++c) {
      for (std::size_t a = 0; a < n; ++a) {
        state[c][a] += h / 6 * (k1[c][a] + 2.0 * k2[c][a] + 2.0 * k3[c][a] + k4[c][a]);
      }
    }
    r.steps_taken = step;
    const double nz = norm(state[0]);
    if (!std::isfinite(nz) || nz > options.blowup_norm) {
      r.blew_up = true;
      break;
    }
    FlowSample smp = sample(h * static_cast<double>(step), state);
    r.drift = std::max(r.drift, smp.abs_p);
    r.volume_distortion = std::max(r.volume_distortion, std::abs(smp.volume_ratio - 1.0));
    if (options.trace_every > 0 && (step % options.trace_every == 0 || step == steps)) {
      r.trace.push_back(std::move(smp));
    }
  }
  r.endpoint = state[0];
  return r;
}

namespace {

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double m = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

// log-log slope over the entries above the rounding floor
double fitted_order(const std::vector<std::size_t>& steps, const std::vector<double>& err, double t) {
  constexpr double kFloor = 1e-13;
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (err[i] > kFloor) {
      lx.push_back(std::log(t / static_cast<double>(steps[i])));
      ly.push_back(std::log(err[i]));
    }
  }
  if (lx.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  return slope(lx, ly);
}

}  // namespace

ConvergenceEstimate convergence_order(const Surface& s, const VectorField& v, std::span<const cd> start,
                                      double t_final, std::size_t base_steps, std::size_t levels,
                                      const FlowOptions& options) {
  if (levels < 2) throw std::invalid_argument("convergence_order needs at least two levels");
  ConvergenceEstimate est;
  std::size_t finest = base_steps << (levels - 1);
  est.reference_steps = finest * 16;
  const Point ref = flow_rk4(s, v, start, t_final, est.reference_steps, options).endpoint;
  for (std::size_t l = 0; l < levels; ++l) {
    const std::size_t k = base_steps << l;
    FlowResult r = flow_rk4(s, v, start, t_final, k, options);
    Point diff(ref.size());
    for (std::size_t a = 0; a < ref.size(); ++a) diff[a] = r.endpoint[a] - ref[a];
    est.steps.push_back(k);
    est.endpoint_errors.push_back(norm(diff));
    est.drifts.push_back(r.drift);
  }
  est.order = fitted_order(est.steps, est.endpoint_errors, t_final);
  est.drift_order = fitted_order(est.steps, est.drifts, t_final);
  return est;
}

}  // namespace vdp::forms
