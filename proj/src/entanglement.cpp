#include "qsdc/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qsdc/parallel.hpp"

namespace qsdc {

namespace {

constexpr double kPi = 3.14159265358979323846;

// The curve before clamping at zero; its sign change is the death time.
// BZ/AZ is evaluated in rationalized form: the naive difference of the
// square root and (1-u) underflows to an exact spurious zero near gt ~ 8.
double signed_curve(ChannelTag tag, double g, double t) {
  switch (tag) {
    case ChannelTag::Z:
    case ChannelTag::X:
      return std::exp(-2.0 * g * t);
    case ChannelTag::B:
    case ChannelTag::A:
      return std::exp(-g * t);
    case ChannelTag::XZ: {
      const double w = std::exp(-2.0 * g * t);
      return 0.5 * ((1.0 + w) * (1.0 + w) - 2.0);
    }
    case ChannelTag::Depol:
      return 0.5 * (3.0 * std::exp(-4.0 * g * t) - 1.0);
    case ChannelTag::BX:
      return (3.0 * std::exp(-3.0 * g * t) +
              std::sqrt(2.0) * std::exp(-1.5 * g * t) *
                  std::sqrt(8.0 + 9.0 * std::cosh(2.0 * g * t) +
                            std::cosh(3.0 * g * t)) -
              3.0) /
             6.0;
    case ChannelTag::BZ:
    case ChannelTag::AZ: {
      const double u = std::exp(-g * t);
      const double v2 = std::exp(-5.0 * g * t);
      const double d = 1.0 - u;
      return 2.0 * v2 / (std::sqrt(d * d + 4.0 * v2) + d);
    }
    case ChannelTag::AZBZ: {
      const double s = 0.5 * t;  // per-leg duration
      const double u = std::exp(-g * s);
      return u * (u + std::exp(-4.0 * g * s) - 1.0);
    }
  }
  throw std::invalid_argument("signed_curve: unknown channel");
}

double default_horizon(double gamma, double horizon, const char* where) {
  if (horizon > 0.0) return horizon;
  if (gamma <= 0.0) {
    std::string msg(where);
    throw std::invalid_argument(msg + ": explicit horizon required when gamma == 0");
  }
  return 20.0 / gamma;
}

void renorm_trace(Mat4& rho) {
  const double tr = trace(rho).real();
  if (std::abs(tr - 1.0) > kTol.trace_renorm) rho = cplx{1.0 / tr, 0.0} * rho;
}

}  // namespace

double closed_negativity(ChannelKind kind, double gamma, double t) {
  if (gamma < 0.0 || t < 0.0)
    throw std::invalid_argument("closed_negativity: gamma and t must be nonnegative");
  return std::max(0.0, signed_curve(kind.tag, gamma, t));
}

EsdResult esd_time(ChannelKind kind, double gamma, double horizon) {
  if (gamma < 0.0) throw std::invalid_argument("esd_time: negative gamma");
  horizon = default_horizon(gamma, horizon, "esd_time");

  EsdResult res;
  res.horizon = horizon;
  const int grid = 200;
  double prev_t = 0.0;
  for (int i = 1; i <= grid; ++i) {
    const double t = horizon * i / grid;
    if (signed_curve(kind.tag, gamma, t) <= 0.0) {
      double lo = prev_t, hi = t;
      while (hi - lo > 1e-9 * horizon) {
        const double mid = 0.5 * (lo + hi);
        (signed_curve(kind.tag, gamma, mid) <= 0.0 ? hi : lo) = mid;
      }
      res.tau_d = hi;
      res.bracket_lo = lo;
      res.bracket_hi = hi;
      res.residual = closed_negativity(kind, gamma, hi);
      return res;
    }
    prev_t = t;
  }
  return res;
}

double RotationSpec::omega() const {
  if (omega0 <= gamma)
    throw std::invalid_argument(
        "RotationSpec::omega: overdamped regime (omega0 <= gamma)");
  return std::sqrt(omega0 * omega0 - gamma * gamma);
}

EvolutionSpec rotation_problem(const RotationSpec& spec) {
  if (spec.axis < 1 || spec.axis > 3)
    throw std::invalid_argument("rotation_problem: axis must be 1..3");
  if (spec.omega0 <= 0.0)
    throw std::invalid_argument("rotation_problem: omega0 must be positive");
  if (spec.gamma < 0.0)
    throw std::invalid_argument("rotation_problem: negative gamma");

  EvolutionSpec prob;
  prob.hamiltonian = cplx{0.5 * spec.omega0, 0.0} * embed(pauli(spec.axis), Subsystem::A);
  const Mat2& noise_op =
      spec.noise == RotationNoise::Phase ? pauli(3) : sigma_minus();
  prob.terms = {{embed(noise_op, Subsystem::A), spec.gamma}};
  return prob;
}

TwoQubitState noisy_rotation(const TwoQubitState& rho0,
                             const RotationSpec& spec, double t, double step) {
  if (step <= 0.0) {
    const double rate = std::max({spec.omega0, 2.0 * spec.gamma, 1e-6});
    step = std::min(t / 2000.0, 0.02 / rate);
  }
  return evolve(rho0, rotation_problem(spec), t, step);
}

EsdResult esd_time(const RotationSpec& spec, double horizon) {
  horizon = default_horizon(spec.gamma, horizon, "esd_time");
  EsdResult res;
  res.horizon = horizon;

  const RhsOperator rhs(rotation_problem(spec));
  const int nodes = 2000;
  const double node_dt = horizon / nodes;
  const double rate = std::max({spec.omega0, 2.0 * spec.gamma, 1e-6});
  const int sub = std::max(1, static_cast<int>(std::ceil(node_dt * rate / 0.02 - 1e-12)));
  const double h = node_dt / sub;
  const int check_stride =
      std::max(1, static_cast<int>(std::floor(kPi / (8.0 * rate) / h)));

  // Smallest partial-transpose eigenvalue at time t, re-integrated from a
  // stored node state. Used by the bisection refinement.
  auto lam_at = [&](const Mat4& from, double from_t, double t) {
    Mat4 r = from;
    const double span = t - from_t;
    const int full = static_cast<int>(std::floor(span / h));
    for (int s = 0; s < full; ++s) {
      r = rk4_step(rhs, r, h);
      renorm_trace(r);
    }
    const double rem = span - full * h;
    if (rem > 1e-15) {
      r = rk4_step(rhs, r, rem);
      renorm_trace(r);
    }
    return min_ptrans_eigenvalue(r);
  };

  Mat4 rho = bell_state();
  Mat4 node_rho = rho;
  double node_t = 0.0;
  double prev_check_t = 0.0;
  int since_check = 0;

  for (int node = 1; node <= nodes; ++node) {
    node_t = horizon * (node - 1) / nodes;
    for (int s = 1; s <= sub; ++s) {
      rho = rk4_step(rhs, rho, h);
      renorm_trace(rho);
      ++since_check;
      if (since_check < check_stride && s != sub) continue;
      since_check = 0;
      const double t_now = node_t + s * h;
      if (min_ptrans_eigenvalue(rho) >= 0.0) {
        double lo = prev_check_t, hi = t_now;
        while (hi - lo > 1e-9 * horizon) {
          const double mid = 0.5 * (lo + hi);
          (lam_at(node_rho, node_t, mid) >= 0.0 ? hi : lo) = mid;
        }
        res.tau_d = hi;
        res.bracket_lo = lo;
        res.bracket_hi = hi;
        res.residual = std::max(0.0, -2.0 * lam_at(node_rho, node_t, hi));
        return res;
      }
      prev_check_t = t_now;
    }
    node_rho = rho;
  }
  return res;
}

EsdResult rotation_esd_root_phase_x(double gamma, double omega0,
                                    double horizon) {
  if (gamma < 0.0 || omega0 <= 0.0)
    throw std::invalid_argument("rotation_esd_root_phase_x: bad parameters");
  if (omega0 <= gamma)
    throw std::invalid_argument(
        "rotation_esd_root_phase_x: overdamped regime (omega0 <= gamma); "
        "use the integrated esd_time instead");
  horizon = default_horizon(gamma, horizon, "rotation_esd_root_phase_x");

  const double w = std::sqrt(omega0 * omega0 - gamma * gamma);
  auto f = [&](double t) {
    const double c = std::cos(w * t);
    return std::exp(-2.0 * gamma * t) +
           2.0 * std::exp(-gamma * t) / w *
               std::sqrt(omega0 * omega0 - gamma * gamma * c * c) -
           1.0;
  };

  EsdResult res;
  res.horizon = horizon;
  long n = std::max(2000L, static_cast<long>(std::ceil(horizon / (kPi / (8.0 * w)))));
  n = std::min(n, 4000000L);
  const double tol = std::min(1e-6, std::max(1e-9 * horizon, 1e-13));

  double prev_t = 0.0;
  for (long i = 1; i <= n; ++i) {
    const double t = horizon * static_cast<double>(i) / static_cast<double>(n);
    if (f(t) <= 0.0) {
      double lo = prev_t, hi = t;
      while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) <= 0.0 ? hi : lo) = mid;
      }
      res.tau_d = hi;
      res.bracket_lo = lo;
      res.bracket_hi = hi;
      res.residual = 0.5 * std::max(0.0, f(hi));
      return res;
    }
    prev_t = t;
  }
  return res;
}

std::vector<TauCell> table_tau_d(RotationNoise noise, double gamma,
                                 const std::vector<double>& omega0s,
                                 int jobs) {
  if (gamma <= 0.0)
    throw std::invalid_argument("table_tau_d: gamma must be positive");
  // Slow drivings die as late as ~95/gamma, well past the default horizon.
  const double horizon = 120.0 / gamma;
  std::vector<TauCell> cells(omega0s.size());
  parallel_for(static_cast<int>(omega0s.size()), jobs, [&](int i) {
    const double w0 = omega0s[static_cast<std::size_t>(i)];
    TauCell& cell = cells[static_cast<std::size_t>(i)];
    cell.gamma = gamma;
    cell.omega0 = w0;
    if (noise == RotationNoise::Phase && w0 > gamma)
      cell.esd = rotation_esd_root_phase_x(gamma, w0, horizon);
    else
      cell.esd = esd_time(RotationSpec{1, w0, noise, gamma}, horizon);
  });
  return cells;
}

}  // namespace qsdc
