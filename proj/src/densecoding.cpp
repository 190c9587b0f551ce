#include "qsdc/densecoding.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace qsdc {

namespace {

double xlg(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

// coef * log2(arg); coef and arg reach zero together in the closed forms.
double clg(double coef, double arg) {
  return coef > 0.0 ? coef * std::log2(arg) : 0.0;
}

void renorm_trace(Mat4& rho) {
  const double tr = trace(rho).real();
  if (std::abs(tr - 1.0) > kTol.trace_renorm) rho = cplx{1.0 / tr, 0.0} * rho;
}

constexpr double kGolden = 0.6180339887498949;  // (sqrt(5)-1)/2

}  // namespace

double holevo(const AlphabetEnsemble& e) {
  Mat4 mean{};
  double avg_entropy = 0.0;
  for (const TwoQubitState& x : e.letters) {
    axpy(0.25, x.matrix(), mean);
    avg_entropy += 0.25 * von_neumann_entropy(x.matrix());
  }
  const double h = von_neumann_entropy(mean) - avg_entropy;
  if (h < -1e-9) {
    char msg[96];
    std::snprintf(msg, sizeof(msg), "holevo: negative value %.3e", h);
    throw std::logic_error(msg);
  }
  return std::max(0.0, h);
}

double capacity_bowen(const TwoQubitState& rho) {
  const Mat2 marginal_b = partial_trace(rho.matrix(), Subsystem::A);
  return 1.0 + von_neumann_entropy(marginal_b) -
         von_neumann_entropy(rho.matrix());
}

AlphabetEnsemble alphabet_pauli(ChannelTag kind, double gamma, double t0) {
  if (kind != ChannelTag::Z && kind != ChannelTag::X && kind != ChannelTag::XZ)
    throw std::invalid_argument("alphabet_pauli: kind must be Z, X or XZ");

  const TwoQubitState bell = TwoQubitState::trusted(bell_state());
  const TwoQubitState chi =
      analytic_apply(ChannelKind(kind, Subsystem::B), gamma, t0, bell);
  const TwoQubitState collapsed =
      analytic_apply(ChannelKind(kind, Subsystem::B), gamma, 2.0 * t0, bell);

  AlphabetEnsemble e;
  for (int m = 0; m < 4; ++m) {
    const TwoQubitState encoded =
        TwoQubitState::trusted(pauli_encode(m, chi.matrix()));
    e.letters[static_cast<std::size_t>(m)] =
        analytic_apply(ChannelKind(kind, Subsystem::A), gamma, t0, encoded);

    // The two channel legs commute with the encoding into one double-length
    // leg; this is the symmetry the closed capacity formula rests on.
    const Mat4 direct = pauli_encode(m, collapsed.matrix());
    const double defect =
        max_abs_diff(e.letters[static_cast<std::size_t>(m)].matrix(), direct);
    if (defect > kTol.consistency) {
      char msg[128];
      std::snprintf(msg, sizeof(msg),
                    "alphabet_pauli: collapsed-form mismatch %.3e for m=%d",
                    defect, m);
      throw std::logic_error(msg);
    }
  }
  return e;
}

double capacity_closed(ChannelTag kind, double gamma, double total_time) {
  if (gamma < 0.0 || total_time < 0.0)
    throw std::invalid_argument("capacity_closed: negative parameter");
  const double w = std::exp(-2.0 * gamma * total_time);
  switch (kind) {
    case ChannelTag::Z:
      return 2.0 + xlg(0.5 * (1.0 - w)) + xlg(0.5 * (1.0 + w));
    case ChannelTag::XZ:
      return 2.0 + clg(0.5 * (1.0 - w * w), 0.25 * (1.0 - w * w)) +
             clg(0.5 * (1.0 - w) * (1.0 - w), 0.5 * (1.0 - w)) +
             clg(0.5 * (1.0 + w) * (1.0 + w), 0.5 * (1.0 + w));
    default:
      throw std::invalid_argument("capacity_closed: no closed form for kind");
  }
}

AlphabetEnsemble alphabet_amp_phase(double gamma, double t0) {
  const TwoQubitState bell = TwoQubitState::trusted(bell_state());
  const TwoQubitState chi =
      analytic_apply(ChannelKind(ChannelTag::BZ), gamma, t0, bell);
  AlphabetEnsemble e;
  for (int m = 0; m < 4; ++m) {
    const TwoQubitState encoded =
        TwoQubitState::trusted(pauli_encode(m, chi.matrix()));
    e.letters[static_cast<std::size_t>(m)] =
        analytic_apply(ChannelKind(ChannelTag::AZ), gamma, t0, encoded);
  }
  return e;
}

ChannelKind return_leg_kind(ChannelKind leg_one) {
  if (retargetable(leg_one.tag)) {
    if (leg_one.qubit != Subsystem::B)
      throw std::invalid_argument("return_leg_kind: leg one must act on qubit B");
    return ChannelKind(leg_one.tag, Subsystem::A);
  }
  switch (leg_one.tag) {
    case ChannelTag::B:
      return ChannelKind(ChannelTag::A);
    case ChannelTag::BZ:
      return ChannelKind(ChannelTag::AZ);
    default:
      throw std::invalid_argument(
          "return_leg_kind: no A-side counterpart for this kind");
  }
}

AlphabetEnsemble alphabet_noisy_encoding(
    RotationNoise noise, double gamma, double omega0, double t_encode,
    const std::optional<Transmission>& transmission) {
  TwoQubitState chi = TwoQubitState::trusted(bell_state());
  if (transmission)
    chi = analytic_apply(transmission->kind, transmission->gamma,
                         transmission->t0, chi);

  auto return_leg = [&](const TwoQubitState& s) {
    if (!transmission) return s;
    return analytic_apply(return_leg_kind(transmission->kind),
                          transmission->gamma, transmission->t0, s);
  };

  AlphabetEnsemble e;
  e.letters[0] = return_leg(chi);
  for (int m = 1; m < 4; ++m) {
    const RotationSpec spec{m, omega0, noise, gamma};
    e.letters[static_cast<std::size_t>(m)] =
        return_leg(noisy_rotation(chi, spec, t_encode));
  }
  return e;
}

EncodingCurve::EncodingCurve(RotationNoise noise, double gamma, double omega0,
                             double t_hi,
                             std::optional<Transmission> transmission,
                             int nodes)
    : gamma_(gamma),
      t_hi_(t_hi),
      nodes_(nodes),
      transmission_(std::move(transmission)) {
  if (t_hi <= 0.0) throw std::invalid_argument("EncodingCurve: t_hi must be positive");
  if (nodes < 16) throw std::invalid_argument("EncodingCurve: too few nodes");

  Mat4 chi = bell_state();
  if (transmission_)
    chi = analytic_apply(transmission_->kind, transmission_->gamma,
                         transmission_->t0, TwoQubitState::trusted(chi))
              .matrix();
  x0_ = chi;
  if (transmission_)
    x0_ = analytic_apply(return_leg_kind(transmission_->kind),
                         transmission_->gamma, transmission_->t0,
                         TwoQubitState::trusted(x0_))
              .matrix();
  s0_ = von_neumann_entropy(x0_);

  for (int axis = 1; axis <= 3; ++axis)
    rhs_.emplace_back(rotation_problem(RotationSpec{axis, omega0, noise, gamma}));

  node_dt_ = t_hi_ / nodes_;
  const double rate = std::max({omega0, 2.0 * gamma, 1e-6});
  sub_ = std::max(1, static_cast<int>(std::ceil(node_dt_ * rate / 0.02 - 1e-12)));
  h_ = node_dt_ / sub_;

  std::array<Mat4, 3> rotated{chi, chi, chi};
  snapshots_.reserve(static_cast<std::size_t>(nodes_) + 1);
  node_values_.reserve(static_cast<std::size_t>(nodes_) + 1);
  snapshots_.push_back(rotated);
  node_values_.push_back(holevo_from(rotated));
  for (int node = 1; node <= nodes_; ++node) {
    for (int s = 0; s < sub_; ++s) {
      for (int a = 0; a < 3; ++a) {
        Mat4& rho = rotated[static_cast<std::size_t>(a)];
        rho = rk4_step(rhs_[static_cast<std::size_t>(a)], rho, h_);
        renorm_trace(rho);
      }
    }
    snapshots_.push_back(rotated);
    node_values_.push_back(holevo_from(rotated));
  }
}

double EncodingCurve::node_time(int i) const {
  return t_hi_ * static_cast<double>(i) / nodes_;
}

std::array<Mat4, 3> EncodingCurve::letters_at(double t) const {
  if (t < 0.0 || t > t_hi_ * (1.0 + 1e-12))
    throw std::invalid_argument("EncodingCurve: query outside [0, t_hi]");
  int k = std::min(static_cast<int>(std::floor(t / node_dt_)), nodes_);
  std::array<Mat4, 3> rotated = snapshots_[static_cast<std::size_t>(k)];
  const double span = t - node_time(k);
  if (span <= 0.0) return rotated;
  const int full = static_cast<int>(std::floor(span / h_));
  const double rem = span - full * h_;
  for (int a = 0; a < 3; ++a) {
    Mat4& rho = rotated[static_cast<std::size_t>(a)];
    for (int s = 0; s < full; ++s) {
      rho = rk4_step(rhs_[static_cast<std::size_t>(a)], rho, h_);
      renorm_trace(rho);
    }
    if (rem > 1e-15) {
      rho = rk4_step(rhs_[static_cast<std::size_t>(a)], rho, rem);
      renorm_trace(rho);
    }
  }
  return rotated;
}

double EncodingCurve::holevo_from(const std::array<Mat4, 3>& rotated) const {
  Mat4 mean = x0_;
  double avg_entropy = s0_;
  for (const Mat4& raw : rotated) {
    Mat4 letter = raw;
    if (transmission_)
      letter = analytic_apply(return_leg_kind(transmission_->kind),
                              transmission_->gamma, transmission_->t0,
                              TwoQubitState::trusted(letter))
                   .matrix();
    mean = mean + letter;
    avg_entropy += von_neumann_entropy(letter);
  }
  mean = cplx{0.25, 0.0} * mean;
  return std::max(0.0, von_neumann_entropy(mean) - 0.25 * avg_entropy);
}

double EncodingCurve::value_at(double t) const {
  return holevo_from(letters_at(t));
}

double EncodingCurve::shared_negativity(double t) const {
  return negativity(letters_at(t)[0]);
}

namespace {

CurveMax refine_first_max(const std::function<double(double)>& curve,
                          const std::vector<double>& times,
                          const std::vector<double>& values) {
  const std::size_t n = values.size();
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (values[i] >= values[i - 1] && values[i] > values[i + 1]) {
      double a = times[i - 1], b = times[i + 1];
      double c = b - kGolden * (b - a), d = a + kGolden * (b - a);
      double fc = curve(c), fd = curve(d);
      while (b - a > 1e-6) {
        if (fc > fd) {
          b = d;
          d = c;
          fd = fc;
          c = b - kGolden * (b - a);
          fc = curve(c);
        } else {
          a = c;
          c = d;
          fc = fd;
          d = a + kGolden * (b - a);
          fd = curve(d);
        }
      }
      const double t_star = 0.5 * (a + b);
      return CurveMax{t_star, curve(t_star)};
    }
  }
  return CurveMax{std::nullopt, *std::max_element(values.begin(), values.end())};
}

}  // namespace

CurveMax first_maximum(const std::function<double(double)>& curve, double t_hi,
                       int grid) {
  if (t_hi <= 0.0 || grid < 8)
    throw std::invalid_argument("first_maximum: bad search window");
  std::vector<double> times(static_cast<std::size_t>(grid) + 1);
  std::vector<double> values(static_cast<std::size_t>(grid) + 1);
  for (int i = 0; i <= grid; ++i) {
    times[static_cast<std::size_t>(i)] = t_hi * static_cast<double>(i) / grid;
    values[static_cast<std::size_t>(i)] = curve(times[static_cast<std::size_t>(i)]);
  }
  return refine_first_max(curve, times, values);
}

CurveMax first_maximum(const EncodingCurve& curve) {
  std::vector<double> times(static_cast<std::size_t>(curve.nodes()) + 1);
  for (int i = 0; i <= curve.nodes(); ++i)
    times[static_cast<std::size_t>(i)] = curve.node_time(i);
  return refine_first_max([&](double t) { return curve.value_at(t); }, times,
                          curve.node_values());
}

CriticalOmega critical_omega(RotationNoise noise, double gamma) {
  if (gamma <= 0.0)
    throw std::invalid_argument("critical_omega: gamma must be positive");
  const double horizon = 20.0 / gamma;

  auto peak = [&](double omega0) {
    return first_maximum(EncodingCurve(noise, gamma, omega0, horizon));
  };

  // Geometric ladder to bracket the threshold; below-threshold curves may
  // have no interior maximum at all, in which case the grid supremum stands
  // in for the comparison.
  std::vector<double> ladder{0.1, 0.2, 0.4, 0.8, 1.6, 3.2, 6.4};
  double lo = 0.0, hi = 0.0;
  CurveMax hi_max;
  double prev = 0.0;
  bool prev_set = false;
  for (double w0 : ladder) {
    const CurveMax m = peak(w0);
    if (m.value >= 1.0) {
      if (!prev_set) {
        // Extend downward for very weak noise.
        double down = 0.5 * w0;
        while (down > 1e-3) {
          const CurveMax md = peak(down);
          if (md.value < 1.0) {
            prev = down;
            prev_set = true;
            break;
          }
          down *= 0.5;
        }
        if (!prev_set)
          throw std::runtime_error(
              "critical_omega: threshold below the scanned range");
      }
      lo = prev;
      hi = w0;
      hi_max = m;
      break;
    }
    prev = w0;
    prev_set = true;
  }
  if (hi == 0.0) {
    char msg[128];
    std::snprintf(msg, sizeof(msg),
                  "critical_omega: no bracket in omega0 range [%g, %g]",
                  ladder.front(), ladder.back());
    throw std::runtime_error(msg);
  }

  for (int iter = 0; iter < 80; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const CurveMax m = peak(mid);
    if (std::abs(m.value - 1.0) <= 1e-4) {
      CriticalOmega out;
      out.omega_c = mid;
      out.tau_c = m.t.value_or(horizon);
      out.value = m.value;
      return out;
    }
    if (m.value < 1.0)
      lo = mid;
    else {
      hi = mid;
      hi_max = m;
    }
  }
  throw std::runtime_error("critical_omega: bisection failed to settle");
}

CriticalTimeResult critical_time(CapacityFamily family, double gamma) {
  if (gamma <= 0.0)
    throw std::invalid_argument("critical_time: gamma must be positive");
  const double horizon = 20.0 / gamma;

  auto value = [&](double total) {
    switch (family) {
      case CapacityFamily::Z:
        return capacity_closed(ChannelTag::Z, gamma, total);
      case CapacityFamily::XZ:
        return capacity_closed(ChannelTag::XZ, gamma, total);
      case CapacityFamily::AmpPhase:
        return holevo(alphabet_amp_phase(gamma, 0.5 * total));
    }
    throw std::invalid_argument("critical_time: unknown family");
  };

  // A 1-ulp dip below 1 must not count as a crossing: the Z curve reaches 1
  // only asymptotically.
  const double edge = 1.0 - 1e-12;
  const int grid = 400;
  const double tol = std::min(1e-6, 1e-9 * horizon);

  CriticalTimeResult res;
  double prev_t = 0.0;
  for (int i = 1; i <= grid; ++i) {
    const double t = horizon * i / grid;
    if (value(t) < edge) {
      double lo = prev_t, hi = t;
      while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (value(mid) < edge ? hi : lo) = mid;
      }
      res.tau_c = hi;
      break;
    }
    prev_t = t;
  }
  if (!res.tau_c) return res;

  EsdResult death;
  switch (family) {
    case CapacityFamily::Z:
      death = esd_time(ChannelKind(ChannelTag::Z), gamma);
      break;
    case CapacityFamily::XZ:
      death = esd_time(ChannelKind(ChannelTag::XZ), gamma);
      break;
    case CapacityFamily::AmpPhase:
      death = esd_time(ChannelKind(ChannelTag::AZBZ), gamma);
      break;
  }
  if (death.died()) res.death_to_critical_ratio = *death.tau_d / *res.tau_c;
  return res;
}

}  // namespace qsdc
