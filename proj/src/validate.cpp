#include "qsdc/validate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <random>

#include "qsdc/channels.hpp"
#include "qsdc/densecoding.hpp"
#include "qsdc/entanglement.hpp"
#include "qsdc/parallel.hpp"
#include "qsdc/qstate.hpp"

namespace qsdc {

namespace {

constexpr std::array<ChannelTag, 9> kGeneratorKinds{
    ChannelTag::Z, ChannelTag::X,  ChannelTag::XZ,
    ChannelTag::Depol, ChannelTag::B, ChannelTag::A,
    ChannelTag::BZ, ChannelTag::AZ, ChannelTag::BX};

constexpr std::array<ChannelTag, 10> kAllKinds{
    ChannelTag::Z,  ChannelTag::X,  ChannelTag::XZ, ChannelTag::Depol,
    ChannelTag::B,  ChannelTag::A,  ChannelTag::BZ, ChannelTag::AZ,
    ChannelTag::BX, ChannelTag::AZBZ};

Mat4 ginibre_state(std::mt19937& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat4 g{};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) g.at(r, c) = cplx{gauss(rng), gauss(rng)};
  Mat4 rho = g * dagger(g);
  return cplx{1.0 / trace(rho).real(), 0.0} * rho;
}

Mat2 haar_su2(std::mt19937& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  double a = gauss(rng), b = gauss(rng), c = gauss(rng), d = gauss(rng);
  const double n = std::sqrt(a * a + b * b + c * c + d * d);
  a /= n; b /= n; c /= n; d /= n;
  Mat2 u{};
  u.at(0, 0) = cplx{a, b};
  u.at(0, 1) = cplx{c, d};
  u.at(1, 0) = cplx{-c, d};
  u.at(1, 1) = cplx{a, -b};
  return u;
}

std::string fmt(const char* pattern, double x, double y) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), pattern, x, y);
  return buf;
}

SuiteResult channel_oracles(const ValidationOptions& opts) {
  SuiteResult res{"channel-oracles", false, ""};
  const double tol = 1e-8 * opts.tolerance_scale;
  std::array<double, kGeneratorKinds.size()> worst{};
  try {
    parallel_for(static_cast<int>(kGeneratorKinds.size()), opts.jobs, [&](int k) {
      const ChannelTag tag = kGeneratorKinds[static_cast<std::size_t>(k)];
      std::mt19937 rng(opts.seed + 977u * static_cast<unsigned>(k));
      std::uniform_real_distribution<double> gdist(0.2, 1.5);
      std::uniform_real_distribution<double> udist(0.05, 3.0);
      double local = 0.0;
      for (int trial = 0; trial < 12; ++trial) {
        const double gamma = gdist(rng);
        const double t = udist(rng) / gamma;
        const EvolutionSpec spec = lindblad_spec(ChannelKind(tag), gamma);
        std::array<Mat4, 3> states{bell_state(), ginibre_state(rng),
                                   ginibre_state(rng)};
        for (const Mat4& s : states) {
          const TwoQubitState in = TwoQubitState::checked(s);
          const Mat4 fast = analytic_apply(ChannelKind(tag), gamma, t, in).matrix();
          const Mat4 slow = evolve(in, spec, t, t / 1000.0).matrix();
          local = std::max(local, max_abs_diff(fast, slow));
        }
      }
      worst[static_cast<std::size_t>(k)] = local;
    });
  } catch (const std::exception& e) {
    res.detail = e.what();
    return res;
  }
  const double m = *std::max_element(worst.begin(), worst.end());
  res.pass = m <= tol;
  res.detail = fmt("max |analytic - integrated| = %.3e (tol %.1e)", m, tol);
  return res;
}

SuiteResult kraus_completeness(const ValidationOptions& opts) {
  SuiteResult res{"kraus-completeness", false, ""};
  const double tol = 1e-12 * opts.tolerance_scale;
  double worst = 0.0;
  double worst_state = 0.0;
  try {
    std::mt19937 rng(opts.seed + 5);
    for (ChannelTag tag : kAllKinds) {
      for (double gamma : {0.3, 1.0, 2.5}) {
        for (double gt : {0.05, 0.5, 1.0, 2.0}) {
          const double t = gt / gamma;
          const KrausSet ks = kraus_for(ChannelKind(tag), gamma, t);
          worst = std::max(worst, ks.completeness_defect());
          for (const Mat4& s : {bell_state(), ginibre_state(rng)}) {
            const StateDefect d = check_state(apply_kraus(ks, s));
            worst_state = std::max({worst_state, d.hermiticity, d.trace_dev,
                                    std::max(0.0, -d.min_eigenvalue)});
          }
        }
      }
    }
  } catch (const std::exception& e) {
    res.detail = e.what();
    return res;
  }
  const double m = std::max(worst, worst_state);
  res.pass = m <= tol;
  res.detail =
      fmt("max completeness/output defect = %.3e (tol %.1e)", m, tol);
  return res;
}

SuiteResult semigroup_composition(const ValidationOptions& opts) {
  SuiteResult res{"semigroup-composition", false, ""};
  const double tol = 1e-10 * opts.tolerance_scale;
  double worst = 0.0;
  try {
    std::mt19937 rng(opts.seed + 11);
    for (ChannelTag tag : kAllKinds) {
      for (double gamma : {0.4, 1.3}) {
        for (auto [u1, u2] : {std::pair{0.1, 0.3}, {0.5, 0.7}, {1.0, 0.2}}) {
          const double t1 = u1 / gamma, t2 = u2 / gamma;
          for (const Mat4& s : {bell_state(), ginibre_state(rng)}) {
            const TwoQubitState in = TwoQubitState::checked(s);
            const Mat4 whole =
                analytic_apply(ChannelKind(tag), gamma, t1 + t2, in).matrix();
            const Mat4 split = compose({ChannelKind(tag), gamma, t1},
                                       {ChannelKind(tag), gamma, t2}, in)
                                   .matrix();
            worst = std::max(worst, max_abs_diff(whole, split));
          }
        }
      }
    }
  } catch (const std::exception& e) {
    res.detail = e.what();
    return res;
  }
  res.pass = worst <= tol;
  res.detail = fmt("max |E(t1+t2) - E(t2)E(t1)| = %.3e (tol %.1e)", worst, tol);
  return res;
}

SuiteResult local_unitary_invariance(const ValidationOptions& opts) {
  SuiteResult res{"local-unitary-invariance", false, ""};
  const double tol = 1e-10 * opts.tolerance_scale;
  double worst = 0.0;
  try {
    std::mt19937 rng(opts.seed + 23);
    for (int trial = 0; trial < 100; ++trial) {
      const Mat4 rho = ginibre_state(rng);
      const Mat4 u = tensor(haar_su2(rng), haar_su2(rng));
      const Mat4 rotated = u * rho * dagger(u);
      worst = std::max(worst, std::abs(negativity(rho) - negativity(rotated)));
      worst = std::max(worst, std::abs(von_neumann_entropy(rho) -
                                       von_neumann_entropy(rotated)));
    }
  } catch (const std::exception& e) {
    res.detail = e.what();
    return res;
  }
  res.pass = worst <= tol;
  res.detail = fmt("max invariance defect = %.3e (tol %.1e)", worst, tol);
  return res;
}

SuiteResult integrator_order(const ValidationOptions&) {
  SuiteResult res{"integrator-order", false, ""};
  try {
    const double gamma = 1.0, t = 1.0;
    const TwoQubitState in = TwoQubitState::trusted(bell_state());
    const EvolutionSpec spec = lindblad_spec(ChannelKind(ChannelTag::XZ), gamma);
    const Mat4 exact =
        analytic_apply(ChannelKind(ChannelTag::XZ), gamma, t, in).matrix();
    const double e1 =
        max_abs_diff(evolve(in, spec, t, t / 50.0).matrix(), exact);
    const double e2 =
        max_abs_diff(evolve(in, spec, t, t / 100.0).matrix(), exact);
    const double order = std::log2(e1 / e2);
    res.pass = std::isfinite(order) && order >= 3.7;
    res.detail = fmt("observed order %.3f (e(h)=%.3e)", order, e1);
  } catch (const std::exception& e) {
    res.detail = e.what();
  }
  return res;
}

SuiteResult capacity_consistency(const ValidationOptions& opts) {
  SuiteResult res{"capacity-consistency", false, ""};
  const double tol = 1e-8 * opts.tolerance_scale;
  double worst = 0.0;
  try {
    const TwoQubitState bell = TwoQubitState::trusted(bell_state());
    for (ChannelTag tag : {ChannelTag::Z, ChannelTag::X, ChannelTag::XZ}) {
      for (double gamma : {0.5, 1.0}) {
        for (double t0 : {0.02, 0.06, 0.12}) {
          const double a = holevo(alphabet_pauli(tag, gamma, t0));
          const double b = capacity_bowen(
              analytic_apply(ChannelKind(tag), gamma, 2.0 * t0, bell));
          worst = std::max(worst, std::abs(a - b));
          if (tag != ChannelTag::X) {
            const double c = capacity_closed(tag, gamma, 2.0 * t0);
            worst = std::max(worst, std::abs(a - c));
          }
        }
      }
    }
  } catch (const std::exception& e) {
    res.detail = e.what();
    return res;
  }
  res.pass = worst <= tol;
  res.detail = fmt("max capacity mismatch = %.3e (tol %.1e)", worst, tol);
  return res;
}

SuiteResult holevo_range(const ValidationOptions& opts) {
  SuiteResult res{"holevo-range", false, ""};
  const double tol = 1e-9 * opts.tolerance_scale;
  double lo = 2.0, hi = 0.0, ideal = 0.0;
  try {
    AlphabetEnsemble perfect;
    for (int m = 0; m < 4; ++m)
      perfect.letters[static_cast<std::size_t>(m)] =
          TwoQubitState::trusted(pauli_encode(m, bell_state()));
    ideal = holevo(perfect);

    std::vector<double> values{ideal};
    for (double gt : {0.05, 0.3, 1.0}) {
      values.push_back(holevo(alphabet_pauli(ChannelTag::Z, 1.0, gt)));
      values.push_back(holevo(alphabet_pauli(ChannelTag::XZ, 1.0, gt)));
      values.push_back(holevo(alphabet_amp_phase(1.0, gt)));
    }
    values.push_back(
        holevo(alphabet_noisy_encoding(RotationNoise::Phase, 0.1, 1.0, 2.0)));
    values.push_back(holevo(alphabet_noisy_encoding(
        RotationNoise::Phase, 0.1, 1.0, 2.0,
        Transmission{ChannelKind(ChannelTag::Z), 0.1, 0.3})));
    for (double v : values) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  } catch (const std::exception& e) {
    res.detail = e.what();
    return res;
  }
  res.pass = lo >= -tol && hi <= 2.0 + tol && std::abs(ideal - 2.0) <= tol;
  res.detail = fmt("values in [%.6f, %.6f], ideal alphabet = 2", lo, hi);
  return res;
}

SuiteResult combined_noise_ordering(const ValidationOptions& opts) {
  SuiteResult res{"combined-noise-ordering", false, ""};
  const double tol = 1e-9 * opts.tolerance_scale;
  double worst = -1.0;
  try {
    const double gamma = 0.1, omega0 = 1.0, t_hi = 9.4;
    const int nodes = 600;
    const EncodingCurve plain(RotationNoise::Phase, gamma, omega0, t_hi,
                              std::nullopt, nodes);
    const EncodingCurve combined(
        RotationNoise::Phase, gamma, omega0, t_hi,
        Transmission{ChannelKind(ChannelTag::Z), 0.1, 0.4}, nodes);
    for (int i = 0; i <= nodes; ++i)
      worst = std::max(worst, combined.node_values()[static_cast<std::size_t>(i)] -
                                  plain.node_values()[static_cast<std::size_t>(i)]);
  } catch (const std::exception& e) {
    res.detail = e.what();
    return res;
  }
  res.pass = worst <= tol;
  res.detail =
      fmt("max (combined - encoding-only) = %.3e (tol %.1e)", worst, tol);
  return res;
}

}  // namespace

std::vector<SuiteResult> run_validation(const ValidationOptions& opts) {
  std::vector<SuiteResult> out;
  out.push_back(channel_oracles(opts));
  out.push_back(kraus_completeness(opts));
  out.push_back(semigroup_composition(opts));
  out.push_back(local_unitary_invariance(opts));
  out.push_back(integrator_order(opts));
  out.push_back(capacity_consistency(opts));
  out.push_back(holevo_range(opts));
  out.push_back(combined_noise_ordering(opts));
  return out;
}

bool all_passed(const std::vector<SuiteResult>& results) {
  for (const SuiteResult& r : results)
    if (!r.pass) return false;
  return true;
}

}  // namespace qsdc
