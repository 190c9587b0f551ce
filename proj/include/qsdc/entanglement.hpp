// Negativity-versus-time analysis: closed-form curves for the named channels,
// entanglement-death root finding (closed-form and integrated dynamics), and
// the noisy-rotation sweeps behind the death-time tables.
#pragma once

#include <optional>
#include <vector>

#include "qsdc/channels.hpp"

namespace qsdc {

// Closed-form negativity of the channel output on the shared Bell pair.
// t is total elapsed time; for the two-leg AZBZ composite the legs last t/2
// each. Every ChannelTag has a curve.
double closed_negativity(ChannelKind kind, double gamma, double t);

struct EsdResult {
  std::optional<double> tau_d;  // empty: no death within the horizon
  double bracket_lo = 0.0;      // negativity > 0 here ...
  double bracket_hi = 0.0;      // ... and 0 here, when died()
  double residual = 0.0;        // negativity at the reported root
  double horizon = 0.0;

  bool died() const { return tau_d.has_value(); }
};

// First zero of the closed negativity curve: 200-point bracket scan, then
// bisection to 1e-9 * horizon. horizon <= 0 selects 20/gamma.
EsdResult esd_time(ChannelKind kind, double gamma, double horizon = 0.0);

enum class RotationNoise { Phase, Amplitude };

// A coherent rotation of qubit A about one axis while that qubit's
// environment acts: H = (omega0/2) sigma_axis (x) sigma0, noise generator
// sigma3 (x) sigma0 (phase) or sigma- (x) sigma0 (amplitude), rate gamma.
struct RotationSpec {
  int axis = 1;  // 1..3
  double omega0 = 1.0;
  RotationNoise noise = RotationNoise::Phase;
  double gamma = 0.0;

  double omega() const;  // sqrt(omega0^2 - gamma^2), underdamped regime only
};

EvolutionSpec rotation_problem(const RotationSpec& spec);

// evolve() with a step fine enough for the faster of the rotation and decay
// timescales (overridable).
TwoQubitState noisy_rotation(const TwoQubitState& rho0,
                             const RotationSpec& spec, double t,
                             double step = 0.0);

// First negativity zero of the rotated-and-decohered Bell pair. Marches the
// integrator across 2000 grid nodes with sub-steps tied to max(omega0,
// 2 gamma), checking the smallest partial-transpose eigenvalue often enough
// to catch narrow death windows, then bisects by re-integration.
EsdResult esd_time(const RotationSpec& spec, double horizon = 0.0);

// Death time of the axis-1 phase-noise rotation as the smallest positive
// root of  e^{-2gt} + (2e^{-gt}/w) sqrt(omega0^2 - g^2 cos^2 wt) - 1,
// w = sqrt(omega0^2 - g^2). Only valid underdamped (omega0 > gamma);
// otherwise throws and the integrated esd_time path applies.
EsdResult rotation_esd_root_phase_x(double gamma, double omega0,
                                    double horizon = 0.0);

struct TauCell {
  double gamma = 0.0;
  double omega0 = 0.0;
  EsdResult esd;
};

// Death times of the axis-1 rotation across omega0 values. Phase noise uses
// the closed root equation where it is valid, the integrator elsewhere;
// amplitude noise has no closed form and always integrates.
std::vector<TauCell> table_tau_d(RotationNoise noise, double gamma,
                                 const std::vector<double>& omega0s,
                                 int jobs = 0);

}  // namespace qsdc
