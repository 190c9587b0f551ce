// Dense coding over noisy links: four-letter Pauli alphabets, the Holevo
// bound, the shared-entanglement capacity formula, and the critical-time /
// critical-rate solvers for noisy transmission and noisy encoding.
#pragma once

#include <array>
#include <functional>
#include <optional>

#include "qsdc/entanglement.hpp"

namespace qsdc {

// Four letter states sent with probability 1/4 each.
struct AlphabetEnsemble {
  std::array<TwoQubitState, 4> letters{
      TwoQubitState::trusted(Mat4::zero()), TwoQubitState::trusted(Mat4::zero()),
      TwoQubitState::trusted(Mat4::zero()), TwoQubitState::trusted(Mat4::zero())};
};

// S[mean] - (1/4) sum_m S[x_m], in bits. Nonnegative; tiny negative
// round-off is clamped to 0.
double holevo(const AlphabetEnsemble& e);

// 1 + S[rho_B] - S[rho_AB]: most bits per letter a unitary Pauli alphabet on
// the shared state can carry. Below 1 the shared state is useless for it.
double capacity_bowen(const TwoQubitState& rho);

// Letters under a Pauli transmission channel on both legs (duration t0 each):
// leg one on qubit B before encoding, leg two on qubit A after. Verifies the
// equivalent single-channel form (same kind for 2*t0 conjugated by the
// encoding) and throws std::logic_error if the two disagree.
AlphabetEnsemble alphabet_pauli(ChannelTag kind /* Z, X or XZ */, double gamma,
                                double t0);

// Closed capacity of the Pauli-channel protocol as a function of TOTAL
// transmission time (both legs together).
double capacity_closed(ChannelTag kind /* Z or XZ */, double gamma,
                       double total_time);

// Letters under amplitude+phase noise: BZ on qubit B for leg one, ideal Pauli
// encoding, AZ on qubit A for leg two (t0 per leg). Does not collapse to a
// single-channel form.
AlphabetEnsemble alphabet_amp_phase(double gamma, double t0);

struct Transmission {
  ChannelKind kind;  // leg-one channel, on qubit B
  double gamma = 0.0;
  double t0 = 0.0;   // per-leg duration
};

// Leg-two counterpart acting on qubit A (B-side kinds mirror to their A-side
// partners). Throws for kinds without an A-side form.
ChannelKind return_leg_kind(ChannelKind leg_one);

// Letters when Alice's encoding itself is the noisy rotation: x_0 untouched,
// x_m = axis-m rotation of the shared state run for t_encode. With a
// transmission, leg one precedes the encoding and leg two follows it, and
// x_0 passes through both legs too.
AlphabetEnsemble alphabet_noisy_encoding(
    RotationNoise noise, double gamma, double omega0, double t_encode,
    const std::optional<Transmission>& transmission = std::nullopt);

// Holevo value of the noisy-encoding protocol as a function of encoding time,
// computed by marching all letters once across [0, t_hi] and re-integrating
// from the nearest stored node for off-grid queries.
class EncodingCurve {
 public:
  EncodingCurve(RotationNoise noise, double gamma, double omega0, double t_hi,
                std::optional<Transmission> transmission = std::nullopt,
                int nodes = 2000);

  double t_hi() const { return t_hi_; }
  int nodes() const { return nodes_; }
  double node_time(int i) const;
  const std::vector<double>& node_values() const { return node_values_; }

  double value_at(double t) const;
  // Negativity of the x_1 letter before the return leg: the entanglement
  // still shared after encoding for time t.
  double shared_negativity(double t) const;

 private:
  std::array<Mat4, 3> letters_at(double t) const;
  double holevo_from(const std::array<Mat4, 3>& rotated) const;

  double gamma_, t_hi_;
  int nodes_, sub_;
  double node_dt_, h_;
  std::optional<Transmission> transmission_;
  std::vector<RhsOperator> rhs_;               // axes 1..3
  std::vector<std::array<Mat4, 3>> snapshots_;  // per node
  std::vector<double> node_values_;
  Mat4 x0_;        // letter 0 after any transmission legs
  double s0_ = 0;  // its entropy
};

struct CurveMax {
  std::optional<double> t;  // empty: no interior maximum on (0, t_hi)
  double value = 0.0;       // refined maximum, or the grid supremum if none
};

// First interior local maximum: grid scan then golden-section refinement to
// 1e-6 in t.
CurveMax first_maximum(const std::function<double(double)>& curve, double t_hi,
                       int grid = 2000);
CurveMax first_maximum(const EncodingCurve& curve);

struct CriticalOmega {
  double omega_c = 0.0;
  double tau_c = 0.0;  // time of the threshold-touching first maximum
  double value = 0.0;  // Holevo there (1 to within the stopping tolerance)
};

// Smallest rotation rate whose first Holevo maximum reaches 1 bit: bracket on
// a geometric ladder of omega0, then bisect until |max - 1| <= 1e-4.
CriticalOmega critical_omega(RotationNoise noise, double gamma);

enum class CapacityFamily { Z, XZ, AmpPhase };

struct CriticalTimeResult {
  std::optional<double> tau_c;  // empty: curve never drops below 1
  std::optional<double> death_to_critical_ratio;  // tau_d / tau_c
};

// Total transmission time where the protocol's value decays to 1 bit,
// bisected to 1e-6, with the matching entanglement-death ratio.
CriticalTimeResult critical_time(CapacityFamily family, double gamma);

}  // namespace qsdc
