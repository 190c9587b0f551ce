// Markovian noise on a two-qubit pair: generic Lindblad right-hand side and
// RK4 integrator, plus the named closed-form channels (phase, bit, combined,
// depolarizing, amplitude and amplitude+phase) as certified Kraus maps.
#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "qsdc/qstate.hpp"

namespace qsdc {

struct LindbladTerm {
  Mat4 op;            // L_k, need not be Hermitian
  double rate = 0.0;  // gamma_k >= 0, inverse-time units
};

struct EvolutionSpec {
  std::optional<Mat4> hamiltonian;  // H, Hermitian when present (hbar = 1)
  std::vector<LindbladTerm> terms;
};

// d rho/dt = -i[H,rho] + sum_k gamma_k/2 (2 L rho L^dag - L^dag L rho - rho L^dag L).
// Result is Hermitian and traceless. Throws std::invalid_argument on
// non-Hermitian H, negative rate or non-finite operator.
Mat4 lindblad_rhs(const TwoQubitState& rho, const EvolutionSpec& spec);

// The right-hand side with its operator products precomputed:
// rhs(rho) = M rho + rho M^dag + sum_k gamma_k L_k rho L_k^dag,
// M = -iH - 1/2 sum_k gamma_k L_k^dag L_k. Validates the spec once.
class RhsOperator {
 public:
  explicit RhsOperator(const EvolutionSpec& spec);
  Mat4 operator()(const Mat4& rho) const;

 private:
  Mat4 m_;
  std::vector<std::pair<double, Mat4>> jumps_;
};

// One classical RK4 step of size h.
Mat4 rk4_step(const RhsOperator& rhs, const Mat4& rho, double h);

struct EvolveStats {
  int steps = 0;
  double max_trace_dev = 0.0;  // largest |trace-1| seen before renormalizing
  int renormalizations = 0;
};

// Integrator produced a state violating the density-matrix invariants.
class IntegrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Fixed-step classical RK4. step <= 0 selects the default t/2000. The trace
// is renormalized whenever it drifts beyond kTol.trace_renorm; the deviation
// lands in stats. Output is invariant-checked.
TwoQubitState evolve(const TwoQubitState& rho0, const EvolutionSpec& spec,
                     double t, double step = 0.0, EvolveStats* stats = nullptr);

// Named channels. Z/X/XZ/DEPOL may act on either qubit; the amplitude-bearing
// kinds are tied to the qubit in their name (B-kinds hit the transmitted
// qubit, A-kinds hit the retained one). AZBZ is the two-leg composite
// amplitude+phase round trip, parameterized by TOTAL elapsed time (legs t/2).
enum class ChannelTag { Z, X, XZ, Depol, B, A, BZ, AZ, BX, AZBZ };

struct ChannelKind {
  ChannelTag tag = ChannelTag::Z;
  Subsystem qubit = Subsystem::B;

  ChannelKind() = default;
  ChannelKind(ChannelTag t);                // canonical target for t
  ChannelKind(ChannelTag t, Subsystem q);   // throws if t's target is fixed != q
};

bool retargetable(ChannelTag tag);          // true for Z, X, XZ, Depol
Subsystem canonical_target(ChannelTag tag); // A for A/AZ, B otherwise
const char* channel_name(ChannelTag tag);

struct KrausSet {
  std::vector<Mat4> ops;
  ChannelKind source{};
  double gamma = 0.0;
  double t = 0.0;

  double completeness_defect() const;  // max |sum K^dag K - I|
};

// Kraus representation of the channel at elapsed time t. Derived from the
// closed solutions; certified against evolve() by the validation suite.
KrausSet kraus_for(ChannelKind kind, double gamma, double t);

Mat4 apply_kraus(const KrausSet& set, const Mat4& rho);

// Closed-form channel on an arbitrary input. Equals evolve() of
// lindblad_spec() to integrator accuracy.
TwoQubitState analytic_apply(ChannelKind kind, double gamma, double t,
                             const TwoQubitState& rho);

// The Lindblad problem whose solution map the channel is. AZBZ is a two-leg
// composite, not a single generator, and is rejected.
EvolutionSpec lindblad_spec(ChannelKind kind, double gamma);

struct ChannelStep {
  ChannelKind kind;
  double gamma = 0.0;
  double t = 0.0;
};

// Sequential application: second after first.
TwoQubitState compose(const ChannelStep& first, const ChannelStep& second,
                      const TwoQubitState& rho);

}  // namespace qsdc
