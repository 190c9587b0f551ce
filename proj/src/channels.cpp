#include "qsdc/channels.hpp"

#include <cmath>
#include <cstdio>

namespace qsdc {

namespace {

constexpr cplx I{0.0, 1.0};

void validate_spec(const EvolutionSpec& spec) {
  if (spec.hamiltonian) {
    if (!all_finite(*spec.hamiltonian))
      throw std::invalid_argument("EvolutionSpec: non-finite Hamiltonian");
    const double defect = hermiticity_defect(*spec.hamiltonian);
    if (defect > kTol.hermiticity) {
      char msg[96];
      std::snprintf(msg, sizeof(msg),
                    "EvolutionSpec: non-Hermitian Hamiltonian (defect %.3e)",
                    defect);
      throw std::invalid_argument(msg);
    }
  }
  for (const LindbladTerm& term : spec.terms) {
    if (term.rate < 0.0)
      throw std::invalid_argument("EvolutionSpec: negative rate");
    if (!all_finite(term.op))
      throw std::invalid_argument("EvolutionSpec: non-finite operator");
  }
}

// One-qubit Kraus families; embedded on the target qubit by kraus_for.

std::vector<Mat2> phase_kraus1(double gamma, double t) {
  const double p = 0.5 * (1.0 + std::exp(-2.0 * gamma * t));
  return {std::sqrt(p) * pauli(0), std::sqrt(1.0 - p) * pauli(3)};
}

std::vector<Mat2> bit_kraus1(double gamma, double t) {
  const double p = 0.5 * (1.0 + std::exp(-2.0 * gamma * t));
  return {std::sqrt(p) * pauli(0), std::sqrt(1.0 - p) * pauli(1)};
}

std::vector<Mat2> depol_kraus1(double gamma, double t) {
  const double u = std::exp(-4.0 * gamma * t);
  const double w0 = 0.25 * (1.0 + 3.0 * u);
  const double w = 0.25 * (1.0 - u);
  return {std::sqrt(w0) * pauli(0), std::sqrt(w) * pauli(1),
          std::sqrt(w) * pauli(2), std::sqrt(w) * pauli(3)};
}

std::vector<Mat2> amp_kraus1(double gamma, double t) {
  const double u = std::exp(-gamma * t);
  Mat2 k0{};
  k0.at(0, 0) = 1.0;
  k0.at(1, 1) = std::sqrt(u);
  Mat2 k1{};
  k1.at(0, 1) = std::sqrt(1.0 - u);
  return {k0, k1};
}

std::vector<Mat2> product_kraus1(const std::vector<Mat2>& outer,
                                 const std::vector<Mat2>& inner) {
  std::vector<Mat2> out;
  out.reserve(outer.size() * inner.size());
  for (const Mat2& a : outer)
    for (const Mat2& b : inner) out.push_back(a * b);
  return out;
}

// Simultaneous bit-flip + amplitude generators do not commute, so no product
// form exists. The map is known through its action on the Pauli basis:
// e^-(3gt) on sigma3 with drift (1 - e^-(3gt))/3, e^-(gt/2) on sigma1,
// e^-(5gt/2) on sigma2. Kraus operators come from the Choi eigensystem.
std::vector<Mat2> bitamp_kraus1(double gamma, double t) {
  const double l1 = std::exp(-0.5 * gamma * t);
  const double l2 = std::exp(-2.5 * gamma * t);
  const double l3 = std::exp(-3.0 * gamma * t);
  const double d3 = (1.0 - l3) / 3.0;

  auto map1 = [&](const Mat2& rho) {
    // Pauli components of the (not necessarily Hermitian) input.
    const cplx r1 = trace(rho * pauli(1));
    const cplx r2 = trace(rho * pauli(2));
    const cplx r3 = trace(rho * pauli(3));
    const cplx tr = trace(rho);
    Mat2 out = 0.5 * tr * pauli(0);
    out = out + 0.5 * l1 * r1 * pauli(1);
    out = out + 0.5 * l2 * r2 * pauli(2);
    out = out + (0.5 * l3 * r3 + 0.5 * d3 * tr) * pauli(3);
    return out;
  };

  // Choi matrix J = sum_ij map(|i><j|) (x) |i><j| on H_out (x) H_in.
  Mat4 choi{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Mat2 eij{};
      eij.at(i, j) = 1.0;
      const Mat2 mapped = map1(eij);
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          choi.at(2 * k + i, 2 * l + j) += mapped.at(k, l);
    }

  const Eigensystem4 sys = hermitian_eigensystem(choi);
  std::vector<Mat2> ops;
  for (int a = 0; a < 4; ++a) {
    const double lam = sys.values[static_cast<std::size_t>(a)];
    if (lam < 1e-14) continue;  // Choi is PSD; drop null directions
    const double root = std::sqrt(lam);
    Mat2 k{};
    for (int out = 0; out < 2; ++out)
      for (int in = 0; in < 2; ++in)
        k.at(out, in) = root * sys.vectors.at(2 * out + in, a);
    ops.push_back(k);
  }
  return ops;
}

std::vector<Mat2> one_qubit_kraus(ChannelTag tag, double gamma, double t) {
  switch (tag) {
    case ChannelTag::Z:
      return phase_kraus1(gamma, t);
    case ChannelTag::X:
      return bit_kraus1(gamma, t);
    case ChannelTag::XZ:
      return product_kraus1(phase_kraus1(gamma, t), bit_kraus1(gamma, t));
    case ChannelTag::Depol:
      return depol_kraus1(gamma, t);
    case ChannelTag::B:
    case ChannelTag::A:
      return amp_kraus1(gamma, t);
    case ChannelTag::BZ:
    case ChannelTag::AZ:
      return product_kraus1(phase_kraus1(gamma, t), amp_kraus1(gamma, t));
    case ChannelTag::BX:
      return bitamp_kraus1(gamma, t);
    case ChannelTag::AZBZ:
      break;
  }
  throw std::invalid_argument("one_qubit_kraus: composite kind has no single-qubit form");
}

Mat4 embed_kraus(const Mat2& k, Subsystem q) { return embed(k, q); }

}  // namespace

RhsOperator::RhsOperator(const EvolutionSpec& spec) {
  validate_spec(spec);
  m_ = Mat4::zero();
  if (spec.hamiltonian) m_ = -I * (*spec.hamiltonian);
  for (const LindbladTerm& term : spec.terms) {
    if (term.rate == 0.0) continue;
    axpy(-0.5 * term.rate, dagger(term.op) * term.op, m_);
    jumps_.emplace_back(term.rate, term.op);
  }
}

Mat4 RhsOperator::operator()(const Mat4& rho) const {
  Mat4 out = m_ * rho + rho * dagger(m_);
  for (const auto& [rate, op] : jumps_)
    axpy(rate, op * rho * dagger(op), out);
  return out;
}

Mat4 rk4_step(const RhsOperator& rhs, const Mat4& rho, double h) {
  const Mat4 k1 = rhs(rho);
  Mat4 tmp = rho;
  axpy(0.5 * h, k1, tmp);
  const Mat4 k2 = rhs(tmp);
  tmp = rho;
  axpy(0.5 * h, k2, tmp);
  const Mat4 k3 = rhs(tmp);
  tmp = rho;
  axpy(h, k3, tmp);
  const Mat4 k4 = rhs(tmp);

  Mat4 out = rho;
  axpy(h / 6.0, k1, out);
  axpy(h / 3.0, k2, out);
  axpy(h / 3.0, k3, out);
  axpy(h / 6.0, k4, out);
  return out;
}

Mat4 lindblad_rhs(const TwoQubitState& rho, const EvolutionSpec& spec) {
  return RhsOperator(spec)(rho.matrix());
}

TwoQubitState evolve(const TwoQubitState& rho0, const EvolutionSpec& spec,
                     double t, double step, EvolveStats* stats) {
  if (t < 0.0) throw std::invalid_argument("evolve: negative duration");
  if (stats) *stats = EvolveStats{};
  if (t == 0.0) {
    RhsOperator{spec};  // still validate the problem
    return rho0;
  }
  if (step <= 0.0) step = t / 2000.0;

  const RhsOperator rhs(spec);
  const int n = static_cast<int>(std::ceil(t / step - 1e-12));
  const double h = t / n;

  Mat4 rho = rho0.matrix();
  double max_dev = 0.0;
  int renorms = 0;
  for (int i = 0; i < n; ++i) {
    rho = rk4_step(rhs, rho, h);
    const double tr = trace(rho).real();
    const double dev = std::abs(tr - 1.0);
    if (dev > kTol.trace_renorm) {
      max_dev = std::max(max_dev, dev);
      ++renorms;
      rho = cplx{1.0 / tr, 0.0} * rho;
    }
  }

  if (stats) {
    stats->steps = n;
    stats->max_trace_dev = max_dev;
    stats->renormalizations = renorms;
  }

  const StateDefect defect = check_state(rho);
  if (!defect.ok()) {
    char msg[160];
    std::snprintf(msg, sizeof(msg),
                  "evolve: output violates state invariants (hermiticity "
                  "%.3e, trace dev %.3e, min eigenvalue %.3e)",
                  defect.hermiticity, defect.trace_dev, defect.min_eigenvalue);
    throw IntegrationError(msg);
  }
  return TwoQubitState::trusted(rho);
}

ChannelKind::ChannelKind(ChannelTag t) : tag(t), qubit(canonical_target(t)) {}

ChannelKind::ChannelKind(ChannelTag t, Subsystem q) : tag(t), qubit(q) {
  if (!retargetable(t) && q != canonical_target(t))
    throw std::invalid_argument("ChannelKind: this kind's target qubit is fixed");
}

bool retargetable(ChannelTag tag) {
  switch (tag) {
    case ChannelTag::Z:
    case ChannelTag::X:
    case ChannelTag::XZ:
    case ChannelTag::Depol:
      return true;
    default:
      return false;
  }
}

Subsystem canonical_target(ChannelTag tag) {
  switch (tag) {
    case ChannelTag::A:
    case ChannelTag::AZ:
      return Subsystem::A;
    default:
      return Subsystem::B;
  }
}

const char* channel_name(ChannelTag tag) {
  switch (tag) {
    case ChannelTag::Z:
      return "Z";
    case ChannelTag::X:
      return "X";
    case ChannelTag::XZ:
      return "XZ";
    case ChannelTag::Depol:
      return "DEPOL";
    case ChannelTag::B:
      return "B";
    case ChannelTag::A:
      return "A";
    case ChannelTag::BZ:
      return "BZ";
    case ChannelTag::AZ:
      return "AZ";
    case ChannelTag::BX:
      return "BX";
    case ChannelTag::AZBZ:
      return "AZBZ";
  }
  return "?";
}

double KrausSet::completeness_defect() const {
  Mat4 sum{};
  for (const Mat4& k : ops) sum = sum + dagger(k) * k;
  return max_abs_diff(sum, Mat4::identity());
}

KrausSet kraus_for(ChannelKind kind, double gamma, double t) {
  if (gamma < 0.0 || t < 0.0)
    throw std::invalid_argument("kraus_for: gamma and t must be nonnegative");
  KrausSet set;
  set.source = kind;
  set.gamma = gamma;
  set.t = t;
  if (kind.tag == ChannelTag::AZBZ) {
    // Two commuting legs on different qubits; total time t, each leg t/2.
    const auto legB = one_qubit_kraus(ChannelTag::BZ, gamma, 0.5 * t);
    const auto legA = one_qubit_kraus(ChannelTag::AZ, gamma, 0.5 * t);
    for (const Mat2& a : legA)
      for (const Mat2& b : legB)
        set.ops.push_back(embed_kraus(a, Subsystem::A) *
                          embed_kraus(b, Subsystem::B));
    return set;
  }
  for (const Mat2& k : one_qubit_kraus(kind.tag, gamma, t))
    set.ops.push_back(embed_kraus(k, kind.qubit));
  return set;
}

Mat4 apply_kraus(const KrausSet& set, const Mat4& rho) {
  Mat4 out{};
  for (const Mat4& k : set.ops) out = out + k * rho * dagger(k);
  return out;
}

TwoQubitState analytic_apply(ChannelKind kind, double gamma, double t,
                             const TwoQubitState& rho) {
  return TwoQubitState::checked(
      apply_kraus(kraus_for(kind, gamma, t), rho.matrix()));
}

EvolutionSpec lindblad_spec(ChannelKind kind, double gamma) {
  auto on = [&](const Mat2& op) { return embed(op, kind.qubit); };
  EvolutionSpec spec;
  switch (kind.tag) {
    case ChannelTag::Z:
      spec.terms = {{on(pauli(3)), gamma}};
      break;
    case ChannelTag::X:
      spec.terms = {{on(pauli(1)), gamma}};
      break;
    case ChannelTag::XZ:
      spec.terms = {{on(pauli(1)), gamma}, {on(pauli(3)), gamma}};
      break;
    case ChannelTag::Depol:
      spec.terms = {{on(pauli(1)), gamma},
                    {on(pauli(2)), gamma},
                    {on(pauli(3)), gamma}};
      break;
    case ChannelTag::B:
    case ChannelTag::A:
      spec.terms = {{on(sigma_minus()), gamma}};
      break;
    case ChannelTag::BZ:
    case ChannelTag::AZ:
      spec.terms = {{on(sigma_minus()), gamma}, {on(pauli(3)), gamma}};
      break;
    case ChannelTag::BX:
      spec.terms = {{on(sigma_minus()), gamma}, {on(pauli(1)), gamma}};
      break;
    case ChannelTag::AZBZ:
      throw std::invalid_argument(
          "lindblad_spec: AZBZ is a two-leg composite, not one generator");
  }
  return spec;
}

TwoQubitState compose(const ChannelStep& first, const ChannelStep& second,
                      const TwoQubitState& rho) {
  return analytic_apply(second.kind, second.gamma, second.t,
                        analytic_apply(first.kind, first.gamma, first.t, rho));
}

}  // namespace qsdc
