#include <cmath>

#include "doctest.h"
#include "qsdc/channels.hpp"

using namespace qsdc;

// Closed-form images of the shared Bell pair under each named channel.
// Frozen oracles: written down from the analytic solutions, not from the
// code under test.
namespace {

Mat4 mat_Z(double g, double t) {
  const double w = std::exp(-2.0 * g * t);
  Mat4 m{};
  m.at(0, 0) = 0.5;
  m.at(3, 3) = 0.5;
  m.at(0, 3) = 0.5 * w;
  m.at(3, 0) = 0.5 * w;
  return m;
}

Mat4 mat_X(double g, double t) {
  const double w = std::exp(-2.0 * g * t);
  Mat4 m{};
  m.at(0, 0) = m.at(3, 3) = 0.25 * (1.0 + w);
  m.at(0, 3) = m.at(3, 0) = 0.25 * (1.0 + w);
  m.at(1, 1) = m.at(2, 2) = 0.25 * (1.0 - w);
  m.at(1, 2) = m.at(2, 1) = 0.25 * (1.0 - w);
  return m;
}

Mat4 mat_XZ(double g, double t) {
  const double w = std::exp(-2.0 * g * t);
  Mat4 m{};
  m.at(0, 0) = m.at(3, 3) = 0.25 * (1.0 + w);
  m.at(0, 3) = m.at(3, 0) = 0.25 * w * (1.0 + w);
  m.at(1, 1) = m.at(2, 2) = 0.25 * (1.0 - w);
  m.at(1, 2) = m.at(2, 1) = 0.25 * w * (1.0 - w);
  return m;
}

Mat4 mat_Depol(double g, double t) {
  const double w = std::exp(-4.0 * g * t);
  Mat4 m{};
  m.at(0, 0) = m.at(3, 3) = 0.25 * (1.0 + w);
  m.at(1, 1) = m.at(2, 2) = 0.25 * (1.0 - w);
  m.at(0, 3) = m.at(3, 0) = 0.5 * w;
  return m;
}

Mat4 mat_B(double g, double t) {
  const double u = std::exp(-g * t);
  Mat4 m{};
  m.at(0, 0) = 0.5;
  m.at(2, 2) = 0.5 * (1.0 - u);
  m.at(3, 3) = 0.5 * u;
  m.at(0, 3) = m.at(3, 0) = 0.5 * std::sqrt(u);
  return m;
}

Mat4 mat_A(double g, double t) {
  const double u = std::exp(-g * t);
  Mat4 m{};
  m.at(0, 0) = 0.5;
  m.at(1, 1) = 0.5 * (1.0 - u);
  m.at(3, 3) = 0.5 * u;
  m.at(0, 3) = m.at(3, 0) = 0.5 * std::sqrt(u);
  return m;
}

Mat4 mat_BZ(double g, double t) {
  const double u = std::exp(-g * t);
  Mat4 m = mat_B(g, t);
  m.at(0, 3) = m.at(3, 0) = 0.5 * std::sqrt(u) * std::exp(-2.0 * g * t);
  return m;
}

Mat4 mat_AZ(double g, double t) {
  const double u = std::exp(-g * t);
  Mat4 m = mat_A(g, t);
  m.at(0, 3) = m.at(3, 0) = 0.5 * std::sqrt(u) * std::exp(-2.0 * g * t);
  return m;
}

Mat4 mat_BX(double g, double t) {
  const double e3 = std::exp(-3.0 * g * t);
  const double e15 = std::exp(-1.5 * g * t);
  const double ch = std::cosh(g * t), sh = std::sinh(g * t);
  Mat4 m{};
  m.at(0, 0) = (2.0 + e3) / 6.0;
  m.at(1, 1) = (1.0 - e3) / 6.0;
  m.at(2, 2) = 2.0 * (1.0 - e3) / 6.0;
  m.at(3, 3) = (1.0 + 2.0 * e3) / 6.0;
  m.at(0, 3) = m.at(3, 0) = 3.0 * e15 * ch / 6.0;
  m.at(1, 2) = m.at(2, 1) = 3.0 * e15 * sh / 6.0;
  return m;
}

Mat4 mat_AZBZ(double g, double total) {
  const double t0 = 0.5 * total;
  const double u = std::exp(-g * t0);
  Mat4 m{};
  m.at(0, 0) = 0.5 * (1.0 + (1.0 - u) * (1.0 - u));
  m.at(1, 1) = m.at(2, 2) = 0.5 * u * (1.0 - u);
  m.at(3, 3) = 0.5 * u * u;
  m.at(0, 3) = m.at(3, 0) = 0.5 * std::exp(-5.0 * g * t0);
  return m;
}

TwoQubitState bell() { return TwoQubitState::trusted(bell_state()); }

double anchor_diff(ChannelTag tag, Mat4 (*oracle)(double, double), double g,
                   double t) {
  return max_abs_diff(analytic_apply(ChannelKind(tag), g, t, bell()).matrix(),
                      oracle(g, t));
}

}  // namespace

TEST_CASE("lindblad right-hand side basics") {
  const TwoQubitState chi = bell();

  CHECK(max_abs(lindblad_rhs(chi, EvolutionSpec{})) == 0.0);

  // pure dephasing of qubit B: off-diagonal decay at 2 gamma
  EvolutionSpec dephase;
  dephase.terms.push_back({embed(pauli(3), Subsystem::B), 0.75});
  const Mat4 r = lindblad_rhs(chi, dephase);
  CHECK(r.at(0, 3).real() == doctest::Approx(-0.75).epsilon(1e-12));
  CHECK(r.at(3, 0).real() == doctest::Approx(-0.75).epsilon(1e-12));
  Mat4 rest = r;
  rest.at(0, 3) = rest.at(3, 0) = 0.0;
  CHECK(max_abs(rest) < 1e-15);
  CHECK(std::abs(trace(r)) < 1e-15);
  CHECK(hermiticity_defect(r) < 1e-15);

  // pure Hamiltonian term rotates the coherence
  EvolutionSpec ham;
  ham.hamiltonian = embed(pauli(3), Subsystem::A);
  const Mat4 h = lindblad_rhs(chi, ham);
  CHECK(h.at(0, 3) == cplx{0, -1} * cplx{2.0 * 0.5, 0});
  CHECK(std::abs(trace(h)) < 1e-15);

  EvolutionSpec bad;
  bad.terms.push_back({embed(pauli(1), Subsystem::B), -1.0});
  CHECK_THROWS_AS(lindblad_rhs(chi, bad), std::invalid_argument);

  EvolutionSpec skew;
  Mat4 nh{};
  nh.at(0, 1) = 1.0;
  skew.hamiltonian = nh;
  CHECK_THROWS_AS(lindblad_rhs(chi, skew), std::invalid_argument);
}

TEST_CASE("closed-form channels reproduce the frozen Bell-pair images") {
  const double tol = 5e-13;
  for (auto [g, t] : {std::pair{0.5, 0.3}, {1.0, 1.0}, {2.0, 0.05}}) {
    CAPTURE(g);
    CAPTURE(t);
    CHECK(anchor_diff(ChannelTag::Z, mat_Z, g, t) < tol);
    CHECK(anchor_diff(ChannelTag::X, mat_X, g, t) < tol);
    CHECK(anchor_diff(ChannelTag::XZ, mat_XZ, g, t) < tol);
    CHECK(anchor_diff(ChannelTag::Depol, mat_Depol, g, t) < tol);
    CHECK(anchor_diff(ChannelTag::B, mat_B, g, t) < tol);
    CHECK(anchor_diff(ChannelTag::A, mat_A, g, t) < tol);
    CHECK(anchor_diff(ChannelTag::BZ, mat_BZ, g, t) < tol);
    CHECK(anchor_diff(ChannelTag::AZ, mat_AZ, g, t) < tol);
    CHECK(anchor_diff(ChannelTag::BX, mat_BX, g, t) < tol);
    CHECK(anchor_diff(ChannelTag::AZBZ, mat_AZBZ, g, t) < tol);
  }
}

TEST_CASE("kraus sets are complete and consistent with analytic_apply") {
  for (ChannelTag tag : {ChannelTag::Z, ChannelTag::XZ, ChannelTag::Depol,
                         ChannelTag::B, ChannelTag::BZ, ChannelTag::BX,
                         ChannelTag::AZBZ}) {
    const KrausSet ks = kraus_for(ChannelKind(tag), 0.8, 0.6);
    CAPTURE(channel_name(tag));
    CHECK(ks.completeness_defect() < 1e-13);
    CHECK(max_abs_diff(apply_kraus(ks, bell_state()),
                       analytic_apply(ChannelKind(tag), 0.8, 0.6, bell())
                           .matrix()) < 1e-14);
  }
}

TEST_CASE("integrator matches the closed solution and reports stats") {
  const double g = 0.7, t = 0.9;
  EvolveStats stats;
  const TwoQubitState num = evolve(
      bell(), lindblad_spec(ChannelKind(ChannelTag::XZ), g), t, 0.0, &stats);
  CHECK(max_abs_diff(num.matrix(), mat_XZ(g, t)) < 1e-8);
  CHECK(stats.steps == 2000);
  CHECK(stats.max_trace_dev < 1e-10);

  // zero-time evolution is the identity
  const TwoQubitState same =
      evolve(bell(), lindblad_spec(ChannelKind(ChannelTag::Z), g), 0.0);
  CHECK(max_abs_diff(same.matrix(), bell_state()) == 0.0);

  CHECK_THROWS_AS(
      evolve(bell(), lindblad_spec(ChannelKind(ChannelTag::Z), g), -1.0),
      std::invalid_argument);
}

TEST_CASE("amplitude-bearing generators act on the named qubit") {
  // B damps the transmitted qubit: its B-marginal loses excitation
  const double g = 1.0, t = 0.7;
  const double u = std::exp(-g * t);
  const Mat4 rb = analytic_apply(ChannelKind(ChannelTag::B), g, t, bell()).matrix();
  CHECK(rb.at(2, 2).real() == doctest::Approx(0.5 * (1 - u)).epsilon(1e-12));
  CHECK(rb.at(1, 1).real() == doctest::Approx(0.0).epsilon(1e-12));
  const Mat4 ra = analytic_apply(ChannelKind(ChannelTag::A), g, t, bell()).matrix();
  CHECK(ra.at(1, 1).real() == doctest::Approx(0.5 * (1 - u)).epsilon(1e-12));
  CHECK(ra.at(2, 2).real() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("channel kinds: retargeting rules") {
  CHECK(retargetable(ChannelTag::Z));
  CHECK(retargetable(ChannelTag::Depol));
  CHECK(!retargetable(ChannelTag::B));
  CHECK(!retargetable(ChannelTag::AZBZ));
  CHECK(canonical_target(ChannelTag::A) == Subsystem::A);
  CHECK(canonical_target(ChannelTag::AZ) == Subsystem::A);
  CHECK(canonical_target(ChannelTag::BX) == Subsystem::B);
  CHECK_NOTHROW(ChannelKind(ChannelTag::Z, Subsystem::A));
  CHECK_THROWS_AS(ChannelKind(ChannelTag::B, Subsystem::A),
                  std::invalid_argument);
  CHECK_THROWS_AS(ChannelKind(ChannelTag::AZ, Subsystem::B),
                  std::invalid_argument);
  CHECK(std::string(channel_name(ChannelTag::Depol)) == "DEPOL");
  CHECK(std::string(channel_name(ChannelTag::AZBZ)) == "AZBZ");

  // a Z channel on qubit A dephases the same coherence of the Bell pair
  const Mat4 za =
      analytic_apply(ChannelKind(ChannelTag::Z, Subsystem::A), 1.0, 0.4, bell())
          .matrix();
  CHECK(max_abs_diff(za, mat_Z(1.0, 0.4)) < 1e-14);
}

TEST_CASE("composition and the two-leg composite") {
  const double g = 0.9, t1 = 0.3, t2 = 0.5;
  const Mat4 split = compose({ChannelKind(ChannelTag::Z), g, t1},
                             {ChannelKind(ChannelTag::Z), g, t2}, bell())
                         .matrix();
  CHECK(max_abs_diff(split, mat_Z(g, t1 + t2)) < 1e-13);

  // AZBZ = amplitude+phase leg on B, then amplitude+phase leg on A
  const Mat4 legs = compose({ChannelKind(ChannelTag::BZ), g, t1},
                            {ChannelKind(ChannelTag::AZ), g, t1}, bell())
                        .matrix();
  CHECK(max_abs_diff(
            legs, analytic_apply(ChannelKind(ChannelTag::AZBZ), g, 2.0 * t1,
                                 bell())
                      .matrix()) < 1e-13);

  CHECK_THROWS_AS(lindblad_spec(ChannelKind(ChannelTag::AZBZ), g),
                  std::invalid_argument);
}
