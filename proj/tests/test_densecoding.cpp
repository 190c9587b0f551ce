#include <cmath>

#include "doctest.h"
#include "qsdc/densecoding.hpp"

using namespace qsdc;

namespace {

TwoQubitState bell() { return TwoQubitState::trusted(bell_state()); }

AlphabetEnsemble perfect_alphabet() {
  AlphabetEnsemble e;
  for (int m = 0; m < 4; ++m)
    e.letters[static_cast<std::size_t>(m)] =
        TwoQubitState::trusted(pauli_encode(m, bell_state()));
  return e;
}

}  // namespace

TEST_CASE("holevo endpoints") {
  CHECK(holevo(perfect_alphabet()) == doctest::Approx(2.0).epsilon(1e-12));

  AlphabetEnsemble flat;
  for (int m = 0; m < 4; ++m)
    flat.letters[static_cast<std::size_t>(m)] = bell();
  CHECK(holevo(flat) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("receiver-side capacity endpoints") {
  CHECK(capacity_bowen(bell()) == doctest::Approx(2.0).epsilon(1e-12));
  Mat4 mixed{};
  for (int i = 0; i < 4; ++i) mixed.at(i, i) = 0.25;
  CHECK(capacity_bowen(TwoQubitState::trusted(mixed)) ==
        doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("closed capacity formulas: endpoints and crossing times") {
  CHECK(capacity_closed(ChannelTag::Z, 1.0, 0.0) ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK(capacity_closed(ChannelTag::XZ, 1.0, 0.0) ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK(capacity_closed(ChannelTag::Z, 1.0, 60.0) ==
        doctest::Approx(1.0).epsilon(1e-12));
  // the combined channel crosses 1 at the published time; dephasing alone
  // only reaches 1 asymptotically
  CHECK(std::abs(capacity_closed(ChannelTag::XZ, 1.0, 0.124266) - 1.0) < 1e-4);
  CHECK(capacity_closed(ChannelTag::Z, 1.0, 0.124266) > 1.0);
  CHECK_THROWS_AS(capacity_closed(ChannelTag::B, 1.0, 0.1),
                  std::invalid_argument);
  CHECK_THROWS_AS(capacity_closed(ChannelTag::Z, -1.0, 0.1),
                  std::invalid_argument);
}

TEST_CASE("ensemble, receiver-side and closed capacities coincide") {
  const TwoQubitState chi = bell();
  for (ChannelTag tag : {ChannelTag::Z, ChannelTag::XZ}) {
    for (double g : {0.5, 1.0}) {
      for (double t0 : {0.05, 0.15}) {
        CAPTURE(channel_name(tag));
        const double a = holevo(alphabet_pauli(tag, g, t0));
        const double b =
            capacity_bowen(analytic_apply(ChannelKind(tag), g, 2.0 * t0, chi));
        const double c = capacity_closed(tag, g, 2.0 * t0);
        CHECK(std::abs(a - b) < 1e-9);
        CHECK(std::abs(a - c) < 1e-9);
      }
    }
  }
  // bit flips perform exactly like phase flips
  const double hx = holevo(alphabet_pauli(ChannelTag::X, 1.0, 0.1));
  CHECK(std::abs(hx - capacity_closed(ChannelTag::Z, 1.0, 0.2)) < 1e-9);
  CHECK_THROWS_AS(alphabet_pauli(ChannelTag::B, 1.0, 0.1),
                  std::invalid_argument);
}

TEST_CASE("amplitude+phase alphabet: unencoded letter is the round trip") {
  const double g = 0.8, t0 = 0.35;
  const AlphabetEnsemble e = alphabet_amp_phase(g, t0);
  const Mat4 round_trip =
      analytic_apply(ChannelKind(ChannelTag::AZBZ), g, 2.0 * t0, bell())
          .matrix();
  CHECK(max_abs_diff(e.letters[0].matrix(), round_trip) < 1e-13);
  const double h = holevo(e);
  CHECK(h > 0.0);
  CHECK(h < 2.0);
}

TEST_CASE("return leg targets Alice's qubit") {
  const ChannelKind z = return_leg_kind(ChannelKind(ChannelTag::Z));
  CHECK(z.tag == ChannelTag::Z);
  CHECK(z.qubit == Subsystem::A);
  CHECK(return_leg_kind(ChannelKind(ChannelTag::B)).tag == ChannelTag::A);
  CHECK(return_leg_kind(ChannelKind(ChannelTag::BZ)).tag == ChannelTag::AZ);
  CHECK_THROWS_AS(return_leg_kind(ChannelKind(ChannelTag::A)),
                  std::invalid_argument);
}

TEST_CASE("critical times and the death-to-critical ratios") {
  const CriticalTimeResult xz = critical_time(CapacityFamily::XZ, 1.0);
  REQUIRE(xz.tau_c.has_value());
  CHECK(std::abs(*xz.tau_c - 0.124266) < 1e-4);
  REQUIRE(xz.death_to_critical_ratio.has_value());
  CHECK(std::abs(*xz.death_to_critical_ratio - 3.5463) < 2e-3);

  const CriticalTimeResult xz2 = critical_time(CapacityFamily::XZ, 2.0);
  REQUIRE(xz2.tau_c.has_value());
  CHECK(std::abs(*xz2.tau_c - 0.124266 / 2.0) < 1e-4);

  const CriticalTimeResult ap = critical_time(CapacityFamily::AmpPhase, 1.0);
  REQUIRE(ap.tau_c.has_value());
  CHECK(std::abs(*ap.tau_c - 0.172879) < 1e-3);
  REQUIRE(ap.death_to_critical_ratio.has_value());
  CHECK(std::abs(*ap.death_to_critical_ratio - 3.7284) < 5e-3);

  const CriticalTimeResult z = critical_time(CapacityFamily::Z, 1.0);
  CHECK(!z.tau_c.has_value());
}

TEST_CASE("noisy-encoding alphabet endpoints") {
  // zero encoding time: all letters identical
  CHECK(holevo(alphabet_noisy_encoding(RotationNoise::Phase, 0.1, 1.0, 0.0)) ==
        doctest::Approx(0.0).epsilon(1e-12));
  // noiseless half period realizes the perfect alphabet
  const double pi = std::acos(-1.0);
  CHECK(holevo(alphabet_noisy_encoding(RotationNoise::Phase, 0.0, 1.0, pi)) ==
        doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("encoding curve: marching values equal direct queries") {
  const EncodingCurve curve(RotationNoise::Phase, 0.1, 1.0, 6.0, std::nullopt,
                            300);
  CHECK(curve.nodes() == 300);
  CHECK(curve.t_hi() == doctest::Approx(6.0));
  for (int i : {0, 7, 150, 300}) {
    CHECK(std::abs(curve.value_at(curve.node_time(i)) -
                   curve.node_values()[static_cast<std::size_t>(i)]) < 1e-12);
  }
  CHECK(curve.value_at(0.0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(curve.shared_negativity(0.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(curve.value_at(6.1), std::invalid_argument);
}

TEST_CASE("first maximum search") {
  const CurveMax para = first_maximum(
      [](double t) { return 1.0 - (t - 0.3) * (t - 0.3); }, 1.0, 200);
  REQUIRE(para.t.has_value());
  CHECK(*para.t == doctest::Approx(0.3).epsilon(1e-4));
  CHECK(para.value == doctest::Approx(1.0).epsilon(1e-8));

  const CurveMax ramp = first_maximum([](double t) { return t; }, 1.0, 200);
  CHECK(!ramp.t.has_value());
  CHECK(ramp.value == doctest::Approx(1.0));
}

TEST_CASE("noisy-encoding curve hits the published first maximum") {
  const EncodingCurve curve(RotationNoise::Phase, 0.1, 1.0, 6.0, std::nullopt,
                            800);
  const CurveMax peak = first_maximum(curve);
  REQUIRE(peak.t.has_value());
  CHECK(std::abs(peak.value - 1.23928) < 2e-3);
  CHECK(std::abs(*peak.t - 2.75085) < 5e-3);
  CHECK(curve.shared_negativity(*peak.t) > 0.0);

  // slower driving never beats the classical line
  const EncodingCurve slow(RotationNoise::Phase, 0.1, 0.5, 30.0, std::nullopt,
                           1200);
  CHECK(first_maximum(slow).value < 1.0);
}

TEST_CASE("critical driving rate scales with the noise rate") {
  const CriticalOmega crit = critical_omega(RotationNoise::Phase, 0.2);
  CHECK(std::abs(crit.omega_c - 1.11484) < 2e-2);
  CHECK(std::abs(crit.value - 1.0) <= 1e-4);
  CHECK(crit.tau_c > 0.0);
  CHECK(crit.tau_c < 100.0);
}
