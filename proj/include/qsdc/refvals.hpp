#pragma once

#include <array>

// Published reference values the test suite and the `tables` command compare
// against.

namespace qsdc::refvals {

// Disentanglement times of a Bell pair under noisy rotations, for
// omega0 = 1e-2, 1e-1, 1, 1e1, 1e2, 1e3 (columns). Table entries are
// absolute times at the row's gamma, not multiples of 1/gamma.
inline constexpr std::array<double, 6> kTableOmega0{1e-2, 1e-1, 1.0,
                                                    1e1,  1e2,  1e3};

// Phase noise on the rotating qubit.
inline constexpr std::array<double, 6> kTablePhaseGamma01{
    27.2453, 12.4897, 8.82654, 8.81375, 8.81374, 8.81374};
inline constexpr std::array<double, 6> kTablePhaseGamma02{
    16.3894, 8.05990, 4.47185, 4.40687, 4.40687, 4.40687};

// Amplitude noise on the rotating qubit. The last gamma=0.2 cell disagrees
// with the large-omega0 trend of the published row (8.35235 printed vs
// 8.39239 at omega0=1e2); the tables command reports it as a discrepancy
// rather than a failure.
inline constexpr std::array<double, 6> kTableAmpGamma01{
    93.2803, 29.1270, 16.9282, 16.7860, 16.7847, 16.7847};
inline constexpr std::array<double, 6> kTableAmpGamma02{
    60.0374, 21.3006, 8.70814, 8.39552, 8.39239, 8.35235};

inline constexpr int kTableAmpSuspectGamma = 1;   // gamma = 0.2 row
inline constexpr int kTableAmpSuspectColumn = 5;  // omega0 = 1e3 cell

// Entanglement death times (units of 1/gamma, total channel time).
inline constexpr double kTauDeathXZ = 0.4406868;
inline constexpr double kTauDeathDepol = 0.2746531;
inline constexpr double kTauDeathBX = 0.747282;
inline constexpr double kTauDeathAZBZ = 0.644569;

// Times at which the dense-coding advantage is lost (capacity crosses 1).
inline constexpr double kTauCriticalXZ = 0.124266;
inline constexpr double kTauCriticalAmpPhase = 0.172879;

// Noisy-encoding anchors at gamma = 0.1 (phase noise, omega0 = 1).
inline constexpr double kFirstMaxValue = 1.23928;
inline constexpr double kFirstMaxTime = 2.75085;
inline constexpr double kCriticalOmega = 0.56;
inline constexpr double kCriticalOmegaTime = 4.68027;

}  // namespace qsdc::refvals
