// Two-qubit density-matrix toolkit: Pauli operators, the shared Bell pair,
// partial transpose/trace, a deterministic Hermitian eigensolver, entropy and
// negativity. Basis order is |00>,|01>,|10>,|11> with qubit A on the slow index.
#pragma once

#include <array>
#include <stdexcept>

#include "qsdc/linalg.hpp"

namespace qsdc {

// All numerical tolerances in one place. These are contract values used by
// state validation, the eigensolver and the integrator; tests pin them.
struct Tolerances {
  double hermiticity = 1e-10;        // max |a_ij - conj(a_ji)| for valid states
  double trace_dev = 1e-10;          // |tr(rho) - 1|
  double positivity = -1e-9;         // smallest admissible eigenvalue
  double jacobi_offdiag = 1e-13;     // eigensolver sweep termination
  double trace_renorm = 1e-12;       // integrator renormalization trigger
  double kraus_completeness = 1e-12; // max |sum K^dag K - I|
  double consistency = 1e-10;        // internal cross-checks (collapsed forms)
};
inline constexpr Tolerances kTol{};

enum class Subsystem { A, B };

const Mat2& pauli(int m);  // m in 0..3
const Mat2& sigma_minus(); // [[0,1],[0,0]], lowers |1> to |0>

// (|00> + |11>)/sqrt(2) projector.
Mat4 bell_state();

// Lift a one-qubit operator to the two-qubit space.
Mat4 embed(const Mat2& op, Subsystem q);

// (sigma_m x I) rho (sigma_m x I): Alice's encoding conjugation.
Mat4 pauli_encode(int m, const Mat4& rho);

Mat4 partial_transpose(const Mat4& rho, Subsystem which = Subsystem::A);
Mat2 partial_trace(const Mat4& rho, Subsystem traced_out);

// Cyclic Jacobi for Hermitian matrices, deterministic sweep order.
// Eigenvalues ascending. Throws std::invalid_argument on non-Hermitian input.
std::array<double, 4> hermitian_eigenvalues(const Mat4& m);
std::array<double, 2> hermitian_eigenvalues(const Mat2& m);

struct Eigensystem4 {
  std::array<double, 4> values;  // ascending
  Mat4 vectors;                  // columns are the matching eigenvectors
};
Eigensystem4 hermitian_eigensystem(const Mat4& m);

// Entropy in bits. Eigenvalues in [positivity,0) count as 0; anything below
// the positivity floor raises std::invalid_argument.
double von_neumann_entropy(const Mat4& rho);
double von_neumann_entropy(const Mat2& rho);

// max{0, -2 sum of negative eigenvalues of rho^{T_A}}.
double negativity(const Mat4& rho);
// Smallest eigenvalue of rho^{T_A}; entanglement death shows as a sign change.
double min_ptrans_eigenvalue(const Mat4& rho);

struct StateDefect {
  double hermiticity = 0.0;
  double trace_dev = 0.0;
  double min_eigenvalue = 0.0;
  bool ok() const;
};
StateDefect check_state(const Mat4& rho);

// A density matrix that passed the invariant checks at construction.
class TwoQubitState {
 public:
  // Validates Hermiticity, unit trace and positivity (kTol); throws
  // std::invalid_argument with the offending defect otherwise.
  static TwoQubitState checked(const Mat4& rho);
  // For internal producers whose output is validated elsewhere.
  static TwoQubitState trusted(const Mat4& rho);

  const Mat4& matrix() const { return rho_; }

 private:
  explicit TwoQubitState(const Mat4& rho) : rho_(rho) {}
  Mat4 rho_;
};

}  // namespace qsdc
