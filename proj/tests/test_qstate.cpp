#include <cmath>

#include "doctest.h"
#include "qsdc/qstate.hpp"

using namespace qsdc;

namespace {

Mat4 diag4(double a, double b, double c, double d) {
  Mat4 m{};
  m.at(0, 0) = a;
  m.at(1, 1) = b;
  m.at(2, 2) = c;
  m.at(3, 3) = d;
  return m;
}

}  // namespace

TEST_CASE("Pauli algebra") {
  CHECK(max_abs_diff(pauli(1) * pauli(1), Mat2::identity()) == 0.0);
  CHECK(max_abs_diff(pauli(2) * pauli(2), Mat2::identity()) == 0.0);
  CHECK(max_abs_diff(pauli(3) * pauli(3), Mat2::identity()) == 0.0);
  // [s3, s1] = 2i s2
  const Mat2 comm = pauli(3) * pauli(1) - pauli(1) * pauli(3);
  CHECK(max_abs_diff(comm, cplx{0, 2} * pauli(2)) < 1e-15);
  // [s3, s-] = 2 s-
  const Mat2 lower = pauli(3) * sigma_minus() - sigma_minus() * pauli(3);
  CHECK(max_abs_diff(lower, cplx{2, 0} * sigma_minus()) < 1e-15);
  // s-^dag s- projects on the decaying level
  const Mat2 n = dagger(sigma_minus()) * sigma_minus();
  CHECK(n.at(0, 0) == cplx{0, 0});
  CHECK(n.at(1, 1) == cplx{1, 0});
  CHECK_THROWS_AS(pauli(4), std::invalid_argument);
}

TEST_CASE("Bell pair is the expected pure projector") {
  const Mat4 chi = bell_state();
  CHECK(chi.at(0, 0) == cplx{0.5, 0});
  CHECK(chi.at(0, 3) == cplx{0.5, 0});
  CHECK(chi.at(3, 0) == cplx{0.5, 0});
  CHECK(chi.at(3, 3) == cplx{0.5, 0});
  CHECK(chi.at(1, 1) == cplx{0, 0});
  CHECK(trace(chi) == cplx{1, 0});
  CHECK(max_abs_diff(chi * chi, chi) < 1e-15);
  CHECK(von_neumann_entropy(chi) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("embed and pauli_encode target the right qubit") {
  const Mat4 a3 = embed(pauli(3), Subsystem::A);
  CHECK(a3.at(0, 0) == cplx{1, 0});
  CHECK(a3.at(1, 1) == cplx{1, 0});
  CHECK(a3.at(2, 2) == cplx{-1, 0});
  CHECK(a3.at(3, 3) == cplx{-1, 0});
  const Mat4 b3 = embed(pauli(3), Subsystem::B);
  CHECK(b3.at(1, 1) == cplx{-1, 0});
  CHECK(b3.at(2, 2) == cplx{1, 0});

  CHECK(max_abs_diff(pauli_encode(0, bell_state()), bell_state()) == 0.0);
  const Mat4 psi = pauli_encode(1, bell_state());  // sigma_x on qubit A
  CHECK(psi.at(1, 1) == cplx{0.5, 0});
  CHECK(psi.at(1, 2) == cplx{0.5, 0});
  CHECK(psi.at(2, 1) == cplx{0.5, 0});
  CHECK(psi.at(2, 2) == cplx{0.5, 0});
  CHECK(psi.at(0, 0) == cplx{0, 0});
}

TEST_CASE("partial transpose: values, involution, compatibility") {
  const Mat4 pt = partial_transpose(bell_state(), Subsystem::A);
  const auto ev = hermitian_eigenvalues(pt);
  CHECK(ev[0] == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(ev[1] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(ev[2] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(ev[3] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(negativity(bell_state()) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(min_ptrans_eigenvalue(bell_state()) ==
        doctest::Approx(-0.5).epsilon(1e-12));

  // involution, trace preservation, and T_A then T_B = full transpose
  Mat4 rho = bell_state();
  rho.at(1, 2) = cplx{0.1, 0.05};
  rho.at(2, 1) = cplx{0.1, -0.05};
  CHECK(max_abs_diff(partial_transpose(partial_transpose(rho)), rho) == 0.0);
  CHECK(std::abs(trace(partial_transpose(rho)) - trace(rho)) == 0.0);
  const Mat4 full =
      partial_transpose(partial_transpose(rho, Subsystem::A), Subsystem::B);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) CHECK(full.at(r, c) == rho.at(c, r));
}

TEST_CASE("partial trace recovers marginals") {
  Mat2 a{};
  a.at(0, 0) = 0.7;
  a.at(0, 1) = cplx{0.1, 0.2};
  a.at(1, 0) = cplx{0.1, -0.2};
  a.at(1, 1) = 0.3;
  Mat2 b{};
  b.at(0, 0) = 0.25;
  b.at(1, 1) = 0.75;
  const Mat4 rho = tensor(a, b);
  CHECK(max_abs_diff(partial_trace(rho, Subsystem::B), a) < 1e-15);
  CHECK(max_abs_diff(partial_trace(rho, Subsystem::A), b) < 1e-15);

  // amplitude-damped pair: B marginal diag(1 - u/2, u/2) with u = e^{-gamma t}
  const double u = 0.4;
  Mat4 damped{};
  damped.at(0, 0) = 0.5;
  damped.at(0, 3) = 0.5 * std::sqrt(u);
  damped.at(3, 0) = 0.5 * std::sqrt(u);
  damped.at(2, 2) = 0.5 * (1.0 - u);
  damped.at(3, 3) = 0.5 * u;
  const Mat2 marginal = partial_trace(damped, Subsystem::A);
  CHECK(marginal.at(0, 0).real() == doctest::Approx(1.0 - 0.5 * u));
  CHECK(marginal.at(1, 1).real() == doctest::Approx(0.5 * u));
  CHECK(std::abs(marginal.at(0, 1)) < 1e-15);
}

TEST_CASE("eigensolver reproduces a constructed spectrum") {
  // conjugate diag(1,2,3,4) by Hadamard x Hadamard
  Mat2 h{};
  const double s = 1.0 / std::sqrt(2.0);
  h.at(0, 0) = s;
  h.at(0, 1) = s;
  h.at(1, 0) = s;
  h.at(1, 1) = -s;
  const Mat4 v = tensor(h, h);
  const Mat4 a = v * diag4(1, 2, 3, 4) * dagger(v);
  const auto ev = hermitian_eigenvalues(a);
  CHECK(ev[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ev[1] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(ev[2] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(ev[3] == doctest::Approx(4.0).epsilon(1e-12));

  const Eigensystem4 es = hermitian_eigensystem(a);
  Mat4 rebuilt{};
  for (int k = 0; k < 4; ++k)
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c)
        rebuilt.at(r, c) += es.values[static_cast<std::size_t>(k)] *
                            es.vectors.at(r, k) * std::conj(es.vectors.at(c, k));
  CHECK(max_abs_diff(rebuilt, a) < 1e-12);
  CHECK(max_abs_diff(dagger(es.vectors) * es.vectors, Mat4::identity()) <
        1e-12);
}

TEST_CASE("eigensolver on a complex integer-entry matrix") {
  Mat4 a{};
  a.at(0, 0) = 2;
  a.at(1, 1) = -1;
  a.at(2, 2) = 3;
  a.at(3, 3) = 0;
  a.at(0, 1) = cplx{1, 1};
  a.at(1, 0) = cplx{1, -1};
  a.at(0, 3) = cplx{0, 2};
  a.at(3, 0) = cplx{0, -2};
  a.at(1, 2) = cplx{2, -1};
  a.at(2, 1) = cplx{2, 1};
  const auto ev = hermitian_eigenvalues(a);
  // spectrum checks: trace, sum of squares (= |A|_F^2), ordering
  double sum = 0.0, sq = 0.0;
  for (double v : ev) {
    sum += v;
    sq += v * v;
  }
  CHECK(sum == doctest::Approx(4.0).epsilon(1e-12));
  const double fro = frobenius_norm(a);
  CHECK(sq == doctest::Approx(fro * fro).epsilon(1e-12));
  CHECK(ev[0] <= ev[1]);
  CHECK(ev[1] <= ev[2]);
  CHECK(ev[2] <= ev[3]);
  // characteristic polynomial at each reported eigenvalue, p(x) =
  // x^4 - 4x^3 - 10x^2 + 30x + 32 for this matrix, stays near zero
  for (double x : ev) {
    const double p = (((x - 4.0) * x - 10.0) * x + 30.0) * x + 32.0;
    CHECK(std::abs(p) < 1e-9);
  }
  Mat4 bad{};
  bad.at(0, 1) = 1.0;  // missing conjugate partner
  CHECK_THROWS_AS(hermitian_eigenvalues(bad), std::invalid_argument);
}

TEST_CASE("entropy and negativity on frozen states") {
  // dephased pair at coherence 1/2: eigenvalues {0, 0, 1/4, 3/4}
  Mat4 z{};
  z.at(0, 0) = 0.5;
  z.at(3, 3) = 0.5;
  z.at(0, 3) = 0.25;
  z.at(3, 0) = 0.25;
  const auto ev = hermitian_eigenvalues(z);
  CHECK(ev[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(ev[1] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(ev[2] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(ev[3] == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(von_neumann_entropy(z) == doctest::Approx(0.811278124459133).epsilon(1e-12));
  CHECK(negativity(z) == doctest::Approx(0.5).epsilon(1e-10));

  const Mat4 mixed = diag4(0.25, 0.25, 0.25, 0.25);
  CHECK(von_neumann_entropy(mixed) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(negativity(mixed) == 0.0);

  const Mat4 classical = diag4(0.5, 0.0, 0.0, 0.5);
  CHECK(negativity(classical) == 0.0);
  CHECK(min_ptrans_eigenvalue(classical) >= 0.0);

  Mat2 half{};
  half.at(0, 0) = 0.5;
  half.at(1, 1) = 0.5;
  CHECK(von_neumann_entropy(half) == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(von_neumann_entropy(diag4(1.5, -0.5, 0.0, 0.0)),
                  std::invalid_argument);
}

TEST_CASE("state validation") {
  CHECK_NOTHROW(TwoQubitState::checked(bell_state()));
  CHECK_THROWS_AS(TwoQubitState::checked(Mat4::identity()),
                  std::invalid_argument);  // trace 4
  CHECK_THROWS_AS(TwoQubitState::checked(diag4(1.5, -0.5, 0.0, 0.0)),
                  std::invalid_argument);  // negative eigenvalue
  Mat4 skew = bell_state();
  skew.at(0, 3) = cplx{0.5, 0.2};  // not Hermitian
  CHECK_THROWS_AS(TwoQubitState::checked(skew), std::invalid_argument);

  const StateDefect d = check_state(bell_state());
  CHECK(d.ok());
  CHECK(d.hermiticity == 0.0);
  CHECK(d.trace_dev == doctest::Approx(0.0).epsilon(1e-14));
}
