#include "qsdc/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace qsdc {

namespace {

constexpr cplx I{0.0, 1.0};

const std::array<Mat2, 4> kPauli = [] {
  std::array<Mat2, 4> p{};
  p[0].at(0, 0) = 1;
  p[0].at(1, 1) = 1;
  p[1].at(0, 1) = 1;
  p[1].at(1, 0) = 1;
  p[2].at(0, 1) = -I;
  p[2].at(1, 0) = I;
  p[3].at(0, 0) = 1;
  p[3].at(1, 1) = -1;
  return p;
}();

const Mat2 kSigmaMinus = [] {
  Mat2 m{};
  m.at(0, 1) = 1;
  return m;
}();

// In-place cyclic Jacobi on a Hermitian n x n stored row-major in `a`.
// If `v` is non-null it accumulates the rotations (v must start as identity).
// Pivots (p,q) are visited in fixed lexicographic order so results are
// bit-reproducible across runs.
void jacobi_inplace(cplx* a, cplx* v, int n) {
  auto at = [&](cplx* m, int r, int c) -> cplx& { return m[r * n + c]; };
  double fro = 0.0;
  for (int i = 0; i < n * n; ++i) fro += std::norm(a[i]);
  const double stop = kTol.jacobi_offdiag * std::max(1.0, std::sqrt(fro));

  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (int r = 0; r < n; ++r)
      for (int c = r + 1; c < n; ++c) off += 2.0 * std::norm(at(a, r, c));
    if (std::sqrt(off) <= stop) return;

    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const cplx b = at(a, p, q);
        const double babs = std::abs(b);
        if (babs == 0.0) continue;
        const double alpha = at(a, p, p).real();
        const double delta = at(a, q, q).real();
        const double phi = std::arg(b);
        const double tau = (delta - alpha) / (2.0 * babs);
        const double sgn = tau >= 0.0 ? 1.0 : -1.0;
        const double t = sgn / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // U restricted to (p,q): [[c, s], [-s e^{-i phi}, c e^{-i phi}]].
        const cplx emphi = std::exp(cplx{0.0, -phi});
        const cplx upp = c, upq = s, uqp = -s * emphi, uqq = c * emphi;

        for (int k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const cplx akp = at(a, k, p), akq = at(a, k, q);
          at(a, k, p) = akp * upp + akq * uqp;
          at(a, k, q) = akp * upq + akq * uqq;
          at(a, p, k) = std::conj(at(a, k, p));
          at(a, q, k) = std::conj(at(a, k, q));
        }
        const double app = c * c * alpha - 2.0 * c * s * babs + s * s * delta;
        const double aqq = s * s * alpha + 2.0 * c * s * babs + c * c * delta;
        at(a, p, p) = app;
        at(a, q, q) = aqq;
        at(a, p, q) = 0.0;
        at(a, q, p) = 0.0;

        if (v != nullptr) {
          for (int k = 0; k < n; ++k) {
            const cplx vkp = at(v, k, p), vkq = at(v, k, q);
            at(v, k, p) = vkp * upp + vkq * uqp;
            at(v, k, q) = vkp * upq + vkq * uqq;
          }
        }
      }
    }
  }
  throw std::runtime_error("jacobi_inplace: no convergence after 64 sweeps");
}

void require_hermitian(double defect, const char* where) {
  if (defect > kTol.hermiticity) {
    char msg[128];
    std::snprintf(msg, sizeof(msg), "%s: non-Hermitian input (defect %.3e)",
                  where, defect);
    throw std::invalid_argument(msg);
  }
}

template <std::size_t N>
double entropy_bits(const std::array<double, N>& eig) {
  double h = 0.0;
  for (double lam : eig) {
    if (lam < kTol.positivity) {
      char msg[96];
      std::snprintf(msg, sizeof(msg),
                    "von_neumann_entropy: eigenvalue %.3e below floor", lam);
      throw std::invalid_argument(msg);
    }
    if (lam > 0.0) h -= lam * std::log2(lam);
  }
  return h;
}

}  // namespace

const Mat2& pauli(int m) {
  if (m < 0 || m > 3) throw std::invalid_argument("pauli: index must be 0..3");
  return kPauli[static_cast<std::size_t>(m)];
}

const Mat2& sigma_minus() { return kSigmaMinus; }

Mat4 bell_state() {
  Mat4 rho{};
  rho.at(0, 0) = 0.5;
  rho.at(0, 3) = 0.5;
  rho.at(3, 0) = 0.5;
  rho.at(3, 3) = 0.5;
  return rho;
}

Mat4 embed(const Mat2& op, Subsystem q) {
  return q == Subsystem::A ? tensor(op, pauli(0)) : tensor(pauli(0), op);
}

Mat4 pauli_encode(int m, const Mat4& rho) {
  const Mat4 e = embed(pauli(m), Subsystem::A);
  return e * rho * dagger(e);
}

Mat4 partial_transpose(const Mat4& rho, Subsystem which) {
  Mat4 out{};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int ap = 0; ap < 2; ++ap)
        for (int bp = 0; bp < 2; ++bp) {
          if (which == Subsystem::A)
            out.at(2 * a + b, 2 * ap + bp) = rho.at(2 * ap + b, 2 * a + bp);
          else
            out.at(2 * a + b, 2 * ap + bp) = rho.at(2 * a + bp, 2 * ap + b);
        }
  return out;
}

Mat2 partial_trace(const Mat4& rho, Subsystem traced_out) {
  Mat2 out{};
  if (traced_out == Subsystem::B) {
    for (int a = 0; a < 2; ++a)
      for (int ap = 0; ap < 2; ++ap)
        for (int b = 0; b < 2; ++b) out.at(a, ap) += rho.at(2 * a + b, 2 * ap + b);
  } else {
    for (int b = 0; b < 2; ++b)
      for (int bp = 0; bp < 2; ++bp)
        for (int a = 0; a < 2; ++a) out.at(b, bp) += rho.at(2 * a + b, 2 * a + bp);
  }
  return out;
}

std::array<double, 4> hermitian_eigenvalues(const Mat4& m) {
  require_hermitian(hermiticity_defect(m), "hermitian_eigenvalues");
  Mat4 work = m;
  jacobi_inplace(work.e.data(), nullptr, 4);
  std::array<double, 4> eig{work.at(0, 0).real(), work.at(1, 1).real(),
                            work.at(2, 2).real(), work.at(3, 3).real()};
  std::sort(eig.begin(), eig.end());
  return eig;
}

std::array<double, 2> hermitian_eigenvalues(const Mat2& m) {
  require_hermitian(hermiticity_defect(m), "hermitian_eigenvalues");
  Mat2 work = m;
  jacobi_inplace(work.e.data(), nullptr, 2);
  std::array<double, 2> eig{work.at(0, 0).real(), work.at(1, 1).real()};
  std::sort(eig.begin(), eig.end());
  return eig;
}

Eigensystem4 hermitian_eigensystem(const Mat4& m) {
  require_hermitian(hermiticity_defect(m), "hermitian_eigensystem");
  Mat4 work = m;
  Mat4 vec = Mat4::identity();
  jacobi_inplace(work.e.data(), vec.e.data(), 4);

  std::array<int, 4> order{0, 1, 2, 3};
  std::array<double, 4> diag{work.at(0, 0).real(), work.at(1, 1).real(),
                             work.at(2, 2).real(), work.at(3, 3).real()};
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return diag[i] < diag[j]; });

  Eigensystem4 sys{};
  for (int c = 0; c < 4; ++c) {
    sys.values[static_cast<std::size_t>(c)] = diag[static_cast<std::size_t>(order[static_cast<std::size_t>(c)])];
    for (int r = 0; r < 4; ++r) sys.vectors.at(r, c) = vec.at(r, order[static_cast<std::size_t>(c)]);
  }
  return sys;
}

double von_neumann_entropy(const Mat4& rho) {
  return entropy_bits(hermitian_eigenvalues(rho));
}

double von_neumann_entropy(const Mat2& rho) {
  return entropy_bits(hermitian_eigenvalues(rho));
}

double negativity(const Mat4& rho) {
  const auto eig = hermitian_eigenvalues(partial_transpose(rho, Subsystem::A));
  double neg = 0.0;
  for (double lam : eig)
    if (lam < 0.0) neg -= lam;
  return 2.0 * neg;
}

double min_ptrans_eigenvalue(const Mat4& rho) {
  return hermitian_eigenvalues(partial_transpose(rho, Subsystem::A))[0];
}

bool StateDefect::ok() const {
  return hermiticity <= kTol.hermiticity && trace_dev <= kTol.trace_dev &&
         min_eigenvalue >= kTol.positivity;
}

StateDefect check_state(const Mat4& rho) {
  StateDefect d{};
  d.hermiticity = hermiticity_defect(rho);
  d.trace_dev = std::abs(trace(rho) - cplx{1.0, 0.0});
  // Eigenvalues of the Hermitian part, so a defective matrix still reports.
  Mat4 herm = 0.5 * (rho + dagger(rho));
  d.min_eigenvalue = hermitian_eigenvalues(herm)[0];
  return d;
}

TwoQubitState TwoQubitState::checked(const Mat4& rho) {
  const StateDefect d = check_state(rho);
  if (!d.ok()) {
    char msg[160];
    std::snprintf(msg, sizeof(msg),
                  "TwoQubitState: invalid state (hermiticity %.3e, trace dev "
                  "%.3e, min eigenvalue %.3e)",
                  d.hermiticity, d.trace_dev, d.min_eigenvalue);
    throw std::invalid_argument(msg);
  }
  return TwoQubitState(rho);
}

TwoQubitState TwoQubitState::trusted(const Mat4& rho) {
  return TwoQubitState(rho);
}

}  // namespace qsdc
