// Dense complex 2x2 / 4x4 matrix arithmetic for one- and two-qubit operators.
#pragma once

#include <array>
#include <complex>

namespace qsdc {

using cplx = std::complex<double>;

struct Mat2 {
  std::array<cplx, 4> e{};  // row-major

  cplx& at(int r, int c) { return e[2 * r + c]; }
  const cplx& at(int r, int c) const { return e[2 * r + c]; }

  static Mat2 zero() { return {}; }
  static Mat2 identity();
};

struct Mat4 {
  std::array<cplx, 16> e{};  // row-major

  cplx& at(int r, int c) { return e[4 * r + c]; }
  const cplx& at(int r, int c) const { return e[4 * r + c]; }

  static Mat4 zero() { return {}; }
  static Mat4 identity();
};

Mat2 operator+(const Mat2& a, const Mat2& b);
Mat2 operator-(const Mat2& a, const Mat2& b);
Mat2 operator*(const Mat2& a, const Mat2& b);
Mat2 operator*(cplx s, const Mat2& a);
Mat4 operator+(const Mat4& a, const Mat4& b);
Mat4 operator-(const Mat4& a, const Mat4& b);
Mat4 operator*(const Mat4& a, const Mat4& b);
Mat4 operator*(cplx s, const Mat4& a);

Mat2 dagger(const Mat2& a);
Mat4 dagger(const Mat4& a);
cplx trace(const Mat2& a);
cplx trace(const Mat4& a);

// Kronecker product, left factor on the slow (first-qubit) index.
Mat4 tensor(const Mat2& a, const Mat2& b);

double max_abs_diff(const Mat2& a, const Mat2& b);
double max_abs_diff(const Mat4& a, const Mat4& b);
double max_abs(const Mat4& a);
// max |a_ij - conj(a_ji)|
double hermiticity_defect(const Mat2& a);
double hermiticity_defect(const Mat4& a);
double frobenius_norm(const Mat4& a);
bool all_finite(const Mat4& a);

// In-place r += s*a. Hot path of the integrator.
void axpy(cplx s, const Mat4& a, Mat4& r);

}  // namespace qsdc
